"""Fuzzy geographic information retrieval.

Extracts vague and absolute spatial expressions from text, models them as
possibility distributions, indexes them per granularity level and answers
spatial event queries with fuzzy-graded relevance.
"""
__version__ = "0.1.0"
