"""Mamdani rule engine used to grade document relevance."""
from dataclasses import dataclass

import numpy as np

from ..errors import NoRuleFiredError
from .sets import set_from_config

UNIVERSE = np.linspace(0.0, 1.0, 1001)


@dataclass(frozen=True)
class Rule:
    antecedent: tuple  # ((variable, label), ...) joined by AND
    consequent: str

    def __str__(self):
        cond = " AND ".join(f"{var} IS {label}" for var, label in self.antecedent)
        return f"IF {cond} THEN relevance IS {self.consequent}"


class FuzzyRuleBase:
    """Input partitions over [0, 1], labelled output sets and conjunctive rules."""

    def __init__(self, inputs, output, rules):
        self.inputs = {var: dict(labels) for var, labels in inputs.items()}
        self.output = dict(output)
        self.rules = tuple(rules)
        for rule in self.rules:
            for var, label in rule.antecedent:
                if var not in self.inputs or label not in self.inputs[var]:
                    raise ValueError(f"rule references unknown input label {var}.{label}")
            if rule.consequent not in self.output:
                raise ValueError(f"rule references unknown output label {rule.consequent}")
        for var, labels in self.inputs.items():
            cover = np.max([s(UNIVERSE) for s in labels.values()], axis=0)
            if not (cover > 0).all():
                gap = UNIVERSE[np.argmin(cover > 0)]
                raise ValueError(f"partition of {var!r} leaves {gap:.3f} uncovered")

    @classmethod
    def from_config(cls, cfg):
        inputs = {
            var: {label: set_from_config(spec) for label, spec in labels.items()}
            for var, labels in cfg["inputs"].items()
        }
        output = {label: set_from_config(spec) for label, spec in cfg["output"].items()}
        rules = [Rule(tuple(r["if"].items()), r["then"]) for r in cfg["rules"]]
        return cls(inputs, output, rules)

    def activations(self, inputs):
        missing = [v for v in self.inputs if v not in inputs]
        if missing:
            raise ValueError(f"missing input variable(s): {', '.join(missing)}")
        fuzzified = {
            var: {label: float(s(inputs[var])) for label, s in labels.items()}
            for var, labels in self.inputs.items()
        }
        return [min(fuzzified[var][label] for var, label in r.antecedent) for r in self.rules]

    def infer(self, inputs):
        """Return ``(relevance, [(rule, activation), ...])``.

        Raises :class:`NoRuleFiredError` when every activation is zero.
        """
        acts = self.activations(inputs)
        trace = [(str(r), a) for r, a in zip(self.rules, acts)]
        aggregate = np.zeros_like(UNIVERSE)
        for rule, act in zip(self.rules, acts):
            if act > 0:
                aggregate = np.maximum(aggregate, np.minimum(act, self.output[rule.consequent](UNIVERSE)))
        mass = aggregate.sum()
        if mass <= 0:
            raise NoRuleFiredError("no rule fired")
        return float((UNIVERSE * aggregate).sum() / mass), trace


def mamdani_infer(rulebase, inputs):
    return rulebase.infer(inputs)[0]
