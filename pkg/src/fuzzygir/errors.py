"""Exception hierarchy shared by the library and the command line."""


class FuzzyGIRError(Exception):
    """Base class for every error raised by this package."""


class DataError(FuzzyGIRError):
    """Input data is malformed or inconsistent (CLI exit code 2)."""


class IdentifierError(DataError, ValueError):
    pass


class EncodingError(DataError, ValueError):
    pass


class SealedCorpusError(FuzzyGIRError, RuntimeError):
    pass


class GazetteerError(DataError):
    """Raised by the gazetteer loader; ``problems`` lists every bad row."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class UnknownPlaceError(DataError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class IntegrityError(DataError):
    pass


class NoRuleFiredError(FuzzyGIRError):
    """No rule of the rule base activated above zero."""


class NoLocationError(FuzzyGIRError):
    """A surface or evidence set yields no location (all-zero possibility)."""


class QueryError(FuzzyGIRError, ValueError):
    pass
