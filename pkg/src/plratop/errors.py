"""Exception hierarchy shared by all modules."""


class PLRError(ValueError):
    """Base class for invalid partial Latin rectangle input."""


class BadShape(PLRError):
    pass


class RowClash(PLRError):
    pass


class ColClash(PLRError):
    pass


class SymbolOutOfRange(PLRError):
    pass


class DegreeMismatch(PLRError):
    pass


class CapExceeded(RuntimeError):
    """More group elements than the configured cap."""


class TooLargeForOracle(RuntimeError):
    pass


class SearchTimeout(RuntimeError):
    pass


class InconsistentAutomorphism(RuntimeError):
    """A graph automorphism that does not decode to an autotopism."""


class BadParameters(ValueError):
    pass
