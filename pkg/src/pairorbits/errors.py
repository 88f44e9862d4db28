from __future__ import annotations


class PairOrbitsError(Exception):
    pass


class ParseError(PairOrbitsError, ValueError):
    pass


class ContextMismatch(PairOrbitsError, ValueError):
    """Two ideals (or an ideal and a partition) live over different partitions."""


class BudgetExceeded(PairOrbitsError):
    pass


class InexactDivision(PairOrbitsError, ArithmeticError):
    pass


class InterpolationError(PairOrbitsError):
    pass


class NotPrincipalError(PairOrbitsError):
    pass


class OracleInconsistency(PairOrbitsError):
    """The two orbit-counting routes (or an orbit partition) disagree."""


class CacheConflict(PairOrbitsError):
    pass
