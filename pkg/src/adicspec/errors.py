"""Exception hierarchy shared by all modules.

Every error carries a stable ``code`` string which the CLI maps to exit
status 1 and prints verbatim, so scripts can match on it.
"""


class AdicError(Exception):
    code = "adic-error"


class MismatchedGroups(AdicError):
    code = "mismatched-groups"


class WrongRing(AdicError):
    code = "wrong-ring"


class NotConvexSubgroupOfValueGroup(AdicError):
    code = "not-convex-subgroup-of-value-group"


class UnsupportedKind(AdicError):
    code = "unsupported-kind"


class CharacteristicGroupNotContained(AdicError):
    code = "characteristic-group-not-contained"


class NotContinuous(AdicError):
    code = "not-continuous"


class ContextMismatch(AdicError):
    code = "context-mismatch"


class ZeroSeries(AdicError):
    code = "zero-series"


class AllZero(AdicError):
    code = "all-zero"


class NotTypeFive(AdicError):
    code = "not-type-five"


class MalformedSubset(AdicError):
    code = "malformed-subset"


class NotUnitIdeal(AdicError):
    code = "not-unit-ideal"


class UnknownPoint(AdicError):
    code = "unknown-point"


class NotKolmogorov(AdicError):
    code = "not-kolmogorov"


class UnsupportedRing(AdicError):
    code = "unsupported-ring"


class NotASpecialization(AdicError):
    code = "not-a-specialization"


class NonFunctorialPresheaf(AdicError):
    code = "non-functorial-presheaf"


class NotAComplex(AdicError):
    code = "not-a-complex"


class TruncationTooSmall(AdicError):
    code = "truncation-too-small"


class ParseError(AdicError):
    code = "parse-error"
