"""Exception types shared across the library."""


class ProjlabError(Exception):
    """Base class for library errors."""


class DimensionMismatch(ProjlabError):
    """Vector or descriptor dimensions are inconsistent."""


class DomainError(ProjlabError):
    """A parameter lies outside the admissible range of a formula."""


class UnsupportedSet(ProjlabError):
    """The requested oracle has no closed form for this set variant."""


class SamplingFailure(ProjlabError):
    """Rejection sampling could not produce enough valid points."""


class InsufficientData(ProjlabError):
    """Not enough trajectory entries to run the requested fit or check."""


class MoreThanOneReflection(DomainError):
    """More than one relaxation parameter equals 2 in a cyclic scheme."""


class MoreThanOneFullIntrepid(DomainError):
    """More than one semi-intrepid parameter equals 1 in a cyclic scheme."""


class StrongRegularityFailed(DomainError):
    """A coercivity constant was requested for a degenerate normal geometry."""


class CertificateViolated(ProjlabError):
    """An observed rate exceeded a certificate that claimed to bound it."""


class ContainmentViolated(ProjlabError):
    """A set escapes the affine subspace it was claimed to live in."""


class ShadowRecursionViolated(ProjlabError):
    """A projected trajectory does not follow the same recursion."""


class ConfigError(ProjlabError):
    """A scenario configuration failed to parse or validate."""
