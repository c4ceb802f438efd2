"""Exception hierarchy shared by all hpfrac modules.

Every error carries an ``exit_code`` so the CLI can map failures onto the
documented process exit statuses (2 config, 3 domain, 4 non-convergence,
5 I/O).
"""


class HpfracError(Exception):
    """Base class for all hpfrac errors."""

    exit_code = 1


class ConfigError(HpfracError):
    """Malformed scenario / configuration input."""

    exit_code = 2


class DomainError(HpfracError):
    """Arguments outside the mathematical domain of an operation."""

    exit_code = 3


class PoleError(DomainError):
    """Gamma function evaluated at a non-positive integer."""


class BranchError(DomainError):
    """Complex power evaluated outside its principal-branch domain."""


class ContourError(DomainError):
    """Laplace inversion contour hits a branch cut or singularity."""


class TailError(DomainError):
    """Truncated-integral tail estimate exceeds the requested tolerance."""


class TableError(DomainError):
    """Tabulated CDF could not be certified on its grid."""


class NonConvergence(HpfracError):
    """A truncated series failed to certify the requested accuracy."""

    exit_code = 4
