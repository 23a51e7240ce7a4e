"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the command line can
map it to an exit status and tests can match on it.
"""

from __future__ import annotations


class WSNUError(Exception):
    code = "wsnu-error"


class ConfigError(WSNUError, ValueError):
    code = "config-error"


class DomainError(WSNUError, ValueError):
    """A mathematically valid request that falls outside the model's domain."""

    code = "domain-error"


class KUnsolvableError(DomainError):
    code = "k-unsolvable"


class NoAdmissibleBranchError(DomainError):
    code = "no-admissible-branch"

    def __init__(self, message, slopes=()):
        super().__init__(message)
        self.slopes = tuple(slopes)


class UnsupportedSigmaError(DomainError):
    code = "unsupported-sigma"


class RodriguesDepthError(DomainError):
    code = "rodrigues-depth"


class PotentialPoleError(DomainError):
    code = "potential-pole"


class SingularGridError(DomainError):
    code = "singular-grid"


class NoConsistentEigenfunctionError(DomainError):
    code = "no-consistent-eigenfunction"


class NonNormalizableError(DomainError):
    code = "non-normalizable"

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class BracketMissError(DomainError):
    code = "bracket-miss"


class EmptyComparisonError(DomainError):
    code = "empty-comparison"
