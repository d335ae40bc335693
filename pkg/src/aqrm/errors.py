"""Exception and warning types shared across the package."""


class AqrmError(Exception):
    """Base class for all package-specific errors."""


class DegenerateState(AqrmError):
    """Trial-state norm collapsed below the numerical floor (ansatz is the zero vector)."""


class DimensionOverflow(AqrmError):
    """Requested Fock truncation exceeds the configured matrix-dimension cap."""


class EigenFailure(AqrmError):
    """Symmetric eigensolver failed to converge."""


class NoConvergence(AqrmError):
    """Truncation-doubling loop hit the dimension cap before reaching tolerance."""


class TruncationTooSmall(AqrmError):
    """Fock truncation cannot hold the requested state within the tail-mass budget."""


class ConfigError(AqrmError):
    """Malformed run-configuration file."""


class NearDegeneracyWarning(UserWarning):
    """Ground state is (nearly) degenerate; observables are representative only."""
