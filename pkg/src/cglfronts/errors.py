"""Exception types shared across the package."""


class CGLError(Exception):
    """Base class for all package-specific errors."""


class NonConvergence(CGLError):
    """An iterative solve failed to reach its residual target."""


class NoCrossing(CGLError):
    """The absolute spectrum does not cross the imaginary axis."""


class InvalidWavenumber(CGLError):
    """Requested wavenumber lies outside the wave-train existence band."""


class NoAdmissibleRoot(CGLError):
    """No dispersion root satisfies the selection conditions."""


class AmbiguousRoot(CGLError):
    """More than one dispersion root satisfies the selection conditions."""


class BenjaminFeirRegime(CGLError):
    """1 + alpha*gamma <= 0; the scaled formulation is not available."""


class NonPositiveM(CGLError):
    """The scaling factor m^2 is not positive."""


class NoWaveTrain(CGLError):
    """No admissible wave-train equilibrium for these parameters."""


class WrongBranch(CGLError):
    """Unstable-manifold shooting never reached the target amplitude."""


class DegenerateFront(CGLError):
    """Shooting base point coincides with the branch point z = -1."""


class PoleOnPath(CGLError):
    """Closed-form Riccati solution blows up inside the requested interval."""


class BlowUp(CGLError):
    """Simulated field exceeded the blow-up guard."""


class NoInterface(CGLError):
    """The field never drops below the interface threshold."""


class AmplitudeTooSmall(CGLError):
    """Measurement window contains near-zeros of the field."""


class NewtonDiverged(CGLError):
    """Boundary-value Newton iteration failed to converge."""


class StepFailure(CGLError):
    """Continuation step failed after exhausting step-size reductions."""


class SpeedTooLarge(CGLError):
    """Trigger speed is at or above the linear spreading speed."""


class ExpansionUnavailable(CGLError):
    """The truncated wavenumber expansion requires alpha != gamma."""


class MissingInput(CGLError):
    """A pipeline stage is missing a required input file."""


class ConfigError(CGLError):
    """Invalid or inconsistent run configuration."""
