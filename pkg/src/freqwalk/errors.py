"""Exception types shared across the package."""


class FreqwalkError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(FreqwalkError, ValueError):
    """A state or run was requested with inconsistent parameters."""


class BoundaryLeakError(FreqwalkError, RuntimeError):
    """Too much probability reached the lattice edge for the truncation
    to remain physical.  Carries the step index at which it happened."""

    def __init__(self, step: int, mass: float):
        self.step = step
        self.mass = mass
        super().__init__(
            f"boundary mass {mass:.3e} exceeds tolerance at step {step}"
        )


class InfeasibleGateError(FreqwalkError, ValueError):
    """The requested gate constraints cannot be met at the given
    modulation strength."""
