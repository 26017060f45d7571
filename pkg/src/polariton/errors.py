"""Exception hierarchy shared by all modules.

The command-line front end maps these onto distinct exit codes, so library
code should pick the class by failure category rather than raising bare
``ValueError`` for anything a user can trigger through a config file.
"""


class PolaritonError(Exception):
    """Base class for all package-specific failures."""


class ConfigError(PolaritonError):
    """Malformed or inconsistent scenario configuration."""


class PhysicsGuardError(PolaritonError):
    """A requested computation violates a modelling assumption.

    The message names the violated assumption (e.g. drive amplitudes must
    stay far below the qubit-cavity coupling for the two-step rotating-wave
    reduction to hold).
    """


class NumericalError(PolaritonError):
    """Integration or linear-algebra failure (step size, positivity, ...)."""


class NonHermitianError(NumericalError):
    """An operator expected to be Hermitian is not; carries the defect norm."""

    def __init__(self, name: str, defect: float, tolerance: float):
        self.name = name
        self.defect = defect
        self.tolerance = tolerance
        super().__init__(
            f"{name} is not Hermitian: max|M - M^dag| = {defect:.3e} "
            f"exceeds tolerance {tolerance:.3e}"
        )
