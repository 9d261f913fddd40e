"""Exception types raised by casimir_kerr."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of a function."""


class UnsupportedModeError(ValueError):
    """Requested cavity mode index other than the principal mode."""


class TruncationError(RuntimeError):
    """Fock-space truncation lost more probability than the allowed budget."""


class InfeasibleTargetError(ValueError):
    """No coherent amplitude reaches the requested mean photon number."""
