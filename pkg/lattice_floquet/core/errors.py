"""Error types for lattice-floquet."""

from typing import Optional, Sequence, Tuple


class LatticeFloquetError(Exception):
    """Base exception for lattice-floquet errors."""
    pass


class PeriodsError(LatticeFloquetError):
    """Raised when periods or fundamental sites are invalid."""

    def __init__(self, message: str, field: Optional[str] = None):
        """
        Initialize periods error.

        Args:
            message: Error message
            field: Name of the offending field (p1, p2, l1, l2, sublattice)
        """
        super().__init__(message)
        self.field = field


class PotentialError(LatticeFloquetError):
    """Raised when a potential does not fit its lattice or cannot be read."""

    def __init__(self, message: str, field: Optional[str] = None):
        """
        Initialize potential error.

        Args:
            message: Error message
            field: Name of the offending field (lattice, periods, values, name)
        """
        super().__init__(message)
        self.field = field


class HermiticityError(LatticeFloquetError):
    """Raised when a matrix handed to the eigensolver is not self-adjoint."""

    def __init__(self, message: str, deviation: float):
        """
        Initialize Hermiticity error.

        Args:
            message: Error message
            deviation: Largest entry of |M - M^H|
        """
        super().__init__(message)
        self.deviation = deviation


class EigenSolverError(LatticeFloquetError):
    """Raised when LAPACK fails to converge."""

    def __init__(
        self,
        message: str,
        size: int,
        theta: Optional[Tuple[float, float]] = None,
    ):
        """
        Initialize eigensolver error.

        Args:
            message: Error message
            size: Matrix dimension P
            theta: Floquet point the matrix was built at, when known
        """
        super().__init__(message)
        self.size = size
        self.theta = theta


class OutsideHullError(LatticeFloquetError):
    """Raised by gap queries for energies outside the spectrum's hull."""

    def __init__(self, energy: float, hull: Tuple[float, float]):
        """
        Initialize outside-hull result.

        Args:
            energy: The queried energy
            hull: (min, max) of the spectrum
        """
        super().__init__(
            f"Energy {energy:g} lies outside the spectrum hull [{hull[0]:g}, {hull[1]:g}]"
        )
        self.energy = energy
        self.hull = hull


class FitError(LatticeFloquetError):
    """Raised when a polynomial coefficient fit is ill-conditioned."""

    def __init__(self, message: str, condition: float):
        """
        Initialize fit error.

        Args:
            message: Error message
            condition: Condition number of the Vandermonde system
        """
        super().__init__(message)
        self.condition = condition


class SolutionFamilyError(LatticeFloquetError):
    """Raised when a trigonometric system has a continuum where points were expected."""

    def __init__(self, system: str, energy: float, point: Tuple[float, float]):
        """
        Initialize solution family error.

        Args:
            system: Identifier of the trigonometric system
            energy: Energy parameter E
            point: A solution at which the Jacobian is rank deficient
        """
        super().__init__(
            f"System {system} at E={energy:g} has a non-isolated solution near "
            f"({point[0]:.6f}, {point[1]:.6f})"
        )
        self.system = system
        self.energy = energy
        self.point = point


class ParameterRangeError(LatticeFloquetError):
    """Raised when a parameter lies outside its validated range."""

    def __init__(self, name: str, value: float, valid: str):
        """
        Initialize parameter range error.

        Args:
            name: Parameter name
            value: Rejected value
            valid: Human-readable description of the valid range
        """
        super().__init__(f"{name}={value!r} is out of range; expected {valid}")
        self.name = name
        self.value = value
        self.valid = valid


def unknown_name_error(kind: str, name: str, valid: Sequence[str]) -> PotentialError:
    """
    Build the error for an unknown builtin or lattice name.

    Args:
        kind: What was being looked up ("builtin", "lattice")
        name: The name that failed
        valid: Accepted names

    Returns:
        PotentialError listing every valid name
    """
    return PotentialError(
        f"Unknown {kind} '{name}'. Valid names: {', '.join(valid)}",
        field="name",
    )


def describe_error(error: Exception) -> str:
    """
    Turn an exception into a one-line diagnostic for the command line.

    Args:
        error: Exception raised while running a command

    Returns:
        Diagnostic string
    """
    if isinstance(error, EigenSolverError):
        where = f" at theta={error.theta}" if error.theta is not None else ""
        return f"Eigensolver failed for a {error.size}x{error.size} matrix{where}: {error}"
    if isinstance(error, (PotentialError, PeriodsError)) and error.field:
        return f"{error} (field: {error.field})"
    if isinstance(error, FitError):
        return f"{error} (condition number {error.condition:.3g})"
    if isinstance(error, LatticeFloquetError):
        return str(error)
    return f"Unexpected error: {error}"
