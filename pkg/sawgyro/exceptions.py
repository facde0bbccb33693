from __future__ import annotations

from dataclasses import dataclass, field


class GyroError(Exception):
    """Invalid physical input or a computation outside its domain."""


@dataclass
class ParameterErrors(GyroError):
    errors: list[GyroError] = field(default_factory=list)

    def __str__(self) -> str:
        return "; ".join(str(error) for error in self.errors)


@dataclass
class NonPositiveRate(GyroError):
    name: str
    value: float

    def __str__(self) -> str:
        return f"'{self.name}' must be strictly positive, got {self.value}"


@dataclass
class NegativeSqueeze(GyroError):
    r: float

    def __str__(self) -> str:
        return f"squeeze parameter must be non-negative, got {self.r}"


@dataclass
class SqueezeOutOfRange(GyroError):
    r: float
    r_max: float

    def __str__(self) -> str:
        return f"squeeze parameter {self.r} exceeds the configured maximum {self.r_max}"


@dataclass
class NegativeOccupancy(GyroError):
    n_th: float

    def __str__(self) -> str:
        return f"thermal occupancy must be non-negative, got {self.n_th}"


@dataclass
class NegativeRotation(GyroError):
    omega_rot_sq: float

    def __str__(self) -> str:
        return f"squared angular velocity must be non-negative, got {self.omega_rot_sq}"


@dataclass
class ThermalOccupancyUnsupported(GyroError):
    n_th: float

    def __str__(self) -> str:
        return (
            f"closed-form spectra are only defined at zero thermal occupancy, "
            f"got n_th={self.n_th}"
        )


@dataclass
class SignalOutOfRange(GyroError):
    signal: float
    omega_rot_sq: float

    def __str__(self) -> str:
        return (
            f"signal {self.signal} inverts to a negative squared angular "
            f"velocity ({self.omega_rot_sq})"
        )


@dataclass
class EmptyRange(GyroError):
    co: float
    co_min: float

    def __str__(self) -> str:
        return f"cooperativity {self.co} is below the readable minimum {self.co_min}"


@dataclass
class ZeroDerivative(GyroError):
    omega: float

    def __str__(self) -> str:
        return f"signal does not depend on the squared angular velocity at {self.omega}"


@dataclass
class SingularSystem(GyroError):
    omega: float
    condition: float

    def __str__(self) -> str:
        return (
            f"Langevin system is singular at omega={self.omega} "
            f"(condition number {self.condition:.3g})"
        )


@dataclass
class UnstableSystem(GyroError):
    max_real_eigenvalue: float

    def __str__(self) -> str:
        return (
            f"drift matrix has an eigenvalue with real part "
            f"{self.max_real_eigenvalue:.3g} >= 0"
        )


@dataclass
class StepTooLarge(GyroError):
    dt: float
    limit: float

    def __str__(self) -> str:
        return f"step {self.dt} is too large for RK4, must be below {self.limit}"


@dataclass
class SweepError(GyroError):
    message: str

    def __str__(self) -> str:
        return self.message
