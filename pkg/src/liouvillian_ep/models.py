"""Parameter sets of the oscillator master equations and their coordinate frames.

Every model carries exact (``Fraction``) parameters when built from ints,
fractions or decimal strings, and plain floats otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple, Union

from .coeff import Scalar, sqrt

Number = Union[int, float, Fraction, str]


def _num(x: Number) -> Scalar:
    if isinstance(x, (int, str)):
        return Fraction(x)
    return x


@dataclass(frozen=True)
class CoordFrame:
    """Coordinate frame tag.

    ``KL`` is the raw centre/relative frame ``(Q, r)``; ``CL`` and ``mKL`` are
    the rescaled frames in which the thermal parameter is absorbed; ``HPZ``
    uses ``(Q+, r-)`` scaled by ``b+`` and ``b-``.
    """

    tag: str
    params: Tuple[Scalar, ...] = ()

    def __post_init__(self):
        if self.tag not in ("KL", "CL", "mKL", "HPZ"):
            raise ValueError(f"unknown frame {self.tag!r}")
        for p in self.params:
            if not complex(p).real > 0:
                raise ValueError(f"frame scale must be positive, got {p}")

    def __str__(self):
        if not self.params:
            return self.tag
        return f"{self.tag}({', '.join(str(p) for p in self.params)})"


KL_FRAME = CoordFrame("KL")
CL_FRAME = CoordFrame("CL")
MKL_FRAME = CoordFrame("mKL")


def hpz_frame(b_plus: Scalar, b_minus: Scalar) -> CoordFrame:
    return CoordFrame("HPZ", (b_plus, b_minus))


@dataclass(frozen=True)
class LiouvilleParams:
    """Couplings of the generic quadratic Liouvillian.

    K = 2 omega0 iL0 + h1 iM1 + h2 iM2 + gamma (O0 - I/2) + g0 O+ + g1 L1+ + g2 L2+
    """

    omega0: Scalar
    h1: Scalar = 0
    h2: Scalar = 0
    gamma: Scalar = 0
    g0: Scalar = 0
    g1: Scalar = 0
    g2: Scalar = 0
    b: Scalar = Fraction(1, 2)

    def __post_init__(self):
        for name in ("omega0", "h1", "h2", "gamma", "g0", "g1", "g2", "b"):
            object.__setattr__(self, name, _num(getattr(self, name)))
        if self.gamma < 0:
            raise ValueError("gamma must be non-negative")

    @property
    def omega_squared(self) -> Scalar:
        return self.omega0 ** 2 - self.h1 ** 2 / 4 - self.h2 ** 2 / 4

    @property
    def omega(self) -> Scalar:
        """Modified frequency; imaginary past the exceptional circle."""
        return sqrt(self.omega_squared)

    def is_valid(self) -> bool:
        """Similarity to the KL form needs omega^2 + gamma^2/4 != 0."""
        return self.omega_squared + self.gamma ** 2 / 4 != 0

    def on_ep_circle(self) -> bool:
        return self.h1 ** 2 + self.h2 ** 2 == 4 * self.omega0 ** 2


@dataclass(frozen=True)
class KL:
    """Kossakowski-Lindblad oscillator, raw ``(Q, r)`` coordinates."""

    omega: Scalar
    gamma: Scalar
    b: Scalar = Fraction(1, 2)
    frame: CoordFrame = field(default=KL_FRAME, init=False)

    def __post_init__(self):
        for name in ("omega", "gamma", "b"):
            object.__setattr__(self, name, _num(getattr(self, name)))
        if not self.b > 0:
            raise ValueError("b must be positive")
        if self.gamma < 0:
            raise ValueError("gamma must be non-negative")


@dataclass(frozen=True)
class CL:
    """Caldeira-Leggett equation in the rescaled frame (thermal b absorbed)."""

    omega0: Scalar
    gamma: Scalar
    frame: CoordFrame = field(default=CL_FRAME, init=False)

    def __post_init__(self):
        for name in ("omega0", "gamma"):
            object.__setattr__(self, name, _num(getattr(self, name)))
        if not self.gamma > 0 or not self.omega0 > 0:
            raise ValueError("CL needs positive omega0 and gamma")

    @classmethod
    def from_delta(cls, delta2: Number, omega0: Number = 1) -> "CL":
        omega0 = _num(omega0)
        return cls(omega0, 2 * omega0 * (1 - _num(delta2)))

    @classmethod
    def at_ep(cls, omega0: Number = 1) -> "CL":
        omega0 = _num(omega0)
        return cls(omega0, 2 * omega0)

    @property
    def delta2(self) -> Scalar:
        return 1 - self.gamma / (2 * self.omega0)

    @property
    def omega2(self) -> Scalar:
        return sqrt(self.omega0 ** 2 - self.gamma ** 2 / 4)

    @property
    def modified_frequency(self) -> Scalar:
        return self.omega2

    @property
    def is_ep(self) -> bool:
        return self.gamma == 2 * self.omega0


@dataclass(frozen=True)
class MKL:
    """KL equation with an added ``h1 iM1`` coupling (effective-mass route)."""

    omega0: Scalar
    gamma: Scalar
    h1: Scalar
    frame: CoordFrame = field(default=MKL_FRAME, init=False)

    def __post_init__(self):
        for name in ("omega0", "gamma", "h1"):
            object.__setattr__(self, name, _num(getattr(self, name)))
        if not self.gamma > 0 or not self.omega0 > 0:
            raise ValueError("mKL needs positive omega0 and gamma")
        if self.omega0 * (self.omega0 - self.h1 / 2) + self.gamma ** 2 / 4 == 0:
            raise ValueError("degenerate mKL stationary state")

    @classmethod
    def from_delta(cls, delta1: Number, omega_t: Number = 1, gamma: Number = 2) -> "MKL":
        gamma = _num(gamma)
        omega0 = _num(omega_t) * gamma / 2
        return cls(omega0, gamma, 2 * omega0 * (1 - _num(delta1)))

    @classmethod
    def at_ep(cls, omega_t: Number = 1, gamma: Number = 2) -> "MKL":
        return cls.from_delta(0, omega_t, gamma)

    @property
    def delta1(self) -> Scalar:
        return 1 - self.h1 / (2 * self.omega0)

    @property
    def omega1(self) -> Scalar:
        return sqrt(self.omega0 ** 2 - self.h1 ** 2 / 4)

    @property
    def modified_frequency(self) -> Scalar:
        return self.omega1

    @property
    def omega_t(self) -> Scalar:
        return 2 * self.omega0 / self.gamma

    @property
    def effective_mass_ratio(self) -> Scalar:
        """m_eff / m."""
        return 1 / (1 - self.h1 / (2 * self.omega0))

    @property
    def is_ep(self) -> bool:
        return self.h1 == 2 * self.omega0


@dataclass(frozen=True)
class HPZ:
    """Markovian HPZ equation in ``(Q+, r-)`` coordinates."""

    omega0: Scalar
    gamma: Scalar
    b_plus: Scalar
    b_minus: Scalar

    def __post_init__(self):
        for name in ("omega0", "gamma", "b_plus", "b_minus"):
            object.__setattr__(self, name, _num(getattr(self, name)))
        if not (self.b_plus > 0 and self.b_minus > 0):
            raise ValueError("HPZ needs positive b+ and b-")
        if not self.gamma > 0 or not self.omega0 > 0:
            raise ValueError("HPZ needs positive omega0 and gamma")

    @classmethod
    def at_ep(cls, b_plus: Number, b_minus: Number, omega0: Number = 1) -> "HPZ":
        omega0 = _num(omega0)
        return cls(omega0, 2 * omega0, b_plus, b_minus)

    @property
    def frame(self) -> CoordFrame:
        return hpz_frame(self.b_plus, self.b_minus)

    @property
    def delta2(self) -> Scalar:
        return 1 - self.gamma / (2 * self.omega0)

    @property
    def omega2(self) -> Scalar:
        return sqrt(self.omega0 ** 2 - self.gamma ** 2 / 4)

    @property
    def modified_frequency(self) -> Scalar:
        return self.omega2

    @property
    def is_ep(self) -> bool:
        return self.gamma == 2 * self.omega0

    def as_cl(self) -> CL:
        return CL(self.omega0, self.gamma)


@dataclass(frozen=True)
class Generic:
    """Generic quadratic Liouvillian in raw coordinates."""

    params: LiouvilleParams
    frame: CoordFrame = field(default=KL_FRAME, init=False)


Model = Union[KL, CL, MKL, HPZ, Generic]


def ep_rate(model: Model, n: int) -> Scalar:
    """lambda_N = N gamma / 2."""
    return n * model.gamma / 2
