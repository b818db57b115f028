"""Gaussian envelopes, weighted states and exact traces."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .coeff import Scalar, sqrt
from .models import CL, HPZ, KL, MKL, CoordFrame, Model
from .poly2 import Poly2

_SQRT_PI = math.sqrt(math.pi)


class EnvelopeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GaussianEnvelope:
    """``norm/sqrt(pi) * exp(-alpha Q^2 - beta r^2 - delta i Q r)``.

    The ``1/sqrt(pi)`` is implicit so that ``norm`` and all traces stay exact.
    In ``(Q, s)`` variables the exponent is ``-alpha Q^2 + beta s^2 - delta Q s``.
    """

    norm: Scalar
    alpha: Scalar
    beta: Scalar
    delta: Scalar
    frame: CoordFrame

    def __post_init__(self):
        if not complex(self.alpha).real > 0 or not complex(self.beta).real > 0:
            raise ValueError("envelope must decay: alpha and beta need positive real part")

    def log_derivative_q(self) -> Poly2:
        """``(dG/dQ)/G`` as a polynomial in (Q, s)."""
        return Poly2({(1, 0): -2 * self.alpha, (0, 1): -self.delta})

    def log_derivative_s(self) -> Poly2:
        return Poly2({(0, 1): 2 * self.beta, (1, 0): -self.delta})

    def value(self, q: complex, r: complex) -> complex:
        expo = -complex(self.alpha) * q * q - complex(self.beta) * r * r - 1j * complex(self.delta) * q * r
        return complex(self.norm) / _SQRT_PI * cmath.exp(expo)


@dataclass(frozen=True)
class WeightedState:
    """Density function ``poly(Q, s) * env``."""

    poly: Poly2
    env: GaussianEnvelope

    def _check(self, other: "WeightedState"):
        if not isinstance(other, WeightedState):
            raise TypeError("can only combine WeightedState values")
        if other.env != self.env:
            raise EnvelopeMismatch(f"envelopes differ: {self.env} vs {other.env}")

    def __add__(self, other):
        self._check(other)
        return WeightedState(self.poly + other.poly, self.env)

    def __sub__(self, other):
        self._check(other)
        return WeightedState(self.poly - other.poly, self.env)

    def __neg__(self):
        return WeightedState(-self.poly, self.env)

    def __mul__(self, c):
        if isinstance(c, (WeightedState, Poly2)):
            return NotImplemented
        return WeightedState(self.poly * c, self.env)

    __rmul__ = __mul__

    def with_poly(self, poly: Poly2) -> "WeightedState":
        return WeightedState(poly, self.env)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    @property
    def frame(self) -> CoordFrame:
        return self.env.frame

    def value(self, q: complex, r: complex) -> complex:
        return self.poly.eval_complex(q, r) * self.env.value(q, r)

    def numeric(self) -> "WeightedState":
        return WeightedState(self.poly.numeric(), self.env)


def _envelope(model: Model) -> GaussianEnvelope:
    if isinstance(model, KL):
        b = model.b
        return GaussianEnvelope(1 / sqrt(2 * b), 1 / (2 * b), b / 2, 0, model.frame)
    if isinstance(model, (CL, HPZ)):
        return GaussianEnvelope(Fraction(1), Fraction(1), Fraction(1), 0, model.frame)
    if isinstance(model, MKL):
        w0, g, h1 = model.omega0, model.gamma, model.h1
        den = w0 * (w0 - h1 / 2) + g ** 2 / 4
        w1sq = w0 ** 2 - h1 ** 2 / 4
        alpha = (w1sq + g ** 2 / 4) / den
        return GaussianEnvelope(sqrt(alpha), alpha, (w0 ** 2 + g ** 2 / 4) / den,
                                g * h1 / (2 * den), model.frame)
    raise TypeError(f"no closed-form stationary state for {type(model).__name__}")


def stationary_state(model: Model) -> WeightedState:
    """Trace-one stationary density function of ``model`` (polynomial part 1)."""
    return WeightedState(Poly2.const(1), _envelope(model))


def mkl_ep_stationary_state(omega_t: Scalar) -> WeightedState:
    """Closed EP form ``exp(-Q^2 - 2 w i Q r - (1 + w^2) r^2)/sqrt(pi)`` of the mKL stationary state."""
    from .models import MKL_FRAME
    env = GaussianEnvelope(Fraction(1), Fraction(1), 1 + omega_t ** 2, 2 * omega_t, MKL_FRAME)
    return WeightedState(Poly2.const(1), env)


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def gaussian_moment(k: int, alpha: Scalar) -> Scalar:
    """``int x^k exp(-alpha x^2) dx / sqrt(pi)``."""
    if k % 2:
        return Fraction(0)
    j = k // 2
    if isinstance(alpha, (float, complex)):
        return _double_factorial(k - 1) / 2 ** j * alpha ** (-j) / cmath.sqrt(alpha)
    return Fraction(_double_factorial(k - 1), 2 ** j) / (alpha ** j * sqrt(alpha))


def trace_integral(state: WeightedState) -> Scalar:
    """``int rho(x, r=0) dx`` from closed-form Gaussian moments."""
    total: Scalar = Fraction(0)
    for (a, b), c in state.poly.terms.items():
        if b == 0 and a % 2 == 0:
            total = total + c * gaussian_moment(a, state.env.alpha)
    return total * state.env.norm


def grid_slice(state: WeightedState, axis: str, points: Sequence[float]) -> List[Tuple[float, complex]]:
    """Samples of ``rho(x, 0)`` (``diagonal``) or ``rho(0, x)`` (``offDiagonal``)."""
    if axis == "diagonal":
        return [(p, state.value(p, 0.0)) for p in points]
    if axis in ("offDiagonal", "off_diagonal", "coherence"):
        return [(p, state.value(0.0, p)) for p in points]
    raise ValueError(f"unknown axis {axis!r}")


def weighted_inner(a: WeightedState, b: WeightedState) -> complex:
    """``int int conj(a) b dQ dr`` for two states on one envelope.

    The ``i Q r`` phase of the envelope cancels in ``conj(G) G``.
    """
    a._check(b)
    env = a.env
    ta = [(p, q, complex(c) * (1j) ** q) for (p, q), c in a.poly.terms.items()]  # to (Q, r) powers
    tb = [(p, q, complex(c) * (1j) ** q) for (p, q), c in b.poly.terms.items()]
    ka = 2 * complex(env.alpha).real
    kb = 2 * complex(env.beta).real
    total = 0j
    for a1, b1, c1 in ta:
        for a2, b2, c2 in tb:
            total += c1.conjugate() * c2 * _moment_f(a1 + a2, ka) * _moment_f(b1 + b2, kb)
    return total * abs(complex(env.norm)) ** 2 / math.pi


def weighted_norm(state: WeightedState) -> float:
    """L2 norm ``(int int |rho(Q, r)|^2 dQ dr)^(1/2)``."""
    return math.sqrt(max(weighted_inner(state, state).real, 0.0))


def _moment_f(k: int, a: float) -> float:
    if k % 2:
        return 0.0
    j = k // 2
    return _double_factorial(k - 1) / 2 ** j * a ** (-j) * math.sqrt(math.pi / a)
