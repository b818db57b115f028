"""KL spectrum in closed form and the transformed eigenfunctions of CL, mKL and HPZ."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import List, Tuple

from .coeff import I, Scalar, sqrt
from .gaussian import WeightedState, stationary_state
from .models import CL, HPZ, KL, MKL, Model
from .poly2 import Poly2
from .superop import hat_operators, hpz_map


@dataclass(frozen=True, order=True)
class EigIndex:
    m: int
    n: int
    sign: int = 1

    def __post_init__(self):
        if not 0 <= self.n <= self.m:
            raise ValueError(f"need 0 <= n <= m, got m={self.m}, n={self.n}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.n == 0 and self.sign == -1:
            # n = 0 states carry no sign; normalise to +
            object.__setattr__(self, "sign", 1)

    @property
    def N(self) -> int:
        return 2 * self.m - self.n

    def label(self) -> str:
        s = "+" if self.sign > 0 else "-"
        return f"{s}{self.m}{self.n}" if self.n else f"{self.m}{self.n}"


def all_indices(m_max: int) -> List[EigIndex]:
    out = []
    for m in range(m_max + 1):
        for n in range(m + 1):
            out.append(EigIndex(m, n, 1))
            if n:
                out.append(EigIndex(m, n, -1))
    return out


def kl_eigenvalue(idx: EigIndex, omega: Scalar, gamma: Scalar) -> Scalar:
    """``±i n omega + (2m - n) gamma / 2``."""
    rate = Fraction(idx.N) * gamma / 2
    if idx.n == 0:
        return rate
    if isinstance(omega, (float, complex)):
        return idx.sign * idx.n * 1j * omega + rate
    return idx.sign * idx.n * I * omega + rate


def hermite_poly(n: int, arg: Poly2) -> Poly2:
    """Physicists' ``H_n`` evaluated on a polynomial argument."""
    prev, cur = Poly2.const(1), arg * 2
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, arg * cur * 2 - prev * (2 * k)
    return cur


def pi_scaled(idx: EigIndex) -> Poly2:
    """KL polynomial in ``X = Q/sqrt(2b)`` (Q slot) and ``Σ = i sqrt(b/2) r`` (s slot).

    Independent of ``b``; the Hermite argument ``sqrt(b/2) r`` is ``-i Σ``.
    """
    m, n, sg = idx.m, idx.n, idx.sign
    y = Poly2({(0, 1): -I})
    norm = sqrt(Fraction(factorial(m - n), factorial(m))) / I ** n
    total = Poly2()
    for mu in range(m - n + 1):
        for nu in range(mu + 1):
            for sigma in range(n + 1):
                c = Fraction(sg ** (n + sigma) * (-1) ** (mu + nu) * comb(m, n + mu) * comb(mu, nu)
                             * comb(n, sigma), 2 ** (2 * nu + sigma) * factorial(mu))
                x_pow = 2 * (mu - nu) + n - sigma
                total = total + hermite_poly(2 * nu + sigma, y).shift(x_pow, 0) * c
    return total * norm


def kl_pi(idx: EigIndex, b: Scalar) -> Poly2:
    """Polynomial part of the KL eigenfunction in raw ``(Q, s)``."""
    return pi_scaled(idx).substitute_scale(1 / sqrt(2 * b), sqrt(b / 2))


def kl_eigenfunction(idx: EigIndex, b: Scalar) -> WeightedState:
    return WeightedState(kl_pi(idx, b), stationary_state(KL(1, 1, b)).env)


def model_eigenvalue(model: Model, idx: EigIndex) -> Scalar:
    if isinstance(model, KL):
        return kl_eigenvalue(idx, model.omega, model.gamma)
    return kl_eigenvalue(idx, model.modified_frequency, model.gamma)


def transformed_eigenfunction(model: Model, idx: EigIndex) -> WeightedState:
    """Eigenfunction of a CL, mKL or HPZ Liouvillian away from its exceptional point."""
    if isinstance(model, KL):
        return kl_eigenfunction(idx, model.b)
    if isinstance(model, (CL, MKL)):
        return hat_operators(model).apply_poly(pi_scaled(idx))
    if isinstance(model, HPZ):
        cl_state = hat_operators(model.as_cl()).apply_poly(pi_scaled(idx))
        return hpz_map(model.b_plus, model.b_minus).apply_poly(cl_state.poly)
    raise TypeError(f"unsupported model {type(model).__name__}")


def degenerate_families(m_max: int) -> dict:
    """Group indices by ``N = 2m - n``."""
    groups: dict = {}
    for idx in all_indices(m_max):
        groups.setdefault(idx.N, []).append(idx)
    return groups


def spectrum_rows(omega: Scalar, gamma: Scalar, m_max: int) -> List[Tuple[EigIndex, complex]]:
    return [(idx, complex(kl_eigenvalue(idx, omega, gamma))) for idx in all_indices(m_max)]


def parallel_residual(a: WeightedState, b: WeightedState) -> float:
    """``min_c |a - c b| / |a|`` in the weighted L2 norm (sine of the angle between them)."""
    from .gaussian import weighted_inner
    aa = weighted_inner(a, a).real
    bb = weighted_inner(b, b).real
    ab = weighted_inner(b, a)
    if aa == 0 or bb == 0:
        raise ValueError("zero state has no direction")
    cos2 = min(abs(ab) ** 2 / (aa * bb), 1.0)
    return (1.0 - cos2) ** 0.5


def coalescence_residual(model: Model) -> float:
    """How far the two ``N = 1`` eigenfunctions are from being parallel."""
    plus = transformed_eigenfunction(model, EigIndex(1, 1, 1)).numeric()
    minus = transformed_eigenfunction(model, EigIndex(1, 1, -1)).numeric()
    return parallel_residual(plus, minus)
