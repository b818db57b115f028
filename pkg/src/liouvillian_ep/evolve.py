"""Jordan-block propagation and the three-regime relaxation of the first excited state."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .coeff import Scalar, format_scalar
from .gaussian import GaussianEnvelope, WeightedState, grid_slice, stationary_state, trace_integral
from .jordan import ChainFamily, build_chain
from .models import CL
from .poly2 import Poly2
from .spectra import EigIndex, model_eigenvalue, transformed_eigenfunction


class SpanError(ValueError):
    """Target polynomial is not in the span of the basis; carries the residual."""

    def __init__(self, message: str, residual: Poly2):
        super().__init__(f"{message}; residual: {residual!r}")
        self.residual = residual


# -- propagator ------------------------------------------------------------

def jordan_propagator(N: int, lambda_n: Scalar, t: float) -> List[List[complex]]:
    """``exp(-K_N t)`` acting on coefficient vectors ordered ``(c_N, ..., c_0)``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    lam = complex(lambda_n)
    decay = cmath.exp(-lam * t)
    out = []
    for i in range(N + 1):
        row = []
        for j in range(N + 1):
            k = i - j
            row.append(decay * (-lam * t) ** k / math.factorial(k) if k >= 0 else 0j)
        out.append(row)
    return out


def jordan_propagator_symbolic(N: int, lambda_n: Scalar) -> List[List[Dict[int, Scalar]]]:
    """Same matrix with entries as ``{power of t: coefficient}``; the common ``exp(-lambda t)`` is implicit."""
    out = []
    for i in range(N + 1):
        row = []
        for j in range(N + 1):
            k = i - j
            row.append({k: (-lambda_n) ** k / math.factorial(k)} if k >= 0 else {})
        out.append(row)
    return out


@dataclass(frozen=True)
class ChainCoeffs:
    """``phi_N = sum_z c_z F_N^(z)``; ``c`` is stored in rank order ``c_0..c_N``."""

    N: int
    c: Tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.c) != self.N + 1:
            raise ValueError(f"need {self.N + 1} coefficients, got {len(self.c)}")

    def as_vector(self) -> List[Scalar]:
        """Top-rank-first ordering used by the propagator."""
        return list(reversed(self.c))


def propagate_coeffs(coeffs: ChainCoeffs, lambda_n: Scalar, t: float) -> List[complex]:
    """Evolved ``c_0(t)..c_N(t)``."""
    mat = jordan_propagator(coeffs.N, lambda_n, t)
    vec = [complex(x) for x in coeffs.as_vector()]
    out = [sum(mat[i][j] * vec[j] for j in range(len(vec))) for i in range(len(vec))]
    return list(reversed(out))


def propagate_coeffs_symbolic(coeffs: ChainCoeffs, lambda_n: Scalar) -> List[Dict[int, Scalar]]:
    """``c_z(t) exp(lambda t)`` as a polynomial in ``t`` for each rank ``z``.

    ``c_z(t) = e^{-lambda t} sum_k (-lambda t)^k / k! c_{z+k}``.
    """
    N = coeffs.N
    out = []
    for z in range(N + 1):
        poly: Dict[int, Scalar] = {}
        for k in range(N - z + 1):
            v = coeffs.c[z + k] * (-lambda_n) ** k / math.factorial(k)
            if v != 0:
                poly[k] = v
        out.append(poly)
    return out


# -- symbolic time-dependent states ----------------------------------------

@dataclass(frozen=True)
class TimeTerm:
    """``exp(-rate t) t^power poly``."""

    rate: Scalar
    power: int
    poly: Poly2


@dataclass(frozen=True)
class TimeExpansion:
    """Finite sum of :class:`TimeTerm` over one shared envelope."""

    terms: Tuple[TimeTerm, ...]
    env: GaussianEnvelope

    def at(self, t: float) -> WeightedState:
        total = Poly2()
        for term in self.terms:
            w = cmath.exp(-complex(term.rate) * t) * t ** term.power
            total = total + term.poly.numeric() * w
        return WeightedState(total, self.env)

    def at_zero(self) -> WeightedState:
        """Exact initial state."""
        total = Poly2()
        for term in self.terms:
            if term.power == 0:
                total = total + term.poly
        return WeightedState(total, self.env)

    def rates(self) -> List[Scalar]:
        seen: List[Scalar] = []
        for term in self.terms:
            if term.rate not in seen:
                seen.append(term.rate)
        return seen

    def trace_terms(self) -> List[Tuple[Scalar, int, Scalar]]:
        """Exact trace as ``[(rate, power, coefficient)]`` with zero coefficients dropped."""
        out = []
        for term in self.terms:
            tr = trace_integral(WeightedState(term.poly, self.env))
            if tr != 0:
                out.append((term.rate, term.power, tr))
        return out

    def trace_at(self, t: float) -> complex:
        return sum((complex(c) * cmath.exp(-complex(r) * t) * t ** p for r, p, c in self.trace_terms()), 0j)

    def is_hermitian(self) -> bool:
        """Real ``(Q, s)`` coefficients and real rates make every ``t`` slice adjoint-symmetric."""
        return all(term.poly.is_real() and complex(term.rate).imag == 0 for term in self.terms)

    def time_derivative(self) -> "TimeExpansion":
        out = []
        for term in self.terms:
            out.append(TimeTerm(term.rate, term.power, term.poly * (-term.rate)))
            if term.power:
                out.append(TimeTerm(term.rate, term.power - 1, term.poly * term.power))
        return TimeExpansion(tuple(out), self.env)


def evolve_chain_symbolic(family: ChainFamily, coeffs: ChainCoeffs) -> TimeExpansion:
    if coeffs.N != family.N:
        raise ValueError(f"coefficient N={coeffs.N} does not match family N={family.N}")
    lam = family.lambda_n
    terms = []
    for z, tpoly in enumerate(propagate_coeffs_symbolic(coeffs, lam)):
        for k, v in sorted(tpoly.items()):
            terms.append(TimeTerm(lam, k, family.polys[z] * v))
    return TimeExpansion(tuple(terms), family.env)


def evolve_chain(family: ChainFamily, coeffs: ChainCoeffs, t: float) -> WeightedState:
    """``sum_z c_z(t) F_N^(z)`` with the propagated coefficients."""
    if coeffs.N != family.N:
        raise ValueError(f"coefficient N={coeffs.N} does not match family N={family.N}")
    cs = propagate_coeffs(coeffs, family.lambda_n, t)
    total = Poly2()
    for z, c in enumerate(cs):
        total = total + family.polys[z].numeric() * c
    return WeightedState(total, family.env)


# -- decompositions --------------------------------------------------------

def solve_span(target: Poly2, basis: Sequence[Poly2]) -> List[Scalar]:
    """Exact coefficients ``x`` with ``sum x_i basis_i = target`` (Gaussian elimination)."""
    monos = sorted({m for p in list(basis) + [target] for m in p.terms})
    n = len(basis)
    rows = [[p.coeff(*m) for p in basis] + [target.coeff(*m)] for m in monos]
    pivots: List[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if len(pivots) < n:
        raise ValueError("basis polynomials are linearly dependent")
    x: List[Scalar] = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = rows[i][n]
    residual = target
    for xi, p in zip(x, basis):
        residual = residual - p * xi
    if not residual.is_zero():
        raise SpanError("target is outside the span", residual)
    return x


def decompose_into_chain(target: Poly2, family: ChainFamily) -> ChainCoeffs:
    return ChainCoeffs(family.N, tuple(solve_span(target, family.polys)))


def decompose_into_eigenbasis(target: Poly2, eigvecs: Sequence[Tuple[Poly2, Scalar]]) -> List[Scalar]:
    return solve_span(target, [p for p, _ in eigvecs])


# -- the three relaxation regimes ------------------------------------------

REGIMES = ("underdamped", "critical", "overdamped")
_GAMMA_RATIO = {"underdamped": 1, "critical": 2, "overdamped": 3}
# coefficient of the transformed f10 in the initial state (chosen for positivity)
INITIAL_WEIGHT = Fraction(-3, 2)


@dataclass(frozen=True)
class ScenarioState:
    regime: str
    time: float
    state: WeightedState


def pi10_underdamped(omega0: Scalar = 1) -> Poly2:
    """Polynomial part of the transformed ``f10`` at ``gamma = omega0``."""
    return transformed_eigenfunction(CL(omega0, omega0), EigIndex(1, 0)).poly


def overdamped_basis(omega0: Scalar = 1) -> List[Tuple[str, Poly2, Scalar]]:
    """``(label, Omega, eigenvalue)`` for ``Omega_10`` and ``Omega_22^(+/-)`` at ``gamma = 3 omega0``."""
    model = CL(omega0, 3 * omega0)
    out = []
    for idx in (EigIndex(1, 0), EigIndex(2, 2, 1), EigIndex(2, 2, -1)):
        out.append((idx.label(), transformed_eigenfunction(model, idx).poly, model_eigenvalue(model, idx)))
    return out


def scenario_expansion(regime: str, omega0: Scalar = 1) -> TimeExpansion:
    """Exact time expansion of the relaxing state in the CL frame."""
    if regime not in _GAMMA_RATIO:
        raise ValueError(f"unknown regime {regime!r}; expected one of {REGIMES}")
    omega0 = Fraction(omega0) if isinstance(omega0, int) else omega0
    env = stationary_state(CL(omega0, omega0)).env
    one = TimeTerm(Fraction(0), 0, Poly2.const(1))
    pi10 = pi10_underdamped(omega0)
    if regime == "underdamped":
        return TimeExpansion((one, TimeTerm(omega0, 0, pi10 * INITIAL_WEIGHT)), env)
    if regime == "critical":
        fam = build_chain(CL.at_ep(omega0), 2)
        coeffs = decompose_into_chain(pi10 * INITIAL_WEIGHT, fam)
        return TimeExpansion((one,) + evolve_chain_symbolic(fam, coeffs).terms, env)
    basis = overdamped_basis(omega0)
    xs = decompose_into_eigenbasis(pi10 * INITIAL_WEIGHT, [(p, lam) for _, p, lam in basis])
    terms = [one] + [TimeTerm(lam, 0, p * x) for x, (_, p, lam) in zip(xs, basis) if x != 0]
    return TimeExpansion(tuple(terms), env)


def relaxation_scenario(regime: str, t: float, omega0: Scalar = 1) -> ScenarioState:
    if t < 0:
        raise ValueError("t must be non-negative")
    exp = scenario_expansion(regime, omega0)
    state = exp.at_zero() if t == 0 else exp.at(t)
    return ScenarioState(regime, t, state)


def _slice_values(state: WeightedState, axis: str, grid: Sequence[float]) -> List[complex]:
    return [v for _, v in grid_slice(state, axis, grid)]


def sup_distance_to_stationary(regime: str, t: float, axis: str, grid: Sequence[float],
                               omega0: Scalar = 1) -> float:
    state = scenario_expansion(regime, omega0).at(t)
    ref = stationary_state(CL(1, 1))
    a = _slice_values(state, axis, grid)
    b = _slice_values(ref, axis, grid)
    return max(abs(x - y) for x, y in zip(a, b))


def figure2_dataset(times: Iterable[float], grid: Sequence[float], omega0: Scalar = 1,
                    axes: Sequence[str] = ("diagonal", "offDiagonal")) -> List[Tuple[str, float, str, float, float]]:
    """Rows ``(regime, t, axis, coord, value)``; ``t`` is in units of ``1/omega0``.

    Every scenario state is adjoint-symmetric, so both slices are real; the
    imaginary part is checked rather than silently dropped.
    """
    rows = []
    times = list(times)
    for regime in REGIMES:
        exp = scenario_expansion(regime, omega0)
        for t in times:
            state = exp.at(float(t) / float(omega0))
            for axis in axes:
                for coord, val in grid_slice(state, axis, grid):
                    if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
                        raise ArithmeticError(f"non-real {axis} value {val} at {regime}, t={t}, x={coord}")
                    rows.append((regime, float(t), axis, float(coord), val.real))
    return rows


def describe_expansion(exp: TimeExpansion) -> str:
    """Human-readable ``rate power: poly`` listing."""
    lines = []
    for term in exp.terms:
        lines.append(f"exp(-({format_scalar(term.rate)}) t) t^{term.power}: {term.poly!r}")
    return "\n".join(lines)
