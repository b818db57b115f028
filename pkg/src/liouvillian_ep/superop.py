"""Liouvillians as differential operators in ``(Q, s)`` and their action on weighted states.

A :class:`DiffOp` is a normal-ordered sum ``c * Q^a s^b dQ^c ds^d``.  Since
``d/dr = i d/ds`` and ``Q r = -i Q s``, all operators of the oscillator models
have real coefficients in this basis.  Application to ``P * G`` folds the
Gaussian derivatives into the polynomial, so results are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from .coeff import Scalar, sqrt
from .gaussian import GaussianEnvelope, WeightedState, stationary_state
from .models import (CL, CL_FRAME, HPZ, KL, KL_FRAME, MKL, MKL_FRAME, CoordFrame,
                     Generic, LiouvilleParams, Model, hpz_frame)
from .poly2 import Q_VAR, S_VAR, Poly2

Term = Tuple[int, int, int, int]  # Q power, s power, dQ order, ds order


class FrameMismatch(ValueError):
    pass


class SingularParameters(ValueError):
    pass


@dataclass(frozen=True)
class DiffOp:
    terms: Tuple[Tuple[Scalar, int, int, int, int], ...]
    frame: CoordFrame = KL_FRAME

    @classmethod
    def build(cls, spec: Dict[Term, Scalar] | Iterable[Tuple[Scalar, int, int, int, int]],
              frame: CoordFrame = KL_FRAME) -> "DiffOp":
        merged: Dict[Term, Scalar] = {}
        items = spec.items() if isinstance(spec, dict) else ((t[1:], t[0]) for t in spec)
        for key, c in items:
            merged[key] = merged.get(key, 0) + c
        terms = tuple((c, *k) for k, c in sorted(merged.items()) if c != 0)
        return cls(terms, frame)

    def as_dict(self) -> Dict[Term, Scalar]:
        return {(a, b, c, d): k for k, a, b, c, d in self.terms}

    def __add__(self, other: "DiffOp") -> "DiffOp":
        if other.frame != self.frame:
            raise FrameMismatch(f"{self.frame} vs {other.frame}")
        merged = self.as_dict()
        for key, c in other.as_dict().items():
            merged[key] = merged.get(key, 0) + c
        return DiffOp.build(merged, self.frame)

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + other * -1

    def __mul__(self, k: Scalar) -> "DiffOp":
        return DiffOp.build({key: c * k for key, c in self.as_dict().items()}, self.frame)

    __rmul__ = __mul__

    def in_frame(self, frame: CoordFrame) -> "DiffOp":
        return DiffOp(self.terms, frame)

    def rescaled(self, q_scale: Scalar, s_scale: Scalar, frame: CoordFrame) -> "DiffOp":
        """Rewrite in coordinates ``Q' = Q/q_scale``, ``s' = s/s_scale``."""
        out = {}
        for k, a, b, c, d in self.terms:
            out[(a, b, c, d)] = k * q_scale ** (a - c) * s_scale ** (b - d)
        return DiffOp.build(out, frame)

    def apply(self, state: WeightedState) -> WeightedState:
        return apply_op(self, state)

    def __call__(self, state: WeightedState) -> WeightedState:
        return apply_op(self, state)


def apply_op(op: DiffOp, state: WeightedState) -> WeightedState:
    """Exact ``op(P G)`` returned as ``P' G`` with the same envelope."""
    if op.frame != state.env.frame:
        raise FrameMismatch(f"operator in {op.frame}, state in {state.env.frame}")
    lq = state.env.log_derivative_q()
    ls = state.env.log_derivative_s()
    cache: Dict[Tuple[int, int], Poly2] = {(0, 0): state.poly}

    def derived(c: int, d: int) -> Poly2:
        if (c, d) in cache:
            return cache[(c, d)]
        if d > 0:
            p = derived(c, d - 1)
            out = p.diff(S_VAR) + p * ls
        else:
            p = derived(c - 1, 0)
            out = p.diff(Q_VAR) + p * lq
        cache[(c, d)] = out
        return out

    total: Dict[Tuple[int, int], Scalar] = {}
    for k, a, b, c, d in op.terms:
        for (qa, sb), v in derived(c, d).terms.items():
            m = (qa + a, sb + b)
            total[m] = total.get(m, 0) + k * v
    return WeightedState(Poly2(total), state.env)


def apply_repeated(ops: Iterable[DiffOp], state: WeightedState) -> WeightedState:
    """Composition ``op_1 ∘ op_2 ∘ ... (state)``, rightmost applied first."""
    for op in reversed(list(ops)):
        state = apply_op(op, state)
    return state


# -- the seven generators --------------------------------------------------

_H = Fraction(1, 2)
_Q4 = Fraction(1, 4)

# (coeff, Q, s, dQ, ds); "dQ Q" is normal ordered to "Q dQ + 1".
_GENERATORS = {
    "iL0": [(_H, 0, 0, 1, 1), (_H, 1, 1, 0, 0)],
    "iM1": [(-_H, 0, 0, 1, 1), (_H, 1, 1, 0, 0)],
    "iM2": [(-_H, 1, 0, 1, 0), (-_H, 0, 0, 0, 0), (-_H, 0, 1, 0, 1)],
    "O0minusHalf": [(-_H, 1, 0, 1, 0), (-_H, 0, 0, 0, 0), (_H, 0, 1, 0, 1)],
    "Oplus": [(_Q4, 0, 0, 2, 0), (_Q4, 0, 2, 0, 0)],
    "L1plus": [(-_Q4, 0, 0, 2, 0), (_Q4, 0, 2, 0, 0)],
    "L2plus": [(-_H, 0, 1, 1, 0)],
}

GENERATOR_NAMES = tuple(_GENERATORS)


def build_generator(which: str, frame: CoordFrame = KL_FRAME) -> DiffOp:
    """One of the seven quadratic generators in ``(Q, s)`` form."""
    try:
        return DiffOp.build(_GENERATORS[which], frame)
    except KeyError:
        raise ValueError(f"unknown generator {which!r}") from None


def generic_liouvillian(p: LiouvilleParams, frame: CoordFrame = KL_FRAME) -> DiffOp:
    weights = {
        "iL0": 2 * p.omega0, "iM1": p.h1, "iM2": p.h2, "O0minusHalf": p.gamma,
        "Oplus": p.g0, "L1plus": p.g1, "L2plus": p.g2,
    }
    total = DiffOp((), frame)
    for name, w in weights.items():
        if w != 0:
            total = total + build_generator(name, frame) * w
    return total


# -- model Liouvillians, written from their coordinate forms ----------------

def kl_liouvillian(omega: Scalar, gamma: Scalar, b: Scalar) -> DiffOp:
    # i w (-dQ dr + Q r) - g/2 (dQ Q - r dr) - b g/2 (dQ^2 - r^2)
    return DiffOp.build([
        (omega, 0, 0, 1, 1), (omega, 1, 1, 0, 0),
        (-gamma / 2, 1, 0, 1, 0), (-gamma / 2, 0, 0, 0, 0), (gamma / 2, 0, 1, 0, 1),
        (-b * gamma / 2, 0, 0, 2, 0), (-b * gamma / 2, 0, 2, 0, 0),
    ], KL_FRAME)


def kl_unitary_part(omega: Scalar) -> DiffOp:
    return DiffOp.build([(omega, 0, 0, 1, 1), (omega, 1, 1, 0, 0)], KL_FRAME)


def kl_dissipative_part(gamma: Scalar, b: Scalar) -> DiffOp:
    return kl_liouvillian(0, gamma, b)


def cl_liouvillian(omega0: Scalar, gamma: Scalar) -> DiffOp:
    # i w0 (-1/2 dQ dr + 2 Q r) + g r dr + 2 g r^2
    return DiffOp.build([
        (omega0 / 2, 0, 0, 1, 1), (2 * omega0, 1, 1, 0, 0),
        (gamma, 0, 1, 0, 1), (-2 * gamma, 0, 2, 0, 0),
    ], CL_FRAME)


def cl_ep_liouvillian(gamma: Scalar) -> DiffOp:
    # i g/2 (-1/2 dQ dr + 2 Q r) + g r dr + 2 g r^2
    return DiffOp.build([
        (gamma / 4, 0, 0, 1, 1), (gamma, 1, 1, 0, 0),
        (gamma, 0, 1, 0, 1), (-2 * gamma, 0, 2, 0, 0),
    ], CL_FRAME)


def mkl_liouvillian(omega0: Scalar, gamma: Scalar, h1: Scalar) -> DiffOp:
    # -i/2 (w0 - h1/2) dQ dr + 2i (w0 + h1/2) Q r - g/2 (dQ Q - r dr + 1/2 dQ^2 - 2 r^2)
    return DiffOp.build([
        ((omega0 - h1 / 2) / 2, 0, 0, 1, 1), (2 * (omega0 + h1 / 2), 1, 1, 0, 0),
        (-gamma / 2, 1, 0, 1, 0), (-gamma / 2, 0, 0, 0, 0), (gamma / 2, 0, 1, 0, 1),
        (-gamma / 4, 0, 0, 2, 0), (-gamma, 0, 2, 0, 0),
    ], MKL_FRAME)


def mkl_ep_liouvillian(omega0: Scalar, gamma: Scalar) -> DiffOp:
    # 4 i w0 Q r - g/2 (1/2 dQ^2 + Q dQ - r dr - 2 r^2 + 1)
    return DiffOp.build([
        (4 * omega0, 1, 1, 0, 0),
        (-gamma / 4, 0, 0, 2, 0), (-gamma / 2, 1, 0, 1, 0), (gamma / 2, 0, 1, 0, 1),
        (-gamma, 0, 2, 0, 0), (-gamma / 2, 0, 0, 0, 0),
    ], MKL_FRAME)


def hpz_liouvillian(omega0: Scalar, gamma: Scalar, b_plus: Scalar, b_minus: Scalar) -> DiffOp:
    # i w0 (-1/2 sqrt(b-/b+) dQ dr + 2 sqrt(b+/b-) Q r) + g r dr + 2 g r^2
    #   + i w0 (b+ - b-)/sqrt(b+ b-) r dQ
    return DiffOp.build([
        (omega0 / 2 * sqrt(b_minus / b_plus), 0, 0, 1, 1),
        (2 * omega0 * sqrt(b_plus / b_minus), 1, 1, 0, 0),
        (gamma, 0, 1, 0, 1), (-2 * gamma, 0, 2, 0, 0),
        (omega0 * (b_plus - b_minus) / sqrt(b_plus * b_minus), 0, 1, 1, 0),
    ], hpz_frame(b_plus, b_minus))


def build_liouvillian(model: Model) -> DiffOp:
    """Liouvillian of ``model`` in its own coordinate frame."""
    if isinstance(model, KL):
        return kl_liouvillian(model.omega, model.gamma, model.b)
    if isinstance(model, CL):
        return cl_liouvillian(model.omega0, model.gamma)
    if isinstance(model, MKL):
        return mkl_liouvillian(model.omega0, model.gamma, model.h1)
    if isinstance(model, HPZ):
        return hpz_liouvillian(model.omega0, model.gamma, model.b_plus, model.b_minus)
    if isinstance(model, Generic):
        return generic_liouvillian(model.params)
    raise TypeError(f"unknown model {model!r}")


def build_ep_liouvillian(model: Model) -> DiffOp:
    """Exceptional-point form written directly from its reduced coordinate expression."""
    if isinstance(model, CL):
        return cl_ep_liouvillian(2 * model.omega0)
    if isinstance(model, MKL):
        return mkl_ep_liouvillian(model.omega0, model.gamma)
    if isinstance(model, HPZ):
        return hpz_liouvillian(model.omega0, 2 * model.omega0, model.b_plus, model.b_minus)
    raise TypeError(f"{type(model).__name__} has no exceptional-point form")


# -- numerical oracle ------------------------------------------------------

def finite_difference_oracle(op: DiffOp, state: WeightedState, point: Tuple[float, float],
                             h: float = 1e-4) -> complex:
    """``(op state)(Q0, r0)`` from central differences of the sampled state.

    ``ds = -i dr`` and ``s = i r``; only derivative orders up to 2 per variable.
    """
    if h <= 0:
        raise ValueError("step must be positive")
    q0, r0 = point
    f = state.value

    def deriv(c: int, d: int) -> complex:
        weights = {0: ((0, 1.0),), 1: ((1, 0.5 / h), (-1, -0.5 / h)),
                   2: ((1, 1 / h ** 2), (0, -2 / h ** 2), (-1, 1 / h ** 2))}
        if c > 2 or d > 2:
            raise ValueError("oracle supports derivative order <= 2")
        total = 0j
        for i, wi in weights[c]:
            for j, wj in weights[d]:
                total += wi * wj * f(q0 + i * h, r0 + j * h)
        return total

    s0 = 1j * r0
    total = 0j
    for k, a, b, c, d in op.terms:
        total += complex(k) * q0 ** a * s0 ** b * (-1j) ** d * deriv(c, d)
    return total


# -- similarity-transformed coordinate operators ----------------------------

@dataclass(frozen=True)
class SimilarityMap:
    """Images of the scaled KL coordinates ``Q/sqrt(2b)`` and ``i sqrt(b/2) r``.

    The two operators commute, so a polynomial in the KL coordinates maps to a
    polynomial in them applied to the target stationary state.
    """

    hat_q: DiffOp
    hat_ir: DiffOp
    target: GaussianEnvelope
    frame: CoordFrame

    def apply_poly(self, poly: Poly2, state: Optional[WeightedState] = None) -> WeightedState:
        """``poly(hat_q, hat_ir) state`` (default: the stationary state)."""
        if state is None:
            state = WeightedState(Poly2.const(1), self.target)
        total = WeightedState(Poly2(), state.env)
        powers: Dict[int, WeightedState] = {}
        for (a, b), c in poly.terms.items():
            if b not in powers:
                w = state
                for _ in range(b):
                    w = apply_op(self.hat_ir, w)
                powers[b] = w
            w = powers[b]
            for _ in range(a):
                w = apply_op(self.hat_q, w)
            total = total + w * c
        return total


def _cl_hat_ops(delta2: Scalar, frame: CoordFrame) -> Tuple[DiffOp, DiffOp]:
    if delta2 == 0 or delta2 == 2:
        raise SingularParameters("CL similarity map is singular at delta2 in {0, 2}")
    rd, rt = sqrt(delta2), sqrt(2 - delta2)
    ch = (rd + rt) / 2            # cosh(phi/2)/sqrt(cosh(phi))
    sh = (rd - rt) / 2            # sinh(phi/2)/sqrt(cosh(phi))
    root = rd * rt                # 1/cosh(phi)
    sinh_phi = -(1 - delta2) / root
    p_terms = [(ch, 0, 1, 0, 0), (-sh / 2, 0, 0, 1, 0)]
    hat_ir = DiffOp.build([(k / root, a, b, c, d) for k, a, b, c, d in p_terms], frame)
    hat_q = DiffOp.build([(ch, 1, 0, 0, 0), (-sh / 2, 0, 0, 0, 1)]
                         + [(k * sinh_phi, a, b, c, d) for k, a, b, c, d in p_terms], frame)
    return hat_q, hat_ir


def hat_operators(model: Model) -> SimilarityMap:
    """Transformed coordinate operators mapping KL eigenfunctions to ``model``."""
    if isinstance(model, CL):
        hq, hr = _cl_hat_ops(model.delta2, CL_FRAME)
        return SimilarityMap(hq, hr, stationary_state(model).env, CL_FRAME)
    if isinstance(model, MKL):
        w0, g, h1 = model.omega0, model.gamma, model.h1
        w1sq = w0 ** 2 - h1 ** 2 / 4
        if w1sq == 0:
            raise SingularParameters("mKL similarity map is singular at h1 = 2 omega0")
        big = w1sq + g ** 2 / 4
        if big == 0:
            raise SingularParameters("omega1^2 + gamma^2/4 vanishes")
        pref = sqrt((w0 + h1 / 2) / (w0 * big)) / sqrt(w1sq)
        hat_q = DiffOp.build([(pref * big, 1, 0, 0, 0), (pref * g ** 2 / 8, 0, 0, 1, 0),
                              (pref * g * h1 / 4, 0, 1, 0, 0)], MKL_FRAME)
        hat_ir = DiffOp.build([(sqrt(w0 * (w0 + h1 / 2) / big), 0, 1, 0, 0)], MKL_FRAME)
        return SimilarityMap(hat_q, hat_ir, stationary_state(model).env, MKL_FRAME)
    if isinstance(model, HPZ):
        return hpz_map(model.b_plus, model.b_minus)
    raise TypeError(f"no similarity map for {type(model).__name__}")


def hpz_map(b_plus: Scalar, b_minus: Scalar) -> SimilarityMap:
    """Images of the CL coordinates ``Q̄`` and ``i r̄`` in the HPZ frame."""
    frame = hpz_frame(b_plus, b_minus)
    k = 1 / sqrt(2 * b_plus * (b_plus + b_minus))
    hat_q = DiffOp.build([(2 * b_plus * k, 1, 0, 0, 0), ((b_plus - b_minus) / 2 * k, 0, 0, 1, 0)], frame)
    hat_ir = DiffOp.build([(sqrt((b_plus + b_minus) / (2 * b_minus)), 0, 1, 0, 0)], frame)
    target = stationary_state(HPZ(1, 1, b_plus, b_minus)).env
    return SimilarityMap(hat_q, hat_ir, target, frame)
