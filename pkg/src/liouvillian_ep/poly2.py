"""Sparse bivariate polynomials in ``Q`` and ``s = i*r``.

Writing density-function polynomials in ``(Q, s)`` rather than ``(Q, r)`` makes
every adjoint-symmetric polynomial real-coefficient, so the Jordan-chain
algebra runs entirely over :class:`fractions.Fraction`.

Coefficients may be ``int``/``Fraction``, :class:`~liouvillian_ep.coeff.Coeff`
(exact, with square roots and ``i``) or ``complex`` (numeric fallback used
only for grid evaluation).  Zero coefficients are never stored.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from .coeff import Coeff, Scalar, conj, format_scalar

Mono = Tuple[int, int]

Q_VAR = "Q"
S_VAR = "S"


class Poly2:
    """Immutable polynomial ``sum c[a, b] Q^a s^b``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Mono, Scalar] | None = None):
        clean: Dict[Mono, Scalar] = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"negative degree in monomial {(a, b)}")
            if isinstance(c, int):
                c = Fraction(c)
            if c != 0:
                clean[(a, b)] = c
        self._terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def zero(cls) -> "Poly2":
        return cls()

    @classmethod
    def q(cls) -> "Poly2":
        return cls({(1, 0): 1})

    @classmethod
    def s(cls) -> "Poly2":
        return cls({(0, 1): 1})

    @classmethod
    def linear(cls, cq: Scalar, cs: Scalar, c0: Scalar = 0) -> "Poly2":
        return cls({(1, 0): cq, (0, 1): cs, (0, 0): c0})

    # -- access -----------------------------------------------------------
    @property
    def terms(self) -> Dict[Mono, Scalar]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[Tuple[Mono, Scalar]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, a: int, b: int) -> Scalar:
        return self._terms.get((a, b), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((a + b for a, b in self._terms), default=-1)

    def degrees(self) -> Tuple[int, int]:
        """Maximal degree in ``Q`` and in ``s`` separately."""
        return (max((a for a, _ in self._terms), default=-1),
                max((b for _, b in self._terms), default=-1))

    def is_real(self) -> bool:
        """True when every coefficient is real (adjoint-symmetric polynomial)."""
        for c in self._terms.values():
            if isinstance(c, Coeff) and c.imag() != 0:
                return False
            if isinstance(c, complex) and c.imag != 0:
                return False
        return True

    # -- ring operations --------------------------------------------------
    def __add__(self, other) -> "Poly2":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Poly2(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly2":
        return Poly2({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly2":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly2":
        return (-self) + other

    def __mul__(self, other) -> "Poly2":
        if not isinstance(other, Poly2):
            if isinstance(other, (int, Fraction, Coeff, float, complex)):
                return self.scale(other)
            return NotImplemented
        out: Dict[Mono, Scalar] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                m = (a1 + a2, b1 + b2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly2(out)

    def __rmul__(self, other) -> "Poly2":
        return self.__mul__(other)

    def __truediv__(self, other: Scalar) -> "Poly2":
        if isinstance(other, int):
            other = Fraction(other)
        return self.scale(1 / other)

    def __pow__(self, n: int) -> "Poly2":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly2.const(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c: Scalar) -> "Poly2":
        if c == 0:
            return Poly2()
        return Poly2({m: v * c for m, v in self._terms.items()})

    def shift(self, da: int, db: int) -> "Poly2":
        """Multiply by the monomial ``Q^da s^db``."""
        return Poly2({(a + da, b + db): c for (a, b), c in self._terms.items()})

    def diff(self, var: str) -> "Poly2":
        if var == Q_VAR:
            return Poly2({(a - 1, b): c * a for (a, b), c in self._terms.items() if a})
        if var == S_VAR:
            return Poly2({(a, b - 1): c * b for (a, b), c in self._terms.items() if b})
        raise ValueError(f"unknown variable {var!r}")

    def map_coeffs(self, fn) -> "Poly2":
        return Poly2({m: fn(c) for m, c in self._terms.items()})

    def numeric(self) -> "Poly2":
        """Same polynomial with ``complex`` coefficients."""
        return self.map_coeffs(complex)

    def substitute_scale(self, q_factor: Scalar, s_factor: Scalar) -> "Poly2":
        """Return ``p(q_factor*Q, s_factor*s)``."""
        return Poly2({(a, b): c * q_factor ** a * s_factor ** b
                      for (a, b), c in self._terms.items()})

    # -- evaluation -------------------------------------------------------
    def eval_complex(self, q_val: complex, r_val: complex) -> complex:
        s_val = 1j * r_val
        return sum((complex(c) * q_val ** a * s_val ** b
                    for (a, b), c in self._terms.items()), 0j)

    def eval_exact(self, q_val: Scalar, s_val: Scalar) -> Scalar:
        total: Scalar = Fraction(0)
        for (a, b), c in self._terms.items():
            total = total + c * q_val ** a * s_val ** b
        return total

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Coeff)):
            other = Poly2.const(other)
        if not isinstance(other, Poly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def is_close(self, other: "Poly2", tol: float = 1e-10) -> bool:
        keys = set(self._terms) | set(other._terms)
        return all(abs(complex(self.coeff(*k)) - complex(other.coeff(*k))) <= tol for k in keys)

    # -- text -------------------------------------------------------------
    def to_text(self) -> str:
        """One ``(degQ,degS): coeff`` line per term, sorted; ``0`` for the zero polynomial."""
        if not self._terms:
            return "0"
        return "\n".join(f"({a},{b}): {format_scalar(c)}" for (a, b), c in sorted(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "Poly2(0)"
        parts = []
        for (a, b), c in sorted(self._terms.items()):
            mono = "*".join(x for x in (_pow("Q", a), _pow("s", b)) if x)
            parts.append(f"({format_scalar(c)})" + (f"*{mono}" if mono else ""))
        return "Poly2(" + " + ".join(parts) + ")"


def _pow(name: str, e: int) -> str:
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


def _as_poly(x):
    if isinstance(x, Poly2):
        return x
    if isinstance(x, (int, Fraction, Coeff, float, complex)):
        return Poly2.const(x)
    return NotImplemented


Q = Poly2.q()
S = Poly2.s()


def add(a: Poly2, b: Poly2) -> Poly2:
    return a + b


def mul(a: Poly2, b: Poly2) -> Poly2:
    return a * b


def diff(a: Poly2, var: str) -> Poly2:
    return a.diff(var)


def eval_complex(a: Poly2, q_val: complex, r_val: complex) -> complex:
    return a.eval_complex(q_val, r_val)


def adjoint(a: Poly2) -> Poly2:
    """Polynomial of ``conj(p(Q, -r))``; equals ``a`` iff ``a`` is adjoint-symmetric."""
    # s = i r  ->  under r -> -r and conjugation, s maps to conj(i)(-r) = s
    return a.map_coeffs(conj)


def parse_text(text: str) -> Poly2:
    """Inverse of :meth:`Poly2.to_text` for rational coefficients."""
    text = text.strip()
    if text == "0":
        return Poly2()
    terms = {}
    for line in text.splitlines():
        mono, _, val = line.partition(":")
        a, b = (int(x) for x in mono.strip()[1:-1].split(","))
        terms[(a, b)] = Fraction(val.strip())
    return Poly2(terms)


def span_matrix(polys: Iterable[Poly2]):
    """Monomial list and column vectors of the given polynomials."""
    polys = list(polys)
    monos = sorted({m for p in polys for m in p.terms})
    return monos, [[p.coeff(*m) for m in monos] for p in polys]
