"""Exact scalars in the multiquadratic field Q(i, sqrt(2), sqrt(3), sqrt(5), ...).

A :class:`Coeff` is a finite sum ``sum_k (a_k + i b_k) * sqrt(k)`` over positive
square-free radicands ``k`` with rational ``a_k, b_k``.  The radicand ``1`` is
the rational part.  The set is closed under +, -, * and / (division rationalizes
one prime at a time), which is all the Liouvillian eigenfunctions need: their
coefficients only involve square roots of rational parameter combinations.

Plain ``int``/``Fraction`` values interoperate transparently, and every
operation collapses a purely rational real result back to ``Fraction`` so the
common all-rational computations (Jordan chains, traces) stay on the fast path.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Number
from typing import Dict, Tuple, Union

Pair = Tuple[Fraction, Fraction]
Scalar = Union[int, Fraction, "Coeff", float, complex]

_ZERO = Fraction(0)


@lru_cache(maxsize=4096)
def _factor(n: int) -> Tuple[Tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=4096)
def square_free_split(n: int) -> Tuple[int, int]:
    """Return ``(s, k)`` with ``n == s*s*k`` and ``k`` square-free."""
    if n <= 0:
        raise ValueError("square_free_split needs a positive integer")
    s, k = 1, 1
    for p, e in _factor(n):
        s *= p ** (e // 2)
        if e % 2:
            k *= p
    return s, k


def _primes_of(k: int) -> Tuple[int, ...]:
    return tuple(p for p, _ in _factor(k))


class Coeff:
    """Element of Q(i)[sqrt(k) : k square-free]. Immutable."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Dict[int, Pair] | None = None):
        t = {}
        for k, (re, im) in (terms or {}).items():
            if re != 0 or im != 0:
                t[k] = (Fraction(re), Fraction(im))
        self._t = t
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def of(cls, x) -> "Coeff":
        if isinstance(x, Coeff):
            return x
        if isinstance(x, (int, Fraction)):
            return cls({1: (Fraction(x), _ZERO)})
        raise TypeError(f"cannot build an exact Coeff from {type(x).__name__}")

    @classmethod
    def sqrt_rational(cls, x) -> Union[Fraction, "Coeff"]:
        """Principal square root of a rational number (negative -> i*sqrt(|x|))."""
        x = Fraction(x)
        if x == 0:
            return Fraction(0)
        neg = x < 0
        x = abs(x)
        s, k = square_free_split(x.numerator * x.denominator)
        mag = Fraction(s, x.denominator)
        pair = (_ZERO, mag) if neg else (mag, _ZERO)
        return _collapse(cls({k: pair}))

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Dict[int, Pair]:
        return dict(self._t)

    def is_rational(self) -> bool:
        return all(k == 1 and im == 0 for k, (_, im) in self._t.items())

    def radicands(self) -> Tuple[int, ...]:
        return tuple(sorted(self._t))

    def conjugate(self) -> "Coeff":
        return Coeff({k: (re, -im) for k, (re, im) in self._t.items()})

    def real(self) -> Union[Fraction, "Coeff"]:
        return _collapse(Coeff({k: (re, _ZERO) for k, (re, _) in self._t.items()}))

    def imag(self) -> Union[Fraction, "Coeff"]:
        return _collapse(Coeff({k: (im, _ZERO) for k, (_, im) in self._t.items()}))

    def __complex__(self) -> complex:
        z = 0j
        for k, (re, im) in self._t.items():
            r = math.sqrt(k)
            z += complex(float(re) * r, float(im) * r)
        return z

    def __float__(self) -> float:
        z = complex(self)
        if z.imag != 0:
            raise TypeError("Coeff has a non-zero imaginary part")
        return z.real

    def __bool__(self) -> bool:
        return bool(self._t)

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return Coeff({k: (-re, -im) for k, (re, im) in self._t.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) + other
        try:
            o = Coeff.of(other)
        except TypeError:
            return NotImplemented
        t = dict(self._t)
        for k, (re, im) in o._t.items():
            a, b = t.get(k, (_ZERO, _ZERO))
            t[k] = (a + re, b + im)
        return _collapse(Coeff(t))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) - other
        try:
            return self + (-Coeff.of(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) * other
        try:
            o = Coeff.of(other)
        except TypeError:
            return NotImplemented
        t: Dict[int, Pair] = {}
        for k1, (a1, b1) in self._t.items():
            for k2, (a2, b2) in o._t.items():
                g = math.gcd(k1, k2)
                k = (k1 // g) * (k2 // g)
                re = (a1 * a2 - b1 * b2) * g
                im = (a1 * b2 + b1 * a2) * g
                a, b = t.get(k, (_ZERO, _ZERO))
                t[k] = (a + re, b + im)
        return _collapse(Coeff(t))

    __rmul__ = __mul__

    def inverse(self):
        if not self._t:
            raise ZeroDivisionError("Coeff division by zero")
        num: Coeff = Coeff.of(1)
        den = self
        primes = sorted({p for k in den._t for p in _primes_of(k)}, reverse=True)
        for p in primes:
            conj = Coeff({k: ((-re, -im) if k % p == 0 else (re, im))
                          for k, (re, im) in den._t.items()})
            num = Coeff.of(num * conj)
            den = Coeff.of(den * conj)
        a, b = den._t.get(1, (_ZERO, _ZERO))
        norm = a * a + b * b
        return num * Coeff({1: (a / norm, -b / norm)})

    def __truediv__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) / other
        try:
            o = Coeff.of(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return Coeff.of(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out: Scalar = Fraction(1)
        base: Scalar = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Coeff):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == Coeff.of(other)._t
        if isinstance(other, Number):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self._t.get(1, (_ZERO,))[0])
            else:
                self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- text -------------------------------------------------------------
    def __repr__(self):
        return f"Coeff({format_scalar(self)})"

    __str__ = __repr__


def _collapse(c: Coeff) -> Union[Fraction, Coeff]:
    if not c._t:
        return Fraction(0)
    if c.is_rational():
        return c._t[1][0]
    return c


I = Coeff({1: (_ZERO, Fraction(1))})


def sqrt(x: Scalar) -> Scalar:
    """Principal square root: exact for rationals, ``cmath`` for floats."""
    if isinstance(x, (float, complex)):
        return cmath.sqrt(x)
    if isinstance(x, (int, Fraction)):
        return Coeff.sqrt_rational(x)
    if isinstance(x, Coeff):
        if x.is_rational():
            return Coeff.sqrt_rational(x.real())
        raise ValueError(f"no exact square root for {format_scalar(x)}")
    raise TypeError(f"unsupported scalar {type(x).__name__}")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Coeff))


def to_complex(x: Scalar) -> complex:
    return complex(x)


def conj(x: Scalar) -> Scalar:
    if isinstance(x, Coeff):
        return _collapse(x.conjugate())
    if isinstance(x, (int, Fraction)):
        return x
    return complex(x).conjugate()


def is_zero(x: Scalar) -> bool:
    return x == 0


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar) -> str:
    """Stable text form, e.g. ``-3/2``, ``1/2+1/2√5``, ``-2/3i+1/3√2i``."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return _fmt_q(x)
    if isinstance(x, (float, complex)):
        return repr(complex(x)) if isinstance(x, complex) else repr(x)
    parts = []
    for unit, idx in (("", 0), ("i", 1)):
        for k in sorted(x.terms):
            q = x.terms[k][idx]
            if q == 0:
                continue
            if k == 1:
                body = _fmt_q(q) if (q != 1 and q != -1) or not unit else ("-" if q < 0 else "")
            else:
                mag = "" if abs(q) == 1 else _fmt_q(abs(q))
                body = ("-" if q < 0 else "") + mag + f"√{k}"
            parts.append(body + unit)
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out
