from fractions import Fraction

import cmath
from hypothesis import given, settings, strategies as st

from liouvillian_ep.poly2 import Poly2, Q, S, add, adjoint, diff, eval_complex, mul, parse_text
from liouvillian_ep.coeff import I

from conftest import polys, small_fractions

pts = st.tuples(st.floats(-2, 2), st.floats(-2, 2))


def test_add_examples():
    assert add(Q, -Q).is_zero()
    # (Q - i r) + (-i r) = Q - 2 i r
    assert add(Q - S, -S) == Poly2({(1, 0): 1, (0, 1): -2})


def test_mul_examples():
    assert mul(Q - S, Q - S) == Q ** 2 - 2 * Q * S + S ** 2
    # CL chain member Phi_2^(1)/2 = -i r (Q - i r)
    assert mul(-S, Q - S) == Poly2({(1, 1): -1, (0, 2): 1})
    assert mul(Q + 1, Poly2()).is_zero()


def test_diff_examples():
    assert diff(Q ** 2 * S, "Q") == 2 * Q * S
    assert diff(Poly2.const(7), "S").is_zero()
    phi20 = (Q - S) ** 2 - Fraction(1, 2)
    assert diff(phi20, "Q") == 2 * (Q - S)


def test_eval_examples():
    assert eval_complex(Q - S, 1, 0) == 1
    assert eval_complex(Q - S, 0, 1) == -1j
    pi10 = Poly2({(0, 0): 1, (2, 0): -2, (1, 1): 2, (0, 2): -2}) * Fraction(2, 3)
    assert abs(eval_complex(pi10, 1, 1) - (2 / 3) * (1 + 2j)) < 1e-14


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(polys())
def test_derivatives_commute(a):
    assert a.diff("Q").diff("S") == a.diff("S").diff("Q")


@settings(max_examples=40)
@given(polys(max_deg=3), polys(max_deg=3), pts)
def test_eval_is_homomorphism(a, b, p):
    lhs = eval_complex(a * b, *p)
    rhs = eval_complex(a, *p) * eval_complex(b, *p)
    assert cmath.isclose(lhs, rhs, rel_tol=1e-9, abs_tol=1e-9)


@given(polys(max_deg=3), small_fractions, small_fractions)
def test_eval_exact_homomorphism(a, q, s):
    b = a * (Q + 1)
    assert b.eval_exact(q, s) == a.eval_exact(q, s) * (q + 1)


@settings(max_examples=40)
@given(polys(max_deg=3), pts)
def test_adjoint_symmetry_of_real_polynomials(a, p):
    q0, r0 = p
    assert cmath.isclose(eval_complex(a, q0, -r0), eval_complex(a, q0, r0).conjugate(), rel_tol=1e-9, abs_tol=1e-9)
    assert adjoint(a) == a


def test_complex_coefficients_are_not_adjoint_symmetric():
    p = Q * I
    assert not p.is_real()
    assert adjoint(p) == -p


@given(polys())
def test_text_round_trip(a):
    assert parse_text(a.to_text()) == a


def test_no_zero_terms_stored():
    p = Poly2({(1, 0): 0, (0, 0): Fraction(0), (2, 1): 3})
    assert len(p) == 1
