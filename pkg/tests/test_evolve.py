import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from liouvillian_ep.coeff import I, sqrt
from liouvillian_ep.evolve import (INITIAL_WEIGHT, REGIMES, ChainCoeffs, SpanError, TimeExpansion,
                                   decompose_into_chain, decompose_into_eigenbasis, evolve_chain,
                                   evolve_chain_symbolic, figure2_dataset, jordan_propagator, overdamped_basis,
                                   pi10_underdamped, propagate_coeffs, propagate_coeffs_symbolic,
                                   relaxation_scenario, scenario_expansion, solve_span,
                                   sup_distance_to_stationary)
from liouvillian_ep.gaussian import grid_slice, stationary_state
from liouvillian_ep.jordan import build_chain
from liouvillian_ep.models import CL, MKL
from liouvillian_ep.poly2 import Poly2, Q, S
from liouvillian_ep.superop import apply_op, build_ep_liouvillian

from conftest import small_fractions

GRID = [-4 + 8 * k / 160 for k in range(161)]


def _matvec(m, v):
    return [sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(v))]


@pytest.mark.parametrize("N", range(6))
def test_propagator_solves_the_block_equation(N):
    lam, h = Fraction(N, 2) if N else Fraction(1, 3), 1e-4
    for t in (0.3, 1.7):
        plus, minus = jordan_propagator(N, lam, t + h), jordan_propagator(N, lam, t - h)
        here = jordan_propagator(N, lam, t)
        # K_N in (c_N..c_0) order: lambda on the diagonal and on the subdiagonal
        for j in range(N + 1):
            col = [here[i][j] for i in range(N + 1)]
            kcol = [float(lam) * (col[i] + (col[i - 1] if i else 0)) for i in range(N + 1)]
            for i in range(N + 1):
                fd = (plus[i][j] - minus[i][j]) / (2 * h)
                assert abs(fd + kcol[i]) <= 1e-6 * max(1.0, abs(kcol[i]))


def test_propagator_at_zero_is_identity():
    assert jordan_propagator(3, 2, 0.0) == [[complex(i == j) for j in range(4)] for i in range(4)]
    with pytest.raises(ValueError):
        jordan_propagator(1, 1, -1.0)


def test_n2_symbolic_evolution():
    g = Fraction(7, 5)
    c0, c1, c2 = Fraction(1, 3), Fraction(-2), Fraction(5, 4)
    out = propagate_coeffs_symbolic(ChainCoeffs(2, (c0, c1, c2)), g)
    assert out[0] == {0: c0, 1: -g * c1, 2: g * g / 2 * c2}
    assert out[1] == {0: c1, 1: -g * c2}
    assert out[2] == {0: c2}


@settings(max_examples=30)
@given(st.lists(small_fractions, min_size=1, max_size=5), st.floats(0, 3))
def test_numeric_and_symbolic_propagation_agree(c, t):
    N = len(c) - 1
    lam = Fraction(3, 2)
    num = propagate_coeffs(ChainCoeffs(N, tuple(c)), lam, t)
    sym = propagate_coeffs_symbolic(ChainCoeffs(N, tuple(c)), lam)
    for z in range(N + 1):
        v = sum(float(a) * t ** k for k, a in sym[z].items()) * math.exp(-1.5 * t)
        assert abs(num[z] - v) < 1e-9


def test_evolved_chain_solves_master_equation():
    fam = build_chain(MKL.at_ep(1), 3)
    exp = evolve_chain_symbolic(fam, ChainCoeffs(3, (1, -2, Fraction(1, 2), 3)))
    op = build_ep_liouvillian(fam.model)
    dt = exp.time_derivative()
    for t in (0.0, 0.4, 2.0):
        lhs = dt.at(t)
        rhs = apply_op(op, exp.at(t)) * -1
        assert (lhs - rhs).poly.is_close(Poly2(), 1e-10)
    assert abs(evolve_chain(fam, ChainCoeffs(3, (1, -2, Fraction(1, 2), 3)), 0.4).value(0.3, 0.2)
               - exp.at(0.4).value(0.3, 0.2)) < 1e-12


def test_critical_bracket():
    exp = scenario_expansion("critical")
    # exp(-2t)[(1+t+t^2) F0 - 1/2 (1+2t) F1 + 1/2 F2] times 2
    fam = build_chain(CL.at_ep(1), 2)
    want = {(0, 0): 2, (0, 1): 2, (0, 2): 2, (1, 0): -1, (1, 1): -2, (2, 0): 1}
    got = {}
    for term in exp.terms:
        if term.rate == 0:
            continue
        assert term.rate == 2
        c = solve_span(term.poly, fam.polys)
        for z, v in enumerate(c):
            if v != 0:
                got[(z, term.power)] = got.get((z, term.power), 0) + v
    assert got == want


def test_initial_decompositions():
    pi10 = pi10_underdamped()
    fam = build_chain(CL.at_ep(1), 2)
    assert decompose_into_chain(pi10, fam).c == (Fraction(-4, 3), Fraction(2, 3), Fraction(-2, 3))
    basis = overdamped_basis()
    xs = decompose_into_eigenbasis(pi10, [(p, lam) for _, p, lam in basis])
    assert xs == [Fraction(1, 3), 2 * sqrt(2) * I / 3, -2 * sqrt(2) * I / 3]
    assert {lam for _, _, lam in basis} == {3, 3 - sqrt(5), 3 + sqrt(5)}


def test_span_error_carries_residual():
    with pytest.raises(SpanError) as err:
        solve_span(Q ** 3, [Q, S])
    assert err.value.residual == Q ** 3
    with pytest.raises(ValueError):
        solve_span(Q, [Q, Q * 2])


def test_regimes_share_the_initial_state():
    starts = [scenario_expansion(r).at_zero() for r in REGIMES]
    assert starts[0] == starts[1] == starts[2]
    assert starts[0].poly == 1 + pi10_underdamped() * INITIAL_WEIGHT


@pytest.mark.parametrize("regime", REGIMES)
def test_scenario_trace_and_hermiticity(regime):
    exp = scenario_expansion(regime)
    assert exp.trace_terms() == [(0, 0, 1)]
    assert exp.is_hermitian()
    for t in (0.0, 0.5, 1.0, 3.0):
        assert abs(exp.trace_at(t) - 1) < 1e-15
        assert min(v.real for _, v in grid_slice(exp.at(t), "diagonal", GRID)) >= -1e-12


def test_overdamped_is_left_behind():
    d = {r: sup_distance_to_stationary(r, 3.0, "diagonal", GRID) for r in REGIMES}
    assert d["overdamped"] > d["underdamped"] and d["overdamped"] > d["critical"]
    for r in REGIMES:
        assert sup_distance_to_stationary(r, 20.0, "diagonal", GRID) < 1e-3
        assert sup_distance_to_stationary(r, 20.0, "offDiagonal", GRID) < 1e-3


def test_figure_dataset_shape():
    rows = figure2_dataset([0.0, 1.0], [-1.0, 0.0, 1.0])
    assert len(rows) == 3 * 2 * 2 * 3
    assert {r[0] for r in rows} == set(REGIMES)
    assert all(isinstance(r[4], float) for r in rows)


def test_bad_regime_and_time():
    with pytest.raises(ValueError):
        scenario_expansion("ballistic")
    with pytest.raises(ValueError):
        relaxation_scenario("critical", -1.0)
