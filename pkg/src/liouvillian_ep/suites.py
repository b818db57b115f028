"""Verification suites shared by the CLI ``verify`` command and the test-suite."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from .gaussian import WeightedState, stationary_state, trace_integral
from .jordan import (FreedomCoeffs, apply_freedom, build_chain, check_representations_agree,
                     freedom_matrix, freedom_matrix_inverse, identity, k_matrix, matmul, verify_chain)
from .models import CL, HPZ, KL, MKL
from .spectra import EigIndex, all_indices, kl_eigenfunction, kl_eigenvalue, transformed_eigenfunction
from .superop import apply_op, build_ep_liouvillian, build_generator, build_liouvillian, finite_difference_oracle


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(ok), detail))

    def lines(self) -> List[str]:
        out = [f"[{self.suite}] {'PASS' if self.ok else 'FAIL'} ({len(self.checks)} checks)"]
        for c in self.checks:
            if not c.ok:
                out.append(f"  FAIL {c.name}: {c.detail}")
        return out


def chain_models() -> List[object]:
    """Exceptional-point models covered by the chain suites."""
    return [CL.at_ep(1), MKL.at_ep(Fraction(1, 2)), MKL.at_ep(1), MKL.at_ep(2),
            HPZ.at_ep(1, Fraction(1, 2))]


def suite_kl_eigen(m_max: int = 6) -> SuiteReport:
    rep = SuiteReport("kl-eigen")
    omega, gamma = Fraction(1), Fraction(1, 2)
    for b in (Fraction(1, 2), Fraction(1), Fraction(3, 2)):
        op = build_liouvillian(KL(omega, gamma, b))
        for idx in all_indices(m_max):
            f = kl_eigenfunction(idx, b)
            res = apply_op(op, f) - f * kl_eigenvalue(idx, omega, gamma)
            rep.add(f"b={b} {idx.label()}", res.is_zero(), repr(res.poly))
    return rep


def suite_chains(n_max: int = 8, fault: bool = False) -> SuiteReport:
    rep = SuiteReport("chains")
    for model in chain_models():
        for N in range(n_max + 1):
            fam = build_chain(model, N)
            if fault and N == n_max and N >= 1:
                polys = list(fam.polys)
                polys[N - 1] = polys[N - 1] + 1
                fam = fam.with_polys(polys)
            r = verify_chain(fam)
            rep.add(f"{r.family_label} chain", r.ok, "; ".join(f"z={z}: {p!r}" for z, p in r.failures))
            rr = check_representations_agree(model, N)
            rep.add(f"{rr.family_label} diag/par", rr.ok, "; ".join(f"z={z}" for z, _ in rr.mismatches))
    return rep


def _random_coeffs(rng: random.Random, n: int) -> FreedomCoeffs:
    c = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(n + 1)]
    if c[0] == 0:
        c[0] = Fraction(1)
    return FreedomCoeffs(tuple(c))


def suite_freedom(n_max: int = 6, samples: int = 20, seed: int = 20240101) -> SuiteReport:
    rep = SuiteReport("freedom")
    rng = random.Random(seed)
    for k in range(samples):
        N = rng.randint(1, max(1, n_max))
        coeffs = _random_coeffs(rng, N)
        T, Tinv = freedom_matrix(coeffs, N), freedom_matrix_inverse(coeffs, N)
        K = k_matrix(N, Fraction(N))
        rep.add(f"sample {k} N={N} T T^-1 = I", matmul(T, Tinv) == identity(N))
        rep.add(f"sample {k} N={N} T K T^-1 = K", matmul(matmul(T, K), Tinv) == K)
        model = chain_models()[k % len(chain_models())]
        fam = apply_freedom(build_chain(model, N), coeffs)
        rep.add(f"sample {k} {type(model).__name__} N={N} transformed chain", verify_chain(fam).ok)
    rep.add("case 1: c_i = 1 gives d = (1, -1, 0, 0)",
            FreedomCoeffs((1, 1, 1, 1)).d == (1, -1, 0, 0))
    return rep


def suite_trace(n_max: int = 6) -> SuiteReport:
    rep = SuiteReport("trace")
    for model in chain_models():
        for N in range(n_max + 1):
            fam = build_chain(model, N)
            for z in range(N + 1):
                tr = trace_integral(fam.state(z))
                want = 1 if N == z == 0 else 0
                rep.add(f"{type(model).__name__} N={N} z={z}", tr == want, f"trace {tr}")
    return rep


def oracle_cases(rng: random.Random) -> List[Tuple[str, object, WeightedState]]:
    """Candidate ``(label, operator, state)`` pairs for the finite-difference oracle."""
    half = Fraction(1, 2)
    cases = [
        ("K_KL f10", build_liouvillian(KL(1, half, half)), kl_eigenfunction(EigIndex(1, 0), half)),
        ("K_KL f+21", build_liouvillian(KL(1, half, 1)), kl_eigenfunction(EigIndex(2, 1, 1), 1)),
        ("L2+ Q f00", build_generator("L2plus"), _q_state(Fraction(1))),
        ("K_CL f-22", build_liouvillian(CL(1, half)), transformed_eigenfunction(CL(1, half), EigIndex(2, 2, -1))),
        ("K_E CL F_3^(1)", build_ep_liouvillian(CL.at_ep(1)), build_chain(CL.at_ep(1), 3).state(1)),
        ("K_E mKL F_3^(2)", build_ep_liouvillian(MKL.at_ep(1)), build_chain(MKL.at_ep(1), 3).state(2)),
        ("K_mKL f+11", build_liouvillian(MKL(1, half, Fraction(1, 3))),
         transformed_eigenfunction(MKL(1, half, Fraction(1, 3)), EigIndex(1, 1, 1))),
        ("K_HPZ F_2^(1)", build_ep_liouvillian(HPZ.at_ep(1, half)), build_chain(HPZ.at_ep(1, half), 2).state(1)),
        ("iM2 f10", build_generator("iM2"), kl_eigenfunction(EigIndex(1, 0), half)),
        ("O+ f+11", build_generator("Oplus"), kl_eigenfunction(EigIndex(1, 1, 1), half)),
    ]
    rng.shuffle(cases)
    return cases


def _q_state(b: Fraction) -> WeightedState:
    from .poly2 import Poly2
    return WeightedState(Poly2.q(), stationary_state(KL(1, 1, b)).env)


def oracle_triples(count: int = 20, seed: int = 7, h: float = 1e-4) -> List[Tuple[str, Tuple[float, float], float]]:
    """``(label, point, relative error)`` for ``count`` random triples away from zeros."""
    rng = random.Random(seed)
    cases = oracle_cases(rng)
    out = []
    k = 0
    while len(out) < count:
        label, op, state = cases[k % len(cases)]
        k += 1
        point = (rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        exact = apply_op(op, state).value(*point)
        scale = max(abs(state.value(*point)), 1e-12)
        if abs(exact) < 1e-3 * scale or abs(exact) < 1e-6:
            continue
        approx = finite_difference_oracle(op, state, point, h)
        out.append((label, point, abs(approx - exact) / abs(exact)))
    return out


def suite_oracle(count: int = 20, tol: float = 1e-6) -> SuiteReport:
    rep = SuiteReport("oracle")
    for label, point, err in oracle_triples(count):
        rep.add(f"{label} at ({point[0]:.3f}, {point[1]:.3f})", err < tol, f"rel err {err:.2e}")
    return rep


SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "kl-eigen": lambda n_max, fault=False: suite_kl_eigen(min(n_max, 6)),
    "chains": lambda n_max, fault=False: suite_chains(n_max, fault),
    "freedom": lambda n_max, fault=False: suite_freedom(min(n_max, 6)) if n_max else SuiteReport("freedom"),
    "trace": lambda n_max, fault=False: suite_trace(min(n_max, 6)),
    "oracle": lambda n_max, fault=False: suite_oracle(),
}
