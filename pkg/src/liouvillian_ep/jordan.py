"""Jordan chains at the exceptional points of the CL, mKL and HPZ Liouvillians.

Chains are stored in the scaled form ``Psi_N^(z) = Phi_N^(z) / N^z`` only
during construction; :class:`ChainFamily` always holds ``Phi_N^(z)`` itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .coeff import Scalar, sqrt
from .gaussian import GaussianEnvelope, WeightedState, stationary_state
from .models import CL, HPZ, MKL, Model
from .poly2 import Poly2, Q, S
from .superop import DiffOp, apply_op, build_ep_liouvillian, hpz_map


class ChainError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ChainIndex:
    N: int
    z: int

    def is_valid(self) -> bool:
        return self.N >= 0 and 0 <= self.z <= self.N


@dataclass(frozen=True)
class ChainFamily:
    """``Phi_N^(0..N)`` with eigenvalue ``lambda_N`` and the stationary envelope.

    ``convention`` is ``"scaled"`` for ``K F^(z) = lambda (F^(z) + F^(z-1))``
    and ``"standard"`` for ``K F^(z) = lambda F^(z) + F^(z-1)``.
    """

    model: Model
    N: int
    lambda_n: Scalar
    polys: Tuple[Poly2, ...]
    env: GaussianEnvelope
    convention: str = "scaled"

    def __post_init__(self):
        if len(self.polys) != self.N + 1:
            raise ChainError(f"need {self.N + 1} chain members, got {len(self.polys)}")

    def member(self, z: int) -> Poly2:
        if 0 <= z <= self.N:
            return self.polys[z]
        return Poly2()

    def state(self, z: int) -> WeightedState:
        return WeightedState(self.member(z), self.env)

    def with_polys(self, polys: Sequence[Poly2]) -> "ChainFamily":
        return replace(self, polys=tuple(polys))


def ep_model(model: Model) -> Model:
    """The exceptional-point member of ``model``'s parameter family."""
    if isinstance(model, CL):
        return CL.at_ep(model.omega0)
    if isinstance(model, HPZ):
        return HPZ.at_ep(model.b_plus, model.b_minus, model.omega0)
    if isinstance(model, MKL):
        return MKL(model.omega0, model.gamma, 2 * model.omega0)
    raise TypeError(f"{type(model).__name__} has no exceptional point chain")


def _nz(n: int, z: int) -> Fraction:
    # 0^0 = 1 convention of the scaled recursions
    return Fraction(n) ** z if z else Fraction(1)


# -- scaled recursions in polynomial form ----------------------------------

def _cl_diag(psi, n: int, z: int) -> Poly2:
    return (Q - S) * psi(n - 1, z) - psi(n - 2, z) * Fraction(n - 1 - z, 2)


def _cl_par(psi, n: int, z: int) -> Poly2:
    return S * psi(n - 1, z - 1) * Fraction(-1, z)


def _mkl_diag(omega_t: Scalar) -> Callable:
    def rule(psi, n: int, z: int) -> Poly2:
        return S * psi(n - 1, z) * omega_t
    return rule


def _mkl_par(psi, n: int, z: int) -> Poly2:
    return Q * psi(n - 1, z - 1) * Fraction(1, 2 * z) - psi(n - 2, z - 2) * Fraction(1, 8 * z)


def _run_scaled(n_max: int, diag: Callable, par: Callable) -> Dict[Tuple[int, int], Poly2]:
    """Primary route: diagonal rule for ``z = 0``, parallel rule otherwise."""
    table: Dict[Tuple[int, int], Poly2] = {(0, 0): Poly2.const(1)}

    def psi(n: int, z: int) -> Poly2:
        return table.get((n, z), Poly2())

    for n in range(1, n_max + 1):
        for z in range(n + 1):
            table[(n, z)] = diag(psi, n, z) if z == 0 else par(psi, n, z)
    return table


def _unscale(table: Dict[Tuple[int, int], Poly2], n: int) -> Tuple[Poly2, ...]:
    return tuple(table[(n, z)] * _nz(n, z) for z in range(n + 1))


# -- HPZ: the same recursion with the transformed coordinate operators ------

def _hpz_states(model: HPZ, n_max: int) -> Dict[Tuple[int, int], WeightedState]:
    """``F'_N^(z)`` built by ``(Q̂+ - i r̂-)`` and ``i r̂-`` acting on states.

    The transformed coordinates commute but ``Q̂+`` carries a ``d/dQ+`` term,
    so the recursion is run on states rather than by polynomial products.
    """
    smap = hpz_map(model.b_plus, model.b_minus)
    diag_op: DiffOp = smap.hat_q - smap.hat_ir
    env = smap.target
    zero = WeightedState(Poly2(), env)
    table: Dict[Tuple[int, int], WeightedState] = {(0, 0): WeightedState(Poly2.const(1), env)}

    def psi(n: int, z: int) -> WeightedState:
        return table.get((n, z), zero)

    for n in range(1, n_max + 1):
        for z in range(n + 1):
            if z == 0:
                table[(n, z)] = apply_op(diag_op, psi(n - 1, 0)) - psi(n - 2, 0) * Fraction(n - 1, 2)
            else:
                table[(n, z)] = apply_op(smap.hat_ir, psi(n - 1, z - 1)) * Fraction(-1, z)
    return table


def _hpz_diag_states(model: HPZ, table, n: int, z: int) -> WeightedState:
    smap = hpz_map(model.b_plus, model.b_minus)
    zero = WeightedState(Poly2(), smap.target)
    prev = table.get((n - 1, z), zero)
    prev2 = table.get((n - 2, z), zero)
    return apply_op(smap.hat_q - smap.hat_ir, prev) - prev2 * Fraction(n - 1 - z, 2)


def hpz_printed_recursion(model: HPZ, n_max: int) -> Dict[Tuple[int, int], Poly2]:
    """Recursion with the transformed coordinates replaced by multiplication.

    Kept only as a diagnostic: it coincides with the correct chain for
    ``b+ = b-`` or ``N <= 1`` and fails the chain equations otherwise.
    """
    bp, bm = model.b_plus, model.b_minus
    a, c = sqrt((bp + bm) / (2 * bp)), sqrt((bp + bm) / (2 * bm))
    lin = (Q - S * sqrt(bp / bm)) * a

    def diag(psi, n, z):
        return lin * psi(n - 1, z) - psi(n - 2, z) * Fraction(n - 1 - z, 2)

    def par(psi, n, z):
        return S * psi(n - 1, z - 1) * (-c / z)

    table = _run_scaled(n_max, diag, par)
    return {k: v * _nz(*k) for k, v in table.items()}


# -- public construction ---------------------------------------------------

_CACHE: Dict[Tuple, Dict[Tuple[int, int], Poly2]] = {}


def _model_key(model: Model) -> Tuple:
    return (type(model).__name__,) + tuple(
        getattr(model, k) for k in ("omega0", "gamma", "h1", "b_plus", "b_minus") if hasattr(model, k))


def chain_table(model: Model, n_max: int) -> Dict[Tuple[int, int], Poly2]:
    """All ``Phi_N^(z)`` for ``N <= n_max`` (scaled convention)."""
    if n_max < 0:
        raise ChainError("N must be non-negative")
    model = ep_model(model)
    key = _model_key(model)
    cached = _CACHE.get(key)
    if cached is not None and max(n for n, _ in cached) >= n_max:
        return cached
    if isinstance(model, CL):
        scaled = _run_scaled(n_max, _cl_diag, _cl_par)
    elif isinstance(model, MKL):
        scaled = _run_scaled(n_max, _mkl_diag(model.omega_t), _mkl_par)
    elif isinstance(model, HPZ):
        scaled = {k: v.poly for k, v in _hpz_states(model, n_max).items()}
    else:  # pragma: no cover - ep_model already rejects
        raise TypeError(type(model).__name__)
    table = {k: v * _nz(*k) for k, v in scaled.items()}
    _CACHE[key] = table
    return table


def build_chain(model: Model, N: int) -> ChainFamily:
    """Jordan chain of the ``N`` subspace at the model's exceptional point."""
    if N < 0:
        raise ChainError("N must be non-negative")
    model = ep_model(model)
    table = chain_table(model, N)
    polys = tuple(table[(N, z)] for z in range(N + 1))
    return ChainFamily(model, N, N * model.gamma / 2, polys, stationary_state(model).env)


# -- verification ----------------------------------------------------------

@dataclass
class ChainReport:
    """Exact residual of every chain equation; empty ``failures`` means pass."""

    family_label: str
    residuals: List[Tuple[int, Poly2]] = field(default_factory=list)

    @property
    def failures(self) -> List[Tuple[int, Poly2]]:
        return [(z, r) for z, r in self.residuals if not r.is_zero()]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


def _label(family: ChainFamily) -> str:
    return f"{type(family.model).__name__} N={family.N}"


def verify_chain(family: ChainFamily, op: Optional[DiffOp] = None) -> ChainReport:
    """Residuals of ``K F^(0) = lambda F^(0)`` and the rank-raising equations."""
    if op is None:
        op = build_ep_liouvillian(family.model)
    lam = family.lambda_n
    report = ChainReport(_label(family))
    for z in range(family.N + 1):
        f = family.state(z)
        res = apply_op(op, f) - f * lam
        if z:
            prev = family.state(z - 1)
            res = res - (prev * lam if family.convention == "scaled" else prev)
        report.residuals.append((z, res.poly))
    return report


@dataclass
class RepresentationReport:
    family_label: str
    mismatches: List[Tuple[int, Poly2]] = field(default_factory=list)
    checked: List[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_representations_agree(model: Model, N: int) -> RepresentationReport:
    """Diagonal and parallel constructions agree for ``0 < z < N``."""
    model = ep_model(model)
    table = chain_table(model, N)
    report = RepresentationReport(f"{type(model).__name__} N={N}")
    if N < 2:
        return report

    def psi(n: int, z: int) -> Poly2:
        if n < 0 or not 0 <= z <= n:
            return Poly2()
        return table[(n, z)] / _nz(n, z)

    for z in range(1, N):
        par_val = psi(N, z)
        if isinstance(model, CL):
            diag_val = _cl_diag(psi, N, z)
        elif isinstance(model, MKL):
            diag_val = _mkl_diag(model.omega_t)(psi, N, z)
        else:
            env = stationary_state(model).env
            states = {k: WeightedState(v / _nz(*k), env) for k, v in table.items()}
            diag_val = _hpz_diag_states(model, states, N, z).poly
        report.checked.append(z)
        diff = diag_val - par_val
        if not diff.is_zero():
            report.mismatches.append((z, diff))
    return report


# -- similarity freedom ----------------------------------------------------

@dataclass(frozen=True)
class FreedomCoeffs:
    """First column ``c_0..c_N`` of a lower-triangular Toeplitz ``T_N``."""

    c: Tuple[Scalar, ...]

    def __post_init__(self):
        c = tuple(Fraction(x) if isinstance(x, (int, str)) else x for x in self.c)
        if not c:
            raise ChainError("need at least c_0")
        if c[0] == 0:
            raise ChainError("c_0 must be non-zero")
        object.__setattr__(self, "c", c)

    def __len__(self) -> int:
        return len(self.c)

    def padded(self, n: int) -> Tuple[Scalar, ...]:
        """``c_0..c_n`` with missing entries read as zero."""
        return tuple(self.c[i] if i < len(self.c) else Fraction(0) for i in range(n + 1))

    @property
    def d(self) -> Tuple[Scalar, ...]:
        """Inverse column: ``d_0 = 1/c_0``, ``d_z = -(1/c_0) sum_{i<z} c_{z-i} d_i``."""
        c = self.c
        inv0 = 1 / c[0]
        d: List[Scalar] = [inv0]
        for z in range(1, len(c)):
            acc: Scalar = Fraction(0)
            for i in range(z):
                acc = acc + c[z - i] * d[i]
            d.append(-inv0 * acc)
        return tuple(d)

    def inverse(self) -> "FreedomCoeffs":
        return FreedomCoeffs(self.d)

    @classmethod
    def cl_alternative(cls, N: int) -> "FreedomCoeffs":
        """``c_i = (-N)^i / i!``: the rows of the CL alternative-series transform."""
        return cls(tuple(Fraction((-N) ** i, factorial(i)) for i in range(N + 1)))

    @classmethod
    def mkl_alternative(cls, N: int) -> "FreedomCoeffs":
        """``c_i = N^i / i!``, the inverse of :meth:`cl_alternative`."""
        return cls(tuple(Fraction(N ** i, factorial(i)) for i in range(N + 1)))


Matrix = List[List[Scalar]]


def toeplitz_lower(col: Sequence[Scalar], N: int) -> Matrix:
    col = list(col) + [Fraction(0)] * (N + 1 - len(col))
    return [[col[i - j] if i >= j else Fraction(0) for j in range(N + 1)] for i in range(N + 1)]


def freedom_matrix(coeffs: FreedomCoeffs, N: int) -> Matrix:
    if len(coeffs) < N + 1:
        raise ChainError(f"need {N + 1} coefficients for N={N}, got {len(coeffs)}")
    return toeplitz_lower(coeffs.c[:N + 1], N)


def freedom_matrix_inverse(coeffs: FreedomCoeffs, N: int) -> Matrix:
    return toeplitz_lower(coeffs.inverse().c[:N + 1], N)


def k_matrix(N: int, lambda_n: Scalar = 1) -> Matrix:
    """``lambda_N`` times the lower bidiagonal all-ones block."""
    return [[lambda_n if i == j or i == j + 1 else Fraction(0) for j in range(N + 1)] for i in range(N + 1)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc: Scalar = Fraction(0)
            for k in range(m):
                if a[i][k] != 0 and b[k][j] != 0:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def identity(N: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(N + 1)] for i in range(N + 1)]


def apply_freedom(family: ChainFamily, coeffs: FreedomCoeffs) -> ChainFamily:
    """``G^(z) = sum_{i<=z} c_i F^(z-i)``; missing ``c_i`` count as zero."""
    c = coeffs.padded(family.N)
    polys = []
    for z in range(family.N + 1):
        acc = Poly2()
        for i in range(z + 1):
            if c[i] != 0:
                acc = acc + family.polys[z - i] * c[i]
        polys.append(acc)
    return family.with_polys(polys)


def renormalize_convention(family: ChainFamily) -> ChainFamily:
    """``F'^(z) = F^(z) / lambda_N^z`` so that ``K F'^(z) = lambda F'^(z) + F'^(z-1)``."""
    if family.lambda_n == 0:
        raise ChainError("lambda_N = 0 (N = 0 subspace) cannot be renormalised")
    if family.convention != "scaled":
        raise ChainError("family already uses the standard convention")
    polys = [p / family.lambda_n ** z for z, p in enumerate(family.polys)]
    return replace(family, polys=tuple(polys), convention="standard")


def alternative_chain(model: Model, N: int) -> ChainFamily:
    """Alternative series: CL via ``c_i = (-N)^i/i!``, mKL via its inverse."""
    fam = build_chain(model, N)
    if isinstance(fam.model, CL):
        return apply_freedom(fam, FreedomCoeffs.cl_alternative(N))
    if isinstance(fam.model, MKL):
        return apply_freedom(fam, FreedomCoeffs.mkl_alternative(N))
    raise ChainError(f"no alternative series defined for {type(fam.model).__name__}")


# -- serialization ---------------------------------------------------------

def family_to_text(families: Sequence[ChainFamily]) -> str:
    """Blocks ``[N=.. z=..]`` followed by the member's ``Poly2`` text."""
    out = []
    for fam in families:
        for z, p in enumerate(fam.polys):
            out.append(f"[N={fam.N} z={z}]")
            out.append(p.to_text())
    return "\n".join(out) + "\n"
