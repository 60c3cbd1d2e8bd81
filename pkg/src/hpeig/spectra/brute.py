"""Brute-force spectra of ``T_1^m + ... + T_N^m`` on the orbit space ``V_lambda``.

By triangularity these are the eigenvalues of ``P_m`` on the joint
eigenfunctions whose leading part lies in ``V_lambda``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .. import characters as chars
from .. import operators as ops
from ..exact import (
    FieldScalar,
    SYMBOLIC,
    ExactMatrix,
    SymbolicCapError,
    ThetaMode,
    column_echelon,
    cpoly_perfect_root,
    restrict,
    symbolic_cap,
)
from ..polyspace import Exponent, MultiPoly, Partition, normalize_partition, partitions, v_lambda_basis
from . import closed
from .factor import Factor, factor_rational

CLOSED_FORM = "closed-form"
BRUTE_FORCE = "brute-force"


def _check_cap(dim: int, mode: ThetaMode, cap: int | None) -> None:
    if mode.is_symbolic and dim > symbolic_cap(cap):
        raise SymbolicCapError(
            f"symbolic computation on a space of dimension {dim} exceeds cap {symbolic_cap(cap)}; "
            "use --theta p/q or raise HP_SYMBOLIC_CAP"
        )


def _column(f: MultiPoly, index: dict[Exponent, int], zero: FieldScalar) -> list[FieldScalar]:
    col = [zero] * len(index)
    for gamma, c in f.terms.items():
        try:
            col[index[gamma]] = c
        except KeyError:
            raise ArithmeticError(f"operator image leaves the orbit space at x^{gamma}") from None
    return col


def operator_matrix(op, basis: Sequence[Exponent], mode: ThetaMode) -> ExactMatrix:
    """Matrix of a linear map ``MultiPoly -> MultiPoly`` that preserves ``span(basis)``."""
    index = {g: i for i, g in enumerate(basis)}
    cols = [_column(op(MultiPoly.monomial(g, mode)), index, mode.zero) for g in basis]
    return ExactMatrix.from_columns(cols) if cols else ExactMatrix([], 0)


def t_sum_matrix(lam: Sequence[int], m: int, n: int, mode: ThetaMode = SYMBOLIC) -> ExactMatrix:
    """``sum_i T_i^m`` on ``V_lambda`` in the graded-lex basis."""
    return operator_matrix(lambda f: ops.t_power_sum(m, f), v_lambda_basis(lam, n), mode)


def t_power_matrix(i: int, lam: Sequence[int], m: int, n: int, mode: ThetaMode = SYMBOLIC) -> ExactMatrix:
    return operator_matrix(lambda f: ops.apply_T_power(i, m, f), v_lambda_basis(lam, n), mode)


def _trace_product(p: ExactMatrix, a: ExactMatrix) -> FieldScalar:
    total = 0
    for i, row in enumerate(p.rows):
        for j, x in enumerate(row):
            if x:
                y = a.rows[j][i]
                if y:
                    total = total + x * y
    return total


def trace_isotypic_brute(
    lam: Sequence[int], tau: Sequence[int], m: int, n: int, mode: ThetaMode = SYMBOLIC, cap: int | None = None
) -> FieldScalar:
    """``Trace(pi_tau sum_i T_i^m)`` on ``V_lambda``, also computed as ``N Trace(pi_tau T_1^m)``."""
    lam = normalize_partition(lam)
    tau = normalize_partition(tau)
    if sum(tau) != n:
        raise ValueError(f"tau={tau} is not a partition of N={n}")
    basis = v_lambda_basis(lam, n)
    _check_cap(len(basis), mode, cap)
    proj = chars.projector_matrix(tau, lam, n)
    full = _trace_product(proj, t_sum_matrix(lam, m, n, mode))
    single = _trace_product(proj, t_power_matrix(1, lam, m, n, mode)) * n
    if full != single:
        raise ArithmeticError(f"sum-form trace {full} differs from N*T_1 form {single}")
    return mode.coerce(full)


def symmetric_eigenvalue_brute(lam: Sequence[int], m: int, n: int, mode: ThetaMode = SYMBOLIC) -> FieldScalar:
    """Eigenvalue of ``sum_i T_i^m`` on the monomial symmetric function ``m_lambda``."""
    basis = v_lambda_basis(lam, n)
    m_lam = MultiPoly._raw(n, {g: mode.one for g in basis}, mode)
    image = ops.t_power_sum(m, m_lam)
    value = image.coefficient(basis[0])
    if image != m_lam.scale(value):
        raise ArithmeticError(f"m_lambda is not an eigenvector of the T-sum for {lam}")
    return value


# ---------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class EigenRecord:
    """One eigenvalue (or irreducible factor) with its multiplicity.

    ``tau`` is None when the record is not attached to a single isotype. A
    record with a polynomial ``minpoly`` stands for ``multiplicity`` copies of
    each of its roots, so it accounts for ``multiplicity * degree`` dimensions.
    """

    lam: Partition
    tau: Partition | None
    m: int
    value: FieldScalar | None
    minpoly: tuple[FieldScalar, ...] | None
    multiplicity: int
    provenance: str = BRUTE_FORCE
    residual: bool = False

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        if (self.value is None) == (self.minpoly is None):
            raise ValueError("exactly one of value and minpoly must be given")
        if self.minpoly is not None and self.minpoly[0] != 1:
            raise ValueError("minimal polynomial must be monic")

    @property
    def degree(self) -> int:
        return 1 if self.minpoly is None else len(self.minpoly) - 1


@dataclass(frozen=True)
class BlockReport:
    tau: Partition
    dim: int
    charpoly: tuple[FieldScalar, ...]
    trace: FieldScalar
    closed_trace: FieldScalar

    @property
    def trace_match(self) -> bool:
        return self.trace == self.closed_trace


@dataclass
class SpectrumReport:
    n: int
    lam: Partition
    m: int
    mode: ThetaMode
    records: list[EigenRecord] = field(default_factory=list)
    blocks: list[BlockReport] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return sum(b.dim for b in self.blocks)

    @property
    def ok(self) -> bool:
        return all(b.trace_match for b in self.blocks)

    def block(self, tau: Sequence[int]) -> BlockReport | None:
        tau = normalize_partition(tau)
        return next((b for b in self.blocks if b.tau == tau), None)

    def eigenvalues(self) -> list[tuple[FieldScalar, int]]:
        """Resolved eigenvalues merged across isotypes, in first-seen order."""
        merged: dict = {}
        for r in self.records:
            if r.value is not None:
                merged[r.value] = merged.get(r.value, 0) + r.multiplicity
        return list(merged.items())


def isotypic_blocks(lam: Sequence[int], n: int, mode: ThetaMode = SYMBOLIC):
    """Yield ``(tau, basis, pivots)`` for each nonzero isotypic component of ``V_lambda``."""
    lam = normalize_partition(lam)
    for tau in partitions(n):
        proj = chars.projector_matrix(tau, lam, n, mode)
        basis, pivots = column_echelon(proj.columns())
        if basis:
            yield tau, basis, pivots


def _block_records(lam, tau, m, block: ExactMatrix, cpoly: list, mode: ThetaMode) -> list[EigenRecord]:
    dim = block.nrows
    if not mode.is_symbolic:
        out = []
        for f in factor_rational(cpoly):
            if f.degree == 1:
                out.append(EigenRecord(lam, tau, m, f.root, None, f.multiplicity))
            else:
                out.append(EigenRecord(lam, tau, m, None, f.coeffs, f.multiplicity, residual=f.residual))
        return out
    if block.is_scalar():
        return [EigenRecord(lam, tau, m, block[0, 0], None, dim)]
    # symbolic mode stops at perfect powers; anything else stays a block factor
    for k in range(dim, 1, -1):
        if dim % k:
            continue
        root = cpoly_perfect_root(cpoly, k)
        if root is not None:
            if len(root) == 2:
                return [EigenRecord(lam, tau, m, -root[1], None, k)]
            return [EigenRecord(lam, tau, m, None, tuple(root), k, residual=len(root) > 3)]
    return [EigenRecord(lam, tau, m, None, tuple(cpoly), 1, residual=dim > 2)]


def spectrum_on_v_lambda(
    lam: Sequence[int], m: int, n: int, mode: ThetaMode = SYMBOLIC, cap: int | None = None
) -> SpectrumReport:
    """Isotypic block decomposition of ``sum_i T_i^m`` on ``V_lambda``."""
    lam = normalize_partition(lam)
    if len(lam) > n:
        raise ValueError(f"partition {lam} has more than N={n} parts")
    if m < 1:
        raise ValueError("m must be at least 1")
    dim = len(v_lambda_basis(lam, n))
    _check_cap(dim, mode, cap)
    mat = t_sum_matrix(lam, m, n, mode)
    report = SpectrumReport(n, lam, m, mode)
    for tau, basis, pivots in isotypic_blocks(lam, n, mode):
        block = restrict(mat, basis, pivots)
        cpoly = block.charpoly(cap)
        report.blocks.append(
            BlockReport(tau, block.nrows, tuple(cpoly), mode.coerce(block.trace()), closed.trace_isotypic_closed(lam, tau, m, n, mode))
        )
        report.records.extend(_block_records(lam, tau, m, block, cpoly, mode))
    if report.dimension != dim:
        raise ArithmeticError(f"isotypic blocks cover {report.dimension} of {dim} dimensions")
    covered = sum(r.multiplicity * r.degree for r in report.records)
    if covered != dim:
        raise ArithmeticError(f"eigen-records cover {covered} of {dim} dimensions")
    return report


def factors_of(report: SpectrumReport) -> list[Factor]:
    return [
        Factor((1, -r.value) if r.value is not None else r.minpoly, r.multiplicity, r.residual)
        for r in report.records
    ]
