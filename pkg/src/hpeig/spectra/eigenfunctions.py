"""Symmetric Jack polynomials and joint eigenfunctions of the ``P_m``."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .. import operators as ops
from ..exact import (
    FieldScalar,
    SYMBOLIC,
    ExactMatrix,
    SingularSystemError,
    ThetaMode,
    column_echelon,
    div,
    format_scalar,
    kernel_basis,
    rref,
)
from ..polyspace import (
    Exponent,
    MultiPoly,
    Partition,
    enumerate_dominated,
    monomial_symmetric,
    normalize_partition,
    pad,
    v_lambda_basis,
)
from . import brute
from .factor import factor_rational


class EigenvalueCollisionError(ArithmeticError):
    """The lift of a leading part to lower orbit spaces is not unique at this θ."""


@dataclass
class JackResult:
    poly: MultiPoly
    eigenvalues: dict[int, FieldScalar] = field(default_factory=dict)


def _eigenvalue_of(m: int, f: MultiPoly, lead: Exponent) -> FieldScalar:
    scaled, _ = f.clear_denominators()
    image = ops.apply_P(m, scaled)
    value = div(image.coefficient(lead), scaled.coefficient(lead))
    if image != scaled.scale(value):
        raise ArithmeticError(f"not an eigenfunction of P_{m}")
    return value


def jack_polynomial(lam: Sequence[int], n: int, mode: ThetaMode = SYMBOLIC, m_list: Iterable[int] = (2,)) -> JackResult:
    """The symmetric ``P_2`` eigenfunction ``m_lambda + sum_{mu < lambda} c_mu m_mu``.

    Solved by back substitution down the dominance order, then checked as an
    eigenfunction of every ``P_m`` in ``m_list``.
    """
    lam = normalize_partition(lam)
    if len(lam) > n:
        raise ValueError(f"partition {lam} has more than N={n} parts")
    mus = enumerate_dominated(lam, n)  # reverse lex: a linear extension of dominance
    images = {mu: ops.apply_P(2, monomial_symmetric(mu, n, mode)) for mu in mus}
    coeff = {mu: images[mu].coefficient(mu) for mu in mus}
    e = coeff[mus[0]]
    c: dict[Partition, FieldScalar] = {mus[0]: mode.one}
    for nu in mus[1:]:
        gap = e - coeff[nu]
        if not gap:
            where = "generic θ" if mode.is_symbolic else f"θ={mode}"
            raise SingularSystemError(f"triangular solve for the Jack polynomial of {lam} is singular at {where} (mu={nu})")
        acc = mode.zero
        for mu, cm in c.items():
            a = images[mu].coefficient(nu)
            if a:
                acc = acc + a * cm
        c[nu] = div(acc, gap)
    poly = MultiPoly._raw(n, {}, mode)
    for mu, cm in c.items():
        if cm:
            poly = poly + monomial_symmetric(mu, n, mode).scale(cm)
    lead = pad(lam, n)
    result = JackResult(poly)
    for m in sorted(set(m_list) | {2}):
        result.eigenvalues[m] = _eigenvalue_of(m, poly, lead)
    if result.eigenvalues[2] != e:
        raise ArithmeticError("P_2 eigenvalue differs from the triangular diagonal")
    return result


# ---------------------------------------------------------------------------
# joint eigenbasis


@dataclass
class JointEigenfunction:
    """A joint eigenfunction, or one basis vector of an unresolved joint block.

    ``eigenvalues[m]`` is a scalar when resolved and otherwise the monic
    minimal polynomial (descending coefficients) of the block.
    """

    poly: MultiPoly
    tau: Partition
    eigenvalues: dict[int, FieldScalar | tuple]
    resolved: bool


def _power_matrix(m: int, basis: list[Exponent], mode: ThetaMode) -> ExactMatrix:
    return brute.operator_matrix(lambda f: ops.apply_P(m, f), basis, mode)


def _apply_poly(coeffs: Sequence[FieldScalar], mat: ExactMatrix, zero, one) -> ExactMatrix:
    size = mat.nrows
    out = ExactMatrix.zeros(size, size, zero)
    ident = ExactMatrix.identity(size, one, zero)
    for c in coeffs:
        out = (mat @ out) + ident.scale(c)
    return out


def _split(pieces, mats: list[tuple[int, ExactMatrix]], mode: ThetaMode):
    """Refine ``(vectors, labels)`` pieces by the eigenspaces of each matrix in turn."""
    zero, one = mode.zero, mode.one
    for m, mat in mats:
        refined = []
        for vecs, labels in pieces:
            basis, pivots = column_echelon(vecs)
            images = [mat.apply(v) for v in basis]
            local = ExactMatrix([[img[p] for img in images] for p in pivots], len(basis))
            if local.is_scalar():
                refined.append((basis, {**labels, m: mode.coerce(local[0, 0])}))
                continue
            cpoly = local.charpoly()
            if mode.is_symbolic:
                refined.append((basis, {**labels, m: tuple(cpoly)}))
                continue
            for f in factor_rational(cpoly):
                g = f.coeffs
                for _ in range(f.multiplicity - 1):
                    g = _mul_desc(g, f.coeffs)
                ker = kernel_basis(_apply_poly(g, local, zero, one))
                sub = [[sum((k[i] * basis[i][j] for i in range(len(basis))), zero) for j in range(len(basis[0]))] for k in ker]
                sub_basis, sub_piv = column_echelon(sub)
                sub_images = [mat.apply(v) for v in sub_basis]
                sub_local = ExactMatrix([[img[p] for img in sub_images] for p in sub_piv], len(sub_basis))
                if sub_local.is_scalar():
                    refined.append((sub_basis, {**labels, m: mode.coerce(sub_local[0, 0])}))
                else:
                    refined.append((sub_basis, {**labels, m: f.coeffs}))
        pieces = refined
    return pieces


def _mul_desc(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def joint_eigenbasis(
    lam: Sequence[int], n: int, m_list: Sequence[int], mode: ThetaMode = SYMBOLIC, cap: int | None = None
) -> list[JointEigenfunction]:
    """Joint eigenfunctions of ``{P_m : m in m_list}`` on ``sum_{mu <= lambda} V_mu``.

    Leading parts are split inside each isotypic block of ``V_lambda`` by the
    operators in the order given. Each leading part is then lifted to the
    lower orbit spaces by a Sylvester system over ``P_1..P_N`` and ``m_list``
    together, which pins the lift down whenever the full family separates it.
    """
    lam = normalize_partition(lam)
    if len(lam) > n:
        raise ValueError(f"partition {lam} has more than N={n} parts")
    m_list = list(dict.fromkeys(m_list))
    if not m_list or any(m < 1 for m in m_list):
        raise ValueError("m_list must be a nonempty list of positive integers")
    top = v_lambda_basis(lam, n)
    lower: list[Exponent] = []
    for mu in enumerate_dominated(lam, n)[1:]:
        lower.extend(v_lambda_basis(mu, n))
    basis = top + lower
    brute._check_cap(len(basis), mode, cap)
    all_m = list(dict.fromkeys(m_list + list(range(1, n + 1))))
    mats = {m: _power_matrix(m, basis, mode) for m in all_m}
    t, l = len(top), len(lower)
    tops = {m: mats[m].submatrix(range(t), range(t)) for m in all_m}

    out: list[JointEigenfunction] = []
    for tau, vecs, _ in brute.isotypic_blocks(lam, n, mode):
        pieces = _split([(vecs, {})], [(m, tops[m]) for m in m_list], mode)
        for piece, labels in pieces:
            lifts = _lift(piece, mats, all_m, t, l, mode, lam, labels)
            resolved = all(not isinstance(v, tuple) for v in labels.values())
            for u, x in zip(piece, lifts):
                terms = {g: c for g, c in zip(basis, list(u) + list(x)) if c}
                out.append(JointEigenfunction(MultiPoly._raw(n, terms, mode), tau, dict(labels), resolved))
    return out


def _lift(piece, mats, all_m, t, l, mode, lam, labels):
    """Solve ``A_ll X - X C_m = -A_lt U`` for every ``m`` at once.

    ``piece`` is in echelon form, so its pivots are the leading nonzero entries.
    """
    k = len(piece)
    zero = mode.zero
    if l == 0:
        return [[] for _ in range(k)]
    basis, pivots = piece, [next(j for j, x in enumerate(u) if x) for u in piece]
    rows: list[list] = []
    rhs: list = []
    for m in all_m:
        a = mats[m]
        images = [[sum((a[i, j] * u[j] for j in range(t) if u[j]), zero) for i in range(t)] for u in basis]
        c = [[img[p] for img in images] for p in pivots]  # c[r][s]: component r of image of u_s
        a_ll = a.submatrix(range(t, t + l), range(t, t + l))
        lt = [[sum((a[t + i, j] * u[j] for j in range(t) if u[j]), zero) for i in range(l)] for u in basis]
        # unknown X[i][s] at index s*l + i
        for s in range(k):
            for i in range(l):
                row = [zero] * (k * l)
                for j in range(l):
                    if a_ll[i, j]:
                        row[s * l + j] = row[s * l + j] + a_ll[i, j]
                for r in range(k):
                    if c[r][s]:
                        row[r * l + i] = row[r * l + i] - c[r][s]
                rows.append(row)
                rhs.append(-lt[s][i])
    aug = ExactMatrix([r + [b] for r, b in zip(rows, rhs)], k * l + 1)
    red, piv = rref(aug)
    # with disjoint spectra the system is uniquely solvable; otherwise the
    # lift is either missing (a Jordan block) or not unique
    if k * l in piv or len(piv) < k * l:
        shown = ", ".join(
            f"P_{m}: {format_scalar(v) if not isinstance(v, tuple) else 'unresolved'}" for m, v in labels.items()
        )
        what = "has no eigenfunction lift" if k * l in piv else "has no unique lift"
        raise EigenvalueCollisionError(
            f"a leading part of V_{lam} with eigenvalues ({shown}) {what}: it collides with a "
            f"dominated orbit space at θ={mode}; perturb θ"
        )
    sol = [zero] * (k * l)
    for i, p in enumerate(piv):
        sol[p] = red[i][-1]
    return [[sol[s * l + i] for i in range(l)] for s in range(k)]
