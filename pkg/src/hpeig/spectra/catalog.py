"""The complete list of ``P_m`` eigenvalues for three variables."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..exact import (
    FieldScalar,
    ONE_RAT,
    SYMBOLIC,
    THETA,
    ZERO_RAT,
    ThetaMode,
    cpoly_equal,
    cpoly_mul,
    cpoly_power,
    format_scalar,
)
from ..polyspace import MultiPoly, Partition, monomial_symmetric, normalize_partition, pad
from . import brute
from .closed import h_complete, h_subsets


@dataclass(frozen=True)
class CatalogEntry:
    """A catalog item: an eigenvalue, or a monic quadratic whose roots are the eigenvalues."""

    item: str
    tau: Partition
    value: FieldScalar | None
    quadratic: tuple[FieldScalar, FieldScalar, FieldScalar] | None
    multiplicity: int
    leading: str

    def factor(self) -> list[FieldScalar]:
        base = list(self.quadratic) if self.quadratic is not None else [ONE_RAT, -self.value]
        return cpoly_power(base, self.multiplicity)


def _poly_str(terms: dict, mode: ThetaMode) -> str:
    return str(MultiPoly(3, terms, mode))


def _span(pairs: Sequence[tuple[tuple, tuple]], mode: ThetaMode) -> str:
    return "span{" + ", ".join(_poly_str({p: 1, q: -1}, mode) for p, q in pairs) + "}"


def _two_block(top: FieldScalar, low: FieldScalar, n_top: int, n_low: int, m: int, coeff: int) -> FieldScalar:
    """``n_top top^m + n_low low^m + coeff θ (top^m - low^m)/(top - low)``."""
    ratio = (top ** m - low ** m) / (top - low)
    return top ** m * n_top + low ** m * n_low + THETA * ratio * coeff


def n3_catalog(lam: Sequence[int], m: int, mode: ThetaMode = SYMBOLIC) -> list[CatalogEntry]:
    lam = normalize_partition(lam)
    if len(lam) > 3:
        raise ValueError("the catalog covers three variables only")
    if m < 1:
        raise ValueError("m must be at least 1")
    a, b, c = pad(lam, 3)
    sym = _poly_str(monomial_symmetric(lam, 3, mode).terms, mode)
    out: list[CatalogEntry] = []
    if a == b == c:
        # T_i acts on x^(a,a,a) by a, hence 3 a^m
        out.append(CatalogEntry("1", (3,), mode.coerce(3 * a ** m), None, 1, sym))
    elif a == b:
        top, low = SYMBOLIC.coerce(a) + THETA, SYMBOLIC.coerce(c)
        out.append(CatalogEntry("2a", (3,), mode.coerce(_two_block(top, low, 2, 1, m, -2)), None, 1, sym))
        span = _span([((a, a, c), (a, c, a)), ((a, a, c), (c, a, a))], mode)
        out.append(CatalogEntry("2b", (2, 1), mode.coerce(_two_block(top, low, 2, 1, m, 1)), None, 2, span))
    elif b == c:
        top, low = SYMBOLIC.coerce(a) + 2 * THETA, SYMBOLIC.coerce(b)
        out.append(CatalogEntry("3a", (3,), mode.coerce(_two_block(top, low, 1, 2, m, -2)), None, 1, sym))
        span = _span([((a, b, b), (b, a, b)), ((a, b, b), (b, b, a))], mode)
        out.append(CatalogEntry("3b", (2, 1), mode.coerce(_two_block(top, low, 1, 2, m, 1)), None, 2, span))
    else:
        ell = [SYMBOLIC.coerce(a) + 2 * THETA, SYMBOLIC.coerce(b) + THETA, SYMBOLIC.coerce(c)]
        h1, h2, h3 = h_subsets(1, m, ell), h_subsets(2, m - 1, ell), h_subsets(3, m - 2, ell)
        out.append(CatalogEntry("4a", (3,), mode.coerce(h1 - THETA * h2 + THETA ** 2 * h3), None, 1, sym))
        # the irrational pair A ± (θ/2) h sqrt(D), through its sum and product
        hm2 = h_complete(m - 2, ell)
        power_sum = sum((x ** m for x in ell), ZERO_RAT)
        center = power_sum - THETA ** 2 * hm2 / 2
        disc = 4 * sum((x * x for x in ell), ZERO_RAT) - 4 * (ell[0] * ell[1] + ell[0] * ell[2] + ell[1] * ell[2]) - 3 * THETA ** 2
        total = center * 2
        product = center ** 2 - THETA ** 2 * hm2 ** 2 * disc / 4
        quad = (mode.one, mode.coerce(-total), mode.coerce(product))
        span = _span([((a, b, c), (b, c, a)), ((a, b, c), (c, a, b)), ((b, a, c), (a, c, b)), ((b, a, c), (c, b, a))], mode)
        out.append(CatalogEntry("4b", (2, 1), None, quad, 2, span))
        alternating = {
            (a, b, c): 1, (b, a, c): -1, (a, c, b): -1, (c, b, a): -1, (b, c, a): 1, (c, a, b): 1,
        }
        out.append(
            CatalogEntry("4c", (1, 1, 1), mode.coerce(h1 + THETA * h2 + THETA ** 2 * h3), None, 1, _poly_str(alternating, mode))
        )
    return out


def check_catalog(lam: Sequence[int], m: int, mode: ThetaMode = SYMBOLIC, cap: int | None = None) -> list[str]:
    """Compare each isotypic block characteristic polynomial with the catalog's factors."""
    lam = normalize_partition(lam)
    entries = n3_catalog(lam, m, mode)
    report = brute.spectrum_on_v_lambda(lam, m, 3, mode, cap)
    problems = []
    taus = {e.tau for e in entries} | {blk.tau for blk in report.blocks}
    for tau in sorted(taus, reverse=True):
        expected: list = [mode.one]
        for e in entries:
            if e.tau == tau:
                expected = cpoly_mul(expected, e.factor())
        blk = report.block(tau)
        actual = list(blk.charpoly) if blk is not None else [mode.one]
        if not cpoly_equal(expected, actual):
            problems.append(
                f"catalog lambda={lam} m={m} tau={tau}: block charpoly "
                f"[{', '.join(format_scalar(x) for x in actual)}] != catalog "
                f"[{', '.join(format_scalar(x) for x in expected)}]"
            )
    return problems
