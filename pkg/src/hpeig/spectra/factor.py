"""Exact factoring of characteristic polynomials over Q.

Roots are located with numpy and then confirmed by exact evaluation, so a
floating point miss can only leave a factor unfactored, never produce a wrong
root.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..exact import ONE_POLY, FieldScalar, ThetaPoly, _norm, poly_gcd

_DIVISOR_LIMIT = 10**6


@dataclass(frozen=True)
class Factor:
    """A monic factor (descending coefficients) raised to ``multiplicity``."""

    coeffs: tuple[FieldScalar, ...]
    multiplicity: int
    residual: bool = False

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def root(self) -> FieldScalar | None:
        return _norm(-self.coeffs[1]) if self.degree == 1 else None


def _to_poly(desc: Sequence[FieldScalar]) -> ThetaPoly:
    return ThetaPoly([Fraction(c) for c in reversed(desc)])


def _to_desc(p: ThetaPoly) -> tuple:
    return tuple(_norm(Fraction(c)) for c in reversed(p.coeffs))


def squarefree_decomposition(p: ThetaPoly) -> list[tuple[ThetaPoly, int]]:
    """Yun's algorithm: ``p = prod a_i^i`` with the ``a_i`` square-free and coprime."""
    p = p.monic()
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a0 = poly_gcd(p, dp)
    b = p.exact_div(a0)
    c = dp.exact_div(a0)
    d = c - b.derivative()
    i = 1
    while b.degree >= 1:
        a = poly_gcd(b, d)
        if a.degree >= 1:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def _divisors(k: int) -> list[int]:
    small, large = [], []
    for q in range(1, math.isqrt(k) + 1):
        if k % q == 0:
            small.append(q)
            if q * q != k:
                large.append(k // q)
    return small + large[::-1]


def _rational_roots(p: ThetaPoly) -> list[Fraction]:
    """Rational roots of a square-free polynomial."""
    _, ints = p.integer_primitive()
    lead = abs(ints[-1])
    approx = np.roots([float(c) for c in reversed(ints)])
    found: set[Fraction] = set()
    if ints[0] == 0:
        found.add(Fraction(0))
    for z in approx:
        if abs(z.imag) > 1e-6 * max(1.0, abs(z.real)):
            continue
        r = z.real
        if lead <= _DIVISOR_LIMIT:
            cands = {Fraction(round(r * q), q) for q in _divisors(lead)}
        else:
            cands = {Fraction(r).limit_denominator(lead)}
        for cand in cands:
            if cand not in found and p(cand) == 0:
                found.add(cand)
    return sorted(found)


def factor_rational(charpoly: Sequence[FieldScalar]) -> list[Factor]:
    """Split a monic rational polynomial into linear factors, quadratics and residuals."""
    factors: list[Factor] = []
    for part, mult in squarefree_decomposition(_to_poly(charpoly)):
        rest = part
        for r in _rational_roots(part):
            factors.append(Factor((1, _norm(-r)), mult))
            rest = rest.exact_div(ThetaPoly([-r, 1]))
        if rest.degree >= 1:
            factors.append(Factor(_to_desc(rest.monic()), mult, residual=rest.degree > 2))
    factors.sort(key=lambda f: (f.degree, [Fraction(c) for c in f.coeffs]))
    return factors


def expand(factors: Sequence[Factor]) -> ThetaPoly:
    out = ONE_POLY
    for f in factors:
        out = out * _to_poly(f.coeffs) ** f.multiplicity
    return out
