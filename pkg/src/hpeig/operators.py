"""Dunkl-type operators acting on :class:`MultiPoly`.

Indices ``i, j`` are 1-based throughout. The coupling constant is taken from
the polynomial's mode.
"""
from __future__ import annotations

from fractions import Fraction

from .exact import FieldScalar
from .polyspace import Exponent, MultiPoly, swap_exponent


def _check_index(i: int, n: int) -> None:
    if not 1 <= i <= n:
        raise IndexError(f"index {i} out of range 1..{n}")


def _accumulate(out: dict, gamma: Exponent, c: FieldScalar) -> None:
    v = out.get(gamma)
    out[gamma] = c if v is None else v + c


def _finish(f: MultiPoly, out: dict) -> MultiPoly:
    return f._like({g: c for g, c in out.items() if c})


def _dd_monomial(i: int, j: int, gamma: Exponent, c: FieldScalar, out: dict) -> None:
    """Add ``c * (x^gamma - (i,j) x^gamma) / (x_i - x_j)`` to ``out`` (0-based i, j)."""
    gi, gj = gamma[i], gamma[j]
    if gi == gj:
        return
    if gi > gj:
        top, low, sign = gi, gj, c
    else:
        top, low, sign = gj, gi, -c
    g = list(gamma)
    # (x_i^top x_j^low - x_i^low x_j^top)/(x_i - x_j) = sum_s x_i^(top-1-s) x_j^(low+s)
    for s in range(top - low):
        g[i] = top - 1 - s
        g[j] = low + s
        _accumulate(out, tuple(g), sign)


def divided_difference(i: int, j: int, f: MultiPoly, check: bool = False) -> MultiPoly:
    """``(f - (i,j) f) / (x_i - x_j)``, computed term by term."""
    if i == j:
        raise ValueError("divided difference needs i != j")
    _check_index(i, f.nvars)
    _check_index(j, f.nvars)
    out: dict = {}
    for gamma, c in f.terms.items():
        _dd_monomial(i - 1, j - 1, gamma, c, out)
    g = _finish(f, out)
    if check:
        swapped = f._like({swap_exponent(k, i - 1, j - 1): c for k, c in f.terms.items()})
        if g.mul_var(i) - g.mul_var(j) != f - swapped:
            raise ArithmeticError("divided difference is not exact")
    return g


def partial(i: int, f: MultiPoly) -> MultiPoly:
    _check_index(i, f.nvars)
    k = i - 1
    out = {}
    for g, c in f.terms.items():
        if g[k]:
            out[g[:k] + (g[k] - 1,) + g[k + 1:]] = c * g[k]
    return f._like(out)


def euler(i: int, f: MultiPoly) -> MultiPoly:
    """``x_i d/dx_i``."""
    _check_index(i, f.nvars)
    k = i - 1
    return f._like({g: c * g[k] for g, c in f.terms.items() if g[k]})


def apply_delta(i: int, f: MultiPoly) -> MultiPoly:
    """Difference part of the Dunkl operator: sum over j != i of divided differences."""
    _check_index(i, f.nvars)
    out: dict = {}
    for gamma, c in f.terms.items():
        for j in range(f.nvars):
            if j != i - 1:
                _dd_monomial(i - 1, j, gamma, c, out)
    return _finish(f, out)


def apply_dunkl(i: int, f: MultiPoly) -> MultiPoly:
    _check_index(i, f.nvars)
    theta = f.mode.theta
    k = i - 1
    out: dict = {}
    for gamma, c in f.terms.items():
        if gamma[k]:
            _accumulate(out, gamma[:k] + (gamma[k] - 1,) + gamma[k + 1:], c * gamma[k])
        tc = c * theta
        if tc:
            for j in range(f.nvars):
                if j != k:
                    _dd_monomial(k, j, gamma, tc, out)
    return _finish(f, out)


def apply_xD(i: int, f: MultiPoly) -> MultiPoly:
    """``x_i D_i``."""
    return apply_dunkl(i, f).mul_var(i)


def apply_xD_power(i: int, m: int, f: MultiPoly) -> MultiPoly:
    for _ in range(m):
        f = apply_xD(i, f)
    return f


def apply_P(m: int, f: MultiPoly) -> MultiPoly:
    """Heckman-Polychronakos operator ``sum_i (x_i D_i)^m``."""
    if m < 1:
        raise ValueError("P_m needs m >= 1")
    total = f._like({})
    for i in range(1, f.nvars + 1):
        total = total + apply_xD_power(i, m, f)
    return total


def t_diagonal(gamma: Exponent, k: int, theta: FieldScalar) -> FieldScalar:
    """Diagonal weight of ``T_{k+1}`` on ``x^gamma``."""
    below = sum(1 for g in gamma if g < gamma[k])
    return gamma[k] + theta * below


def apply_T(i: int, f: MultiPoly) -> MultiPoly:
    """Leading part of ``x_i D_i`` on each orbit space: diagonal weight minus
    θ times the swaps with coordinates of larger degree."""
    _check_index(i, f.nvars)
    theta = f.mode.theta
    k = i - 1
    out: dict = {}
    for gamma, c in f.terms.items():
        _accumulate(out, gamma, c * t_diagonal(gamma, k, theta))
        tc = -c * theta
        for j, gj in enumerate(gamma):
            if gj > gamma[k]:
                _accumulate(out, swap_exponent(gamma, k, j), tc)
    return _finish(f, out)


def apply_T_power(i: int, m: int, f: MultiPoly) -> MultiPoly:
    for _ in range(m):
        f = apply_T(i, f)
    return f


def t_power_sum(m: int, f: MultiPoly) -> MultiPoly:
    """``T_1^m + ... + T_N^m``."""
    total = f._like({})
    for i in range(1, f.nvars + 1):
        total = total + apply_T_power(i, m, f)
    return total


def is_symmetric(f: MultiPoly) -> bool:
    """Invariance under the adjacent transpositions (which generate S_N)."""
    for k in range(f.nvars - 1):
        for g, c in f.terms.items():
            if f.terms.get(swap_exponent(g, k, k + 1)) != c:
                return False
    return True


def apply_cms(f: MultiPoly) -> MultiPoly:
    """Calogero-Moser-Sutherland form of ``P_2`` on symmetric polynomials.

    The (i,j) and (j,i) terms are paired into
    ``(x_i + x_j) (x_i d_i f - x_j d_j f) / (x_i - x_j)``; the bracket is
    antisymmetric in (i,j), so it equals half its divided difference.
    """
    if not is_symmetric(f):
        raise ValueError("apply_cms needs a symmetric polynomial")
    n = f.nvars
    theta = f.mode.theta
    result = f._like({})
    for i in range(1, n + 1):
        result = result + euler(i, euler(i, f))
    pair_sum = f._like({})
    for i in range(1, n + 1):
        ei = euler(i, f)
        for j in range(i + 1, n + 1):
            g = ei - euler(j, f)
            q = divided_difference(i, j, g).scale(Fraction(1, 2))
            pair_sum = pair_sum + q.mul_var(i) + q.mul_var(j)
    return result + pair_sum.scale(theta)


def dunkl_pairing(f: MultiPoly, g: MultiPoly) -> FieldScalar:
    """``f(D_1, ..., D_N) g`` evaluated at the origin."""
    if f.nvars != g.nvars or f.mode != g.mode:
        raise ValueError("polynomials live in different rings")
    total = f.mode.zero
    by_degree: dict[int, MultiPoly] = {}
    for d in g.degrees():
        by_degree[d] = g.homogeneous_part(d)
    for gamma, c in sorted(f.terms.items()):
        h = by_degree.get(sum(gamma))
        if h is None:
            continue
        for i, e in enumerate(gamma):
            for _ in range(e):
                h = apply_dunkl(i + 1, h)
                if not h:
                    break
        total = total + c * h.constant_term()
    return total
