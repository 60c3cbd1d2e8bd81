"""Closed-form eigenvalues and isotypic traces.

Everything is computed in Q(θ) first and specialized at the end, so a
specialized answer is always the evaluation of the symbolic one.
"""
from __future__ import annotations

import itertools
from typing import Sequence

from .. import characters as chars
from ..exact import FieldScalar, ONE_RAT, SYMBOLIC, THETA, ZERO_RAT, ExactMatrix, ThetaMode
from ..polyspace import Partition, mult_profile, normalize_partition, pad


def _check_lambda(lam: Sequence[int], n: int) -> Partition:
    lam = normalize_partition(lam)
    if len(lam) > n:
        raise ValueError(f"partition {lam} has more than N={n} parts")
    return lam


def shifted_parts(lam: Sequence[int], n: int) -> list[FieldScalar]:
    """``ell_i = lambda_i + θ (N - i)``, symbolic."""
    full = pad(_check_lambda(lam, n), n)
    return [SYMBOLIC.coerce(x) + THETA * (n - i - 1) for i, x in enumerate(full)]


def h_complete(m: int, xs: Sequence[FieldScalar]) -> FieldScalar:
    """Complete homogeneous symmetric polynomial; zero for negative degree."""
    if m < 0:
        return ZERO_RAT
    row = [ONE_RAT] + [ZERO_RAT] * m
    for x in xs:
        for d in range(1, m + 1):
            row[d] = row[d] + x * row[d - 1]
    return row[m]


def h_subsets(r: int, m: int, xs: Sequence[FieldScalar]) -> FieldScalar:
    """``h^{(r)}_m``: sum of ``h_m`` over all r-element subsets of ``xs``."""
    if m < 0:
        return ZERO_RAT
    total = ZERO_RAT
    for sub in itertools.combinations(xs, r):
        total = total + h_complete(m, sub)
    return total


def _eig_h_sum(ell: Sequence[FieldScalar], m: int) -> FieldScalar:
    total = ZERO_RAT
    for r in range(1, len(ell) + 1):
        total = total + (-THETA) ** (r - 1) * h_subsets(r, m + 1 - r, ell)
    return total


def _weighted_matrix_power(ell: Sequence[FieldScalar], weights: Sequence[int], m: int) -> FieldScalar:
    """``w^T U^m 1`` with ``U`` upper triangular, diagonal ``ell``, ``-w_j θ`` above."""
    size = len(ell)
    u = ExactMatrix(
        [[ell[i] if i == j else (-THETA * weights[j] if j > i else ZERO_RAT) for j in range(size)] for i in range(size)],
        size,
    )
    vec = [ONE_RAT] * size
    for _ in range(m):
        vec = u.apply(vec)
    total = ZERO_RAT
    for w, v in zip(weights, vec):
        total = total + w * v
    return total


def eig_sym_closed(lam: Sequence[int], m: int, n: int, mode: ThetaMode = SYMBOLIC) -> FieldScalar:
    """Eigenvalue of ``P_m`` on the symmetric eigenfunction of ``V_lambda``.

    Computed as the ``h^{(r)}`` sum and as ``1^T U^m 1``; the two must agree.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    ell = shifted_parts(lam, n)
    value = _eig_h_sum(ell, m)
    check = _weighted_matrix_power(ell, [1] * n, m)
    if value != check:
        raise ArithmeticError(f"h-sum {value} and matrix form {check} disagree for {lam}, m={m}")
    return mode.coerce(value)


def eig_sym_series(lam: Sequence[int], n: int, m_max: int, mode: ThetaMode = SYMBOLIC) -> list[FieldScalar]:
    """``eig_0, ..., eig_{m_max}`` read off the generating function.

    ``1 - θ z sum eig_m z^m = prod (1 - (ell_i + θ) z) / (1 - ell_i z)``.
    """
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    ell = shifted_parts(lam, n)
    order = m_max + 2
    series = [ONE_RAT] + [ZERO_RAT] * (order - 1)
    for x in ell:
        # multiply by (1 - (x + θ) z), then divide by (1 - x z)
        for d in range(order - 1, 0, -1):
            series[d] = series[d] - (x + THETA) * series[d - 1]
        for d in range(1, order):
            series[d] = series[d] + x * series[d - 1]
    return [mode.coerce(-series[k + 1] / THETA) for k in range(m_max + 1)]


def trace_isotypic_closed(lam: Sequence[int], tau: Sequence[int], m: int, n: int, mode: ThetaMode = SYMBOLIC) -> FieldScalar:
    """Sum of the eigenvalues of ``P_m`` over the ``tau``-isotypic part of ``V_lambda``."""
    lam = _check_lambda(lam, n)
    tau = normalize_partition(tau)
    if sum(tau) != n:
        raise ValueError(f"tau={tau} is not a partition of N={n}")
    if m < 1:
        raise ValueError("m must be at least 1")
    prof, _ = mult_profile(lam, n)
    dim_tau = chars.dimension(tau)
    total = ZERO_RAT
    if all(k == 1 for k in prof.n):
        ell = shifted_parts(lam, n)
        for k in range(1, min(m + 1, n) + 1):
            chi = chars.character(tau, (k,) + (1,) * (n - k))
            if chi:
                total = total + (-THETA) ** (k - 1) * h_subsets(k, m + 1 - k, ell) * chi
    else:
        tl = prof.shifted(SYMBOLIC)
        for k in range(1, min(m + 1, prof.p) + 1):
            inner = ZERO_RAT
            for sub in itertools.combinations(range(prof.p), k):
                spec = chars.AveragedCharacterSpec(prof.n, tuple(a + 1 for a in sub))
                avg = chars.averaged_character(tau, spec)
                if not avg:
                    continue
                weight = 1
                for a in sub:
                    weight *= prof.n[a]
                inner = inner + h_complete(m + 1 - k, [tl[a] for a in sub]) * (avg * weight)
            total = total + (-THETA) ** (k - 1) * inner
    return mode.coerce(total * dim_tau)


def eig_sym_profile_matrix(lam: Sequence[int], m: int, n: int, mode: ThetaMode = SYMBOLIC) -> FieldScalar:
    """The ``p x p`` matrix form ``n^T U^m 1`` over the distinct parts of ``lambda``."""
    prof, _ = mult_profile(_check_lambda(lam, n), n)
    return mode.coerce(_weighted_matrix_power(prof.shifted(SYMBOLIC), prof.n, m))


def eig_skew_closed(lam: Sequence[int], m: int, n: int, mode: ThetaMode = SYMBOLIC) -> FieldScalar:
    """Sign-isotype eigenvalue for distinct parts: the symmetric sum with ``θ^{k-1}``."""
    lam = _check_lambda(lam, n)
    prof, _ = mult_profile(lam, n)
    if any(k > 1 for k in prof.n):
        raise ValueError(f"{lam} has repeated parts; there is no sign isotype")
    ell = shifted_parts(lam, n)
    total = ZERO_RAT
    for r in range(1, n + 1):
        total = total + THETA ** (r - 1) * h_subsets(r, m + 1 - r, ell)
    return mode.coerce(total)


def two_block_partition(n: int, eta: int, a: int, b: int) -> Partition:
    return normalize_partition((a,) * (n - eta) + (b,) * eta)


def eig_two_block(n: int, eta: int, a: int, b: int, m: int, k: int, mode: ThetaMode = SYMBOLIC) -> FieldScalar:
    """Eigenvalue on the ``(N-k, k)`` isotype of ``V_lambda``, ``lambda = (a^{N-eta}, b^eta)``."""
    if not a > b >= 0:
        raise ValueError(f"need a > b >= 0, got a={a}, b={b}")
    if not 1 <= eta <= n - 1:
        raise ValueError(f"eta={eta} out of range 1..{n - 1}")
    if not 0 <= k <= min(eta, n - eta):
        raise ValueError(f"k={k} out of range 0..{min(eta, n - eta)}")
    if m < 1:
        raise ValueError("m must be at least 1")
    top = SYMBOLIC.coerce(a) + THETA * eta
    low = SYMBOLIC.coerce(b)
    ratio = (top ** m - low ** m) / (top - low)
    value = top ** m * (n - eta) + low ** m * eta - THETA * ratio * (eta * (n - eta) - k * (n - k + 1))
    return mode.coerce(value)
