"""Symmetric-group characters, averaged characters and isotypic projectors."""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact import ExactMatrix, ThetaMode, _norm
from .polyspace import (
    Partition,
    Permutation,
    symmetric_group,
    cycle_type,
    normalize_partition,
    pad,
    partitions,
    v_lambda_basis,
)


def _as_partition(parts: Sequence[int]) -> Partition:
    return normalize_partition(sorted(parts, reverse=True))


@lru_cache(maxsize=None)
def _mn(beta: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1
    k, rest = cycles[0], cycles[1:]
    beads = set(beta)
    total = 0
    for b in beta:
        t = b - k
        if t < 0 or t in beads:
            continue
        # each bead jumped over is one more row of the border strip
        height = sum(1 for c in beta if t < c < b)
        new = tuple(sorted((beads - {b}) | {t}, reverse=True))
        total += (-1) ** height * _mn(new, rest)
    return total


def character(tau: Sequence[int], cls: Sequence[int]) -> int:
    """Value of the irreducible character ``tau`` on the class with cycle type ``cls``
    (Murnaghan-Nakayama rule on beta-sets)."""
    tau = normalize_partition(tau)
    cls = _as_partition(cls)
    if sum(tau) != sum(cls):
        raise ValueError(f"size mismatch: |tau|={sum(tau)}, |class|={sum(cls)}")
    length = len(tau)
    beta = tuple(t + length - 1 - i for i, t in enumerate(tau))
    return _mn(beta, cls)


def dimension(tau: Sequence[int]) -> int:
    """Hook length formula."""
    tau = normalize_partition(tau)
    n = sum(tau)
    conj = [sum(1 for t in tau if t > j) for j in range(tau[0])] if tau else []
    hooks = 1
    for i, row in enumerate(tau):
        for j in range(row):
            hooks *= row - j + conj[j] - i - 1
    return math.factorial(n) // hooks


def _falling(x: int, k: int) -> int:
    out = 1
    for r in range(k):
        out *= x - r
    return out


def character_one_cycle(tau: Sequence[int], k: int) -> Fraction:
    """Character at a single k-cycle from the closed product formula.

    ``(tau_i+N-i)!/(tau_i+N-i-k)!`` is read as a falling factorial, so terms
    whose range would cross zero vanish.
    """
    tau = normalize_partition(tau)
    n = sum(tau)
    if not 1 <= k <= n:
        raise ValueError(f"cycle length {k} out of range 1..{n}")
    t = pad(tau, n)
    total = Fraction(0)
    for i in range(n):
        term = Fraction(_falling(t[i] + n - (i + 1), k))
        if not term:
            continue
        for j in range(n):
            if j != i:
                base = t[i] - (i + 1) - t[j] + (j + 1)
                term *= Fraction(base - k, base)
        total += term
    return _norm(dimension(tau) * Fraction(math.factorial(n - k), math.factorial(n)) * total)


def centralizer_order(rho: Sequence[int]) -> int:
    z = 1
    for part, mult in Counter(rho).items():
        z *= part ** mult * math.factorial(mult)
    return z


def class_size(rho: Sequence[int]) -> int:
    return math.factorial(sum(rho)) // centralizer_order(rho)


@dataclass(frozen=True)
class AveragedCharacterSpec:
    """Block sizes ``n`` of a Young subgroup and the (1-based) blocks ``A`` joined by the cycle."""

    n: tuple[int, ...]
    A: tuple[int, ...]

    def __post_init__(self):
        if not self.A:
            raise ValueError("subset A must be nonempty")
        if any(not 1 <= a <= len(self.n) for a in self.A) or len(set(self.A)) != len(self.A):
            raise ValueError(f"invalid block subset {self.A} for {len(self.n)} blocks")
        if any(x <= 0 for x in self.n):
            raise ValueError("block sizes must be positive")

    @property
    def size(self) -> int:
        return sum(self.n)

    def joining_cycle(self) -> Permutation:
        """The cycle through the last point of each selected block, in increasing block order."""
        ends = list(itertools.accumulate(self.n))
        pts = [ends[a - 1] for a in sorted(self.A)]
        return Permutation.cycle(self.size, *pts) if len(pts) > 1 else Permutation.identity(self.size)


def _block_classes(na: int, marked: bool) -> list[tuple[tuple[int, ...], int, int]]:
    """``(remaining cycle type, length of marked cycle, count)`` over S_na.

    A marked point lies in an L-cycle for ``L * m_L / na`` of the elements of a class.
    """
    out = []
    for rho in partitions(na):
        size = class_size(rho)
        if not marked:
            out.append((rho, 0, size))
            continue
        counts = Counter(rho)
        for length, mult in counts.items():
            rest = list(rho)
            rest.remove(length)
            out.append((tuple(rest), length, size * length * mult // na))
    return out


def averaged_character(tau: Sequence[int], spec: AveragedCharacterSpec) -> Fraction:
    """Average of ``chi^tau(g c)`` over the Young subgroup, ``c`` the joining cycle.

    Summed over conjugacy classes of each block: multiplying by ``c`` merges
    the cycles through the marked points into one cycle.
    """
    tau = normalize_partition(tau)
    if sum(tau) != spec.size:
        raise ValueError(f"size mismatch: |tau|={sum(tau)}, |n|={spec.size}")
    selected = set(spec.A)
    per_block = [_block_classes(na, a + 1 in selected) for a, na in enumerate(spec.n)]
    total = 0
    for combo in itertools.product(*per_block):
        parts: list[int] = []
        joined = 0
        weight = 1
        for rest, length, count in combo:
            parts.extend(rest)
            joined += length
            weight *= count
        if joined:
            parts.append(joined)
        total += weight * character(tau, parts)
    denom = 1
    for na in spec.n:
        denom *= math.factorial(na)
    return _norm(Fraction(total, denom))


def averaged_character_n11(spec: AveragedCharacterSpec) -> Fraction:
    """Closed form for ``tau = (N-1, 1)``: ``p - 1 - sum_{a in A} 1/n_a``.

    With a single block the joining cycle is the identity and the average is
    ``p - 1``; the subtracted sum only applies when at least two blocks are joined.
    """
    p = len(spec.n)
    if len(spec.A) == 1:
        return p - 1
    return _norm(p - 1 - sum(Fraction(1, spec.n[a - 1]) for a in spec.A))


def spherical_p2(n: int, eta: int, k: int) -> Fraction:
    """Two-block spherical function at a transposition joining the blocks."""
    if not 1 <= eta <= n - 1:
        raise ValueError(f"eta={eta} out of range 1..{n - 1}")
    if not 0 <= k <= min(eta, n - eta):
        raise ValueError(f"k={k} out of range 0..{min(eta, n - eta)}")
    return _norm(1 - Fraction(k * (n - k + 1), eta * (n - eta)))


# ---------------------------------------------------------------------------
# isotypic projectors on orbit spaces


def projector_matrix(tau: Sequence[int], lam: Sequence[int], n: int, mode: ThetaMode | None = None) -> ExactMatrix:
    """Matrix of ``(dim tau / N!) sum_g chi^tau(g) g`` in the ``v_lambda_basis`` order."""
    tau = normalize_partition(tau)
    if sum(tau) != n:
        raise ValueError(f"tau must be a partition of {n}")
    basis = v_lambda_basis(lam, n)
    index = {g: i for i, g in enumerate(basis)}
    dim = len(basis)
    acc = [[0] * dim for _ in range(dim)]
    for sigma in symmetric_group(n):
        chi = character(tau, cycle_type(sigma.images))
        if not chi:
            continue
        for col, gamma in enumerate(basis):
            row = index[sigma.act_exponent(gamma)]
            acc[row][col] += chi
    scale = Fraction(dimension(tau), math.factorial(n))
    rows = [[_norm(scale * v) for v in r] for r in acc]
    if mode is not None and mode.is_symbolic:
        rows = [[mode.coerce(v) for v in r] for r in rows]
    return ExactMatrix(rows, dim)


def _fixed_points(rho: Sequence[int], lam_full: Sequence[int]) -> int:
    """Arrangements of ``lam_full`` fixed by a permutation of cycle type ``rho``.

    Fixed arrangements are constant on each cycle, so count the ways to give
    every (labeled) cycle a value without exceeding that value's multiplicity.
    """
    lengths = sorted(rho, reverse=True)
    caps = tuple(Counter(lam_full).values())

    @lru_cache(maxsize=None)
    def assign(idx: int, remaining: tuple) -> int:
        if idx == len(lengths):
            return 1 if not any(remaining) else 0
        total = 0
        for v, r in enumerate(remaining):
            if r >= lengths[idx]:
                nxt = list(remaining)
                nxt[v] -= lengths[idx]
                total += assign(idx + 1, tuple(nxt))
        return total

    return assign(0, caps)


def isotypic_dimension(lam: Sequence[int], tau: Sequence[int], n: int) -> int:
    """``dim V_{lam; tau}``, from the permutation character of the orbit space."""
    tau = normalize_partition(tau)
    full = pad(lam, n)
    total = Fraction(0)
    for rho in partitions(n):
        chi = character(tau, rho)
        if chi:
            total += class_size(rho) * chi * _fixed_points(rho, full)
    value = Fraction(dimension(tau)) * total / math.factorial(n)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral isotypic dimension {value}")
    return int(value)


@dataclass
class CharacterContext:
    """Character table of S_N, checked against column orthogonality on build."""

    n: int
    classes: list[Partition] = field(init=False)
    irreps: list[Partition] = field(init=False)
    table: dict[tuple[Partition, Partition], int] = field(init=False)

    def __post_init__(self):
        self.classes = list(partitions(self.n))
        self.irreps = list(partitions(self.n))
        self.table = {(t, c): character(t, c) for t in self.irreps for c in self.classes}
        if not self.columns_orthogonal():
            raise ArithmeticError(f"character table of S_{self.n} fails column orthogonality")

    def __call__(self, tau: Sequence[int], cls: Sequence[int]) -> int:
        return self.table[(normalize_partition(tau), _as_partition(cls))]

    def columns_orthogonal(self) -> bool:
        for c1 in self.classes:
            for c2 in self.classes:
                s = sum(self.table[(t, c1)] * self.table[(t, c2)] for t in self.irreps)
                expect = centralizer_order(c1) if c1 == c2 else 0
                if s != expect:
                    return False
        return True
