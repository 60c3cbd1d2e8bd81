"""Sparse polynomials in N variables, partitions and the symmetric-group action."""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .exact import FieldScalar, ThetaMode, ThetaRational, format_scalar, poly_gcd

Exponent = tuple[int, ...]
Partition = tuple[int, ...]


def grlex_key(gamma: Exponent) -> tuple:
    """Sort key: higher total degree first, then lexicographically larger first."""
    return (-sum(gamma), tuple(-g for g in gamma))


class MultiPoly:
    """Sparse polynomial ``{exponent vector: coefficient}`` in ``nvars`` variables."""

    __slots__ = ("nvars", "mode", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, FieldScalar] | None = None, mode: ThetaMode | None = None):
        self.nvars = nvars
        self.mode = mode if mode is not None else ThetaMode.symbolic()
        clean: dict[Exponent, FieldScalar] = {}
        for gamma, c in (terms or {}).items():
            if len(gamma) != nvars:
                raise ValueError(f"exponent {gamma} does not have {nvars} entries")
            if c:
                clean[tuple(gamma)] = self.mode.coerce(c)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict, mode: ThetaMode) -> "MultiPoly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.mode = mode
        p.terms = terms
        return p

    @classmethod
    def monomial(cls, gamma: Sequence[int], mode: ThetaMode | None = None, coeff: FieldScalar = 1) -> "MultiPoly":
        return cls(len(gamma), {tuple(gamma): coeff}, mode)

    @classmethod
    def variable(cls, i: int, nvars: int, mode: ThetaMode | None = None) -> "MultiPoly":
        """The coordinate ``x_i`` (1-based)."""
        gamma = [0] * nvars
        gamma[i - 1] = 1
        return cls.monomial(gamma, mode)

    @classmethod
    def constant(cls, c: FieldScalar, nvars: int, mode: ThetaMode | None = None) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c}, mode)

    def _like(self, terms: dict) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, terms, self.mode)

    def _check(self, other: "MultiPoly") -> None:
        if other.nvars != self.nvars or other.mode != self.mode:
            raise ValueError("polynomials live in different rings")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            v = out.get(g)
            v = c if v is None else v + c
            if v:
                out[g] = v
            else:
                out.pop(g, None)
        return self._like(out)

    def __neg__(self) -> "MultiPoly":
        return self._like({g: -c for g, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def scale(self, c: FieldScalar) -> "MultiPoly":
        c = self.mode.coerce(c)
        if not c:
            return self._like({})
        return self._like({g: c * v for g, v in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        out: dict[Exponent, FieldScalar] = {}
        for g1, c1 in self.terms.items():
            for g2, c2 in other.terms.items():
                g = tuple(a + b for a, b in zip(g1, g2))
                out[g] = out.get(g, 0) + c1 * c2
        return self._like({g: c for g, c in out.items() if c})

    __rmul__ = __mul__

    def mul_var(self, i: int) -> "MultiPoly":
        """Multiply by ``x_i`` (1-based)."""
        k = i - 1
        return self._like({g[:k] + (g[k] + 1,) + g[k + 1:]: c for g, c in self.terms.items()})

    def coefficient(self, gamma: Sequence[int]) -> FieldScalar:
        return self.terms.get(tuple(gamma), self.mode.zero)

    def constant_term(self) -> FieldScalar:
        return self.coefficient((0,) * self.nvars)

    def sorted_terms(self) -> list[tuple[Exponent, FieldScalar]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def degrees(self) -> set[int]:
        return {sum(g) for g in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return self._like({g: c for g, c in self.terms.items() if sum(g) == d})

    def support_partitions(self) -> set[Partition]:
        return {sort_to_partition(g) for g in self.terms}

    def specialize(self, theta0) -> "MultiPoly":
        mode = ThetaMode.at(theta0)
        return MultiPoly(self.nvars, {g: mode.coerce(c) for g, c in self.terms.items()}, mode)

    def clear_denominators(self) -> tuple["MultiPoly", FieldScalar]:
        """Return ``(c * self, c)`` with all coefficients polynomial in θ (or integral)."""
        if self.mode.is_symbolic:
            lcm = None
            for c in self.terms.values():
                d = c.den
                if lcm is None:
                    lcm = d
                elif d != lcm:
                    lcm = lcm * d // poly_gcd(lcm, d)
            factor = ThetaRational._raw(lcm) if lcm is not None else self.mode.one
        else:
            den = 1
            for c in self.terms.values():
                d = Fraction(c).denominator
                den = den * d // math.gcd(den, d)
            factor = den
        return self.scale(factor), factor

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {str(self)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for g, c in self.sorted_terms():
            mono = "*".join(
                (f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}") for i, e in enumerate(g) if e
            )
            coef = format_scalar(c)
            if isinstance(c, ThetaRational) and (len(c.num.coeffs) > 1 or not c.den.is_one()):
                coef = f"({coef})"
            if not mono:
                parts.append(coef)
            elif coef == "1":
                parts.append(mono)
            elif coef == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        return [{"exponent": list(g), "coeff": format_scalar(c)} for g, c in self.sorted_terms()]


# ---------------------------------------------------------------------------
# partitions


def normalize_partition(parts: Iterable[int]) -> Partition:
    """Trim trailing zeros; raise if not nonincreasing and nonnegative."""
    p = list(parts)
    if any(x < 0 for x in p):
        raise ValueError(f"negative part in {p}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"parts are not nonincreasing: {p}")
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return ()
    return normalize_partition(int(x) for x in text.split(","))


def format_partition(lam: Sequence[int]) -> str:
    return ",".join(str(x) for x in lam)


def pad(lam: Sequence[int], n: int) -> Partition:
    if len(normalize_partition(lam)) > n:
        raise ValueError(f"partition {tuple(lam)} has more than {n} nonzero parts")
    lam = normalize_partition(lam)
    return lam + (0,) * (n - len(lam))


def sort_to_partition(gamma: Sequence[int]) -> Partition:
    """The partition ``gamma^+``, padded to ``len(gamma)``."""
    return tuple(sorted(gamma, reverse=True))


def dominance_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """``mu`` is dominated by (or equal to) ``lam``."""
    if sum(mu) != sum(lam):
        return False
    n = max(len(mu), len(lam))
    a = list(mu) + [0] * (n - len(mu))
    b = list(lam) + [0] * (n - len(lam))
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa > sb:
            return False
    return True


def partitions(n: int, max_parts: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        rest_parts = None if max_parts is None else max_parts - 1
        for rest in partitions(n - first, rest_parts, first):
            yield (first,) + rest


def enumerate_dominated(lam: Sequence[int], n: int) -> list[Partition]:
    """All ``mu`` with at most ``n`` parts and ``mu <= lam`` in dominance order, ``lam`` first."""
    lam = normalize_partition(lam)
    return [pad(mu, n) for mu in partitions(sum(lam), n) if dominance_leq(mu, lam)]


@dataclass(frozen=True)
class MultiplicityProfile:
    """Distinct parts ``d`` (decreasing) with multiplicities ``n``."""

    d: tuple[int, ...]
    n: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.d)

    def shifted(self, mode: ThetaMode | None = None) -> list[FieldScalar]:
        """Shifted degrees ``d_i + θ (n_{i+1} + ... + n_p)``."""
        mode = mode or ThetaMode.symbolic()
        out = []
        for i, di in enumerate(self.d):
            out.append(mode.coerce(di) + mode.theta * sum(self.n[i + 1:]))
        return out

    def partition(self) -> Partition:
        return tuple(x for di, ni in zip(self.d, self.n) for x in [di] * ni)


def mult_profile(lam: Sequence[int], n: int) -> tuple[MultiplicityProfile, Partition]:
    """Profile of ``lam`` padded to ``n`` parts, and ``Mult(lam)``."""
    full = pad(lam, n)
    groups = [(k, len(list(g))) for k, g in itertools.groupby(full)]
    prof = MultiplicityProfile(tuple(k for k, _ in groups), tuple(c for _, c in groups))
    return prof, tuple(sorted(prof.n, reverse=True))


def v_lambda_basis(lam: Sequence[int], n: int) -> list[Exponent]:
    """Distinct rearrangements of ``lam`` (padded to ``n``), graded-lex descending."""
    full = pad(lam, n)
    return sorted(set(itertools.permutations(full)), key=grlex_key)


def v_lambda_dimension(lam: Sequence[int], n: int) -> int:
    full = pad(lam, n)
    out = math.factorial(n)
    for c in Counter(full).values():
        out //= math.factorial(c)
    return out


def monomial_symmetric(lam: Sequence[int], n: int, mode: ThetaMode | None = None) -> MultiPoly:
    mode = mode or ThetaMode.symbolic()
    one = mode.one
    return MultiPoly._raw(n, {g: one for g in v_lambda_basis(lam, n)}, mode)


def monomials_of_degree(d: int, n: int) -> list[Exponent]:
    """All exponent vectors of total degree ``d`` in ``n`` variables."""
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(d - first, n - 1):
            out.append((first,) + rest)
    return out


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..N}, stored 0-based: ``images[i] = sigma(i+1) - 1``.

    ``sigma * tau`` applies ``tau`` first, matching ``sigma tau f``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def cycle(cls, n: int, *points: int) -> "Permutation":
        """The cycle ``(p1, p2, ..., pk)`` in 1-based notation."""
        img = list(range(n))
        for a, b in zip(points, points[1:] + points[:1]):
            img[a - 1] = b - 1
        return cls(tuple(img))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        return cls.cycle(n, i, j)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        """Image of the 1-based point ``i``."""
        return self.images[i - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, s in enumerate(self.images):
            inv[s] = i
        return Permutation(tuple(inv))

    def act_exponent(self, gamma: Sequence[int]) -> Exponent:
        """Exponent of ``sigma . x^gamma``: ``x_i`` becomes ``x_{sigma(i)}``."""
        out = [0] * self.n
        for i, s in enumerate(self.images):
            out[s] = gamma[i]
        return tuple(out)

    def cycle_type(self) -> Partition:
        return cycle_type(self.images)


def cycle_type(images: Sequence[int]) -> Partition:
    seen = [False] * len(images)
    lengths = []
    for i in range(len(images)):
        if not seen[i]:
            k = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = images[j]
                k += 1
            lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def all_permutations(n: int) -> Iterator[Permutation]:
    for img in itertools.permutations(range(n)):
        yield Permutation(img)


def permute_action(sigma: Permutation, f: MultiPoly) -> MultiPoly:
    if sigma.n != f.nvars:
        raise ValueError("permutation and polynomial sizes differ")
    return f._like({sigma.act_exponent(g): c for g, c in f.terms.items()})


def swap_exponent(gamma: Exponent, i: int, j: int) -> Exponent:
    """Exponent with (0-based) entries ``i`` and ``j`` exchanged."""
    g = list(gamma)
    g[i], g[j] = g[j], g[i]
    return tuple(g)


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> tuple[Permutation, ...]:
    return tuple(all_permutations(n))
