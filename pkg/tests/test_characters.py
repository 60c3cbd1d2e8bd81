from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import pytest

from hpeig import characters as chars
from hpeig.exact import ThetaMode
from hpeig.polyspace import (
    Permutation,
    cycle_type,
    dominance_leq,
    mult_profile,
    partitions,
    symmetric_group,
    v_lambda_dimension,
)

# ---------------------------------------------------------------------------
# Young's seminormal form, the representation-level oracle


def standard_tableaux(shape):
    """Standard tableaux as tuples ``cell[k] = (row, col)`` of the entry k+1."""
    n = sum(shape)
    out = []

    def grow(filled, cells):
        if len(cells) == n:
            out.append(tuple(cells))
            return
        for r, length in enumerate(shape):
            c = filled[r]
            if c < length and (r == 0 or filled[r - 1] > c):
                filled[r] += 1
                grow(filled, cells + [(r, c)])
                filled[r] -= 1

    grow([0] * len(shape), [])
    return out


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


@lru_cache(maxsize=None)
def seminormal(shape):
    """Matrices of s_1 .. s_{N-1} on the standard tableaux of ``shape``."""
    tabs = standard_tableaux(shape)
    index = {t: i for i, t in enumerate(tabs)}
    n, dim = sum(shape), len(tabs)
    gens = []
    for k in range(n - 1):
        mat = [[Fraction(0)] * dim for _ in range(dim)]
        for t, col in index.items():
            (r1, c1), (r2, c2) = t[k], t[k + 1]
            rho = (c2 - r2) - (c1 - r1)
            mat[col][col] = Fraction(1, rho)
            if r1 != r2 and c1 != c2:
                other = list(t)
                other[k], other[k + 1] = other[k + 1], other[k]
                row = index[tuple(other)]
                mat[row][col] = Fraction(1) if r2 > r1 else 1 - Fraction(1, rho * rho)
        gens.append(mat)
    return gens


def _cycle_representative(cls):
    """Word in adjacent transpositions for a permutation of cycle type ``cls``."""
    word, start = [], 0
    for length in cls:
        word.extend(range(start, start + length - 1))
        start += length
    return word


def seminormal_character(shape, cls):
    gens = seminormal(shape)
    dim = len(standard_tableaux(shape))
    mat = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    for k in _cycle_representative(cls):
        mat = _matmul(mat, gens[k])
    return sum(mat[i][i] for i in range(dim))


@pytest.mark.parametrize("n", range(2, 6))
def test_seminormal_is_a_representation(n):
    for shape in partitions(n):
        gens = seminormal(shape)
        dim = len(gens[0])
        ident = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
        for k, s in enumerate(gens):
            assert _matmul(s, s) == ident
            if k + 1 < len(gens):
                t = gens[k + 1]
                assert _matmul(_matmul(s, t), s) == _matmul(_matmul(t, s), t)
            for t in gens[k + 2:]:
                assert _matmul(s, t) == _matmul(t, s)


@pytest.mark.parametrize("n", range(1, 6))
def test_character_matches_seminormal(n):
    for shape in partitions(n):
        assert chars.dimension(shape) == len(standard_tableaux(shape))
        for cls in partitions(n):
            assert chars.character(shape, cls) == seminormal_character(shape, cls), (shape, cls)


def test_character_examples():
    assert chars.character((2, 1), (3,)) == -1
    assert chars.character((2, 1), (2, 1)) == 0
    for cls in partitions(4):
        assert chars.character((4,), cls) == 1
    assert chars.character_one_cycle((2, 1), 3) == -1
    assert chars.character_one_cycle((3, 1), 1) == 3
    assert chars.character_one_cycle((3, 2), 2) == 1


@pytest.mark.parametrize("n", range(1, 8))
def test_character_table_orthogonality(n):
    ctx = chars.CharacterContext(n)
    assert ctx.columns_orthogonal()
    # row orthogonality as well
    for t1, t2 in itertools.product(ctx.irreps, repeat=2):
        s = sum(chars.class_size(c) * ctx(t1, c) * ctx(t2, c) for c in ctx.classes)
        assert s == (math.factorial(n) if t1 == t2 else 0)


def test_class_sizes_sum_to_group_order():
    for n in range(1, 8):
        assert sum(chars.class_size(c) for c in partitions(n)) == math.factorial(n)


# ---------------------------------------------------------------------------
# averaged characters against brute enumeration of the Young subgroup


def _young_subgroup(blocks):
    starts = list(itertools.accumulate((0,) + tuple(blocks)))[:-1]
    n = sum(blocks)
    for pieces in itertools.product(*(itertools.permutations(range(s, s + b)) for s, b in zip(starts, blocks))):
        images = list(range(n))
        for s, b, piece in zip(starts, blocks, pieces):
            for offset, target in enumerate(piece):
                images[s + offset] = target
        yield Permutation(tuple(images))


def brute_average(tau, blocks, subset):
    """Average of chi(g c), with c joining the *first* point of each block."""
    n = sum(blocks)
    starts = list(itertools.accumulate((0,) + tuple(blocks)))[:-1]
    points = [starts[a - 1] + 1 for a in sorted(subset)]
    c = Permutation.cycle(n, *points) if len(points) > 1 else Permutation.identity(n)
    total, count = 0, 0
    for g in _young_subgroup(blocks):
        total += chars.character(tau, cycle_type((g * c).images))
        count += 1
    return Fraction(total, count)


def _compositions(n):
    for k in range(1, n + 1):
        for cut in itertools.combinations(range(1, n), k - 1):
            edges = (0,) + cut + (n,)
            yield tuple(b - a for a, b in zip(edges, edges[1:]))


@pytest.mark.parametrize("n", range(1, 6))
def test_averaged_character_brute(n):
    for blocks in _compositions(n):
        for r in range(1, len(blocks) + 1):
            for subset in itertools.combinations(range(1, len(blocks) + 1), r):
                spec = chars.AveragedCharacterSpec(blocks, subset)
                for tau in partitions(n):
                    assert chars.averaged_character(tau, spec) == brute_average(tau, blocks, subset)


def test_averaged_examples():
    spec = chars.AveragedCharacterSpec((2, 1), (1, 2))
    assert chars.averaged_character((2, 1), spec) == Fraction(-1, 2)
    assert chars.averaged_character_n11(spec) == Fraction(-1, 2)
    assert chars.averaged_character_n11(chars.AveragedCharacterSpec((1, 1, 1), (1, 2, 3))) == -1
    assert chars.averaged_character((3,), spec) == 1


def test_no_averaging_for_singleton_blocks():
    for n in range(2, 6):
        spec = chars.AveragedCharacterSpec((1,) * n, tuple(range(1, n + 1)))
        for tau in partitions(n):
            assert chars.averaged_character(tau, spec) == chars.character(tau, (n,))


def test_hook_closed_form_singleton_subset():
    # a single joined block means no cycle; chi^(N-1,1) averages to (orbits - 1)
    for blocks in [(1, 2), (2, 1, 1), (3,), (1, 1, 1, 1)]:
        n, p = sum(blocks), len(blocks)
        for a in range(1, p + 1):
            spec = chars.AveragedCharacterSpec(blocks, (a,))
            assert chars.averaged_character_n11(spec) == p - 1 == brute_average((n - 1, 1), blocks, (a,))


def test_spherical_examples():
    assert chars.spherical_p2(3, 1, 1) == Fraction(-1, 2)
    assert chars.spherical_p2(4, 2, 2) == Fraction(-1, 2)
    assert chars.spherical_p2(5, 2, 0) == 1
    with pytest.raises(ValueError):
        chars.spherical_p2(4, 2, 3)


def test_spec_validation():
    with pytest.raises(ValueError):
        chars.AveragedCharacterSpec((2, 1), ())
    with pytest.raises(ValueError):
        chars.AveragedCharacterSpec((2, 1), (3,))


# ---------------------------------------------------------------------------
# projectors and isotypic dimensions


@pytest.mark.parametrize("lam,n", [((2, 1), 3), ((1, 1), 3), ((2, 1, 1), 4), ((3, 1), 4), ((2, 2), 4)])
def test_projectors(lam, n):
    dim = v_lambda_dimension(lam, n)
    total = None
    for tau in partitions(n):
        p = chars.projector_matrix(tau, lam, n)
        assert (p @ p).rows == p.rows
        assert p.rank() == chars.isotypic_dimension(lam, tau, n)
        total = p if total is None else total + p
    assert total.rows == [[int(i == j) for j in range(dim)] for i in range(dim)]


def test_projector_symbolic_mode():
    p = chars.projector_matrix((2, 1), (1, 1), 3, ThetaMode.symbolic())
    assert p.is_symbolic


def _isotypic_oracle(lam, tau, n):
    """Multiplicity via brute orbit counting: dim tau * <chi^tau, perm char>."""
    full = tuple(lam) + (0,) * (n - len(lam))
    total = 0
    for g in symmetric_group(n):
        fixed = sum(1 for arr in set(itertools.permutations(full)) if g.act_exponent(arr) == arr)
        total += chars.character(tau, cycle_type(g.images)) * fixed
    return chars.dimension(tau) * total // math.factorial(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_isotypic_dimension(n):
    for d in range(5):
        for lam in partitions(d, n):
            mult = mult_profile(lam, n)[1]
            dims = 0
            for tau in partitions(n):
                got = chars.isotypic_dimension(lam, tau, n)
                assert got == _isotypic_oracle(lam, tau, n)
                assert (got > 0) == dominance_leq(mult, tau)
                dims += got
            assert dims == v_lambda_dimension(lam, n)


def test_isotypic_examples():
    assert chars.isotypic_dimension((2, 1), (2, 1), 3) == 4
    assert chars.isotypic_dimension((1, 1), (3,), 3) == 1
    assert chars.isotypic_dimension((2, 2), (1, 1, 1), 3) == 0
    assert not any(any(r) for r in chars.projector_matrix((1, 1, 1), (1, 1), 3).rows)
