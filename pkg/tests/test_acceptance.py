"""Acceptance criteria 1-8, exact equality throughout.

Each test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion (see conftest.py).
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

import pytest

from hpeig import characters as chars
from hpeig import cli
from hpeig import operators as ops
from hpeig.exact import SYMBOLIC, THETA, ThetaMode, cpoly_perfect_root
from hpeig.polyspace import (
    MultiPoly,
    dominance_leq,
    enumerate_dominated,
    monomial_symmetric,
    monomials_of_degree,
    mult_profile,
    pad,
    partitions,
    v_lambda_basis,
    v_lambda_dimension,
)
from hpeig.spectra import (
    brute,
    catalog,
    closed,
    eigenfunctions,
)

SPECIAL = [ThetaMode.at(t) for t in ("1/2", "1", "2")]
TRACE_CAP = 200


def all_lambdas(max_size: int, n: int):
    for d in range(max_size + 1):
        yield from partitions(d, n)


# ---------------------------------------------------------------------------
# 1. commutativity


def _commutator_violations(n: int, max_deg: int, mode: ThetaMode) -> list:
    bad = []
    for d in range(max_deg + 1):
        for gamma in monomials_of_degree(d, n):
            f = MultiPoly.monomial(gamma, mode)
            images = {m: ops.apply_P(m, f) for m in (1, 2, 3)}
            for m, k in itertools.product((1, 2, 3), repeat=2):
                if ops.apply_P(m, images[k]) != ops.apply_P(k, images[m]):
                    bad.append((gamma, m, k))
    return bad


@pytest.mark.criterion(1)
@pytest.mark.parametrize("mode", SPECIAL, ids=str)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_commutativity_specialized(n, mode):
    assert _commutator_violations(n, 5, mode) == []


@pytest.mark.criterion(1)
def test_commutativity_symbolic():
    assert _commutator_violations(2, 3, SYMBOLIC) == []


# ---------------------------------------------------------------------------
# 2. symmetric eigenvalues


@pytest.mark.criterion(2)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_symmetric_eigenvalue_five_ways(n):
    for lam in all_lambdas(5, n):
        ell = closed.shifted_parts(lam, n)
        series = closed.eig_sym_series(lam, n, 4)
        jack = eigenfunctions.jack_polynomial(lam, n, SYMBOLIC, range(1, 5))
        for m in range(1, 5):
            h_sum = closed.eig_sym_closed(lam, m, n)
            matrix = closed._weighted_matrix_power(ell, [1] * n, m)
            brute_value = brute.symmetric_eigenvalue_brute(lam, m, n)
            assert h_sum == matrix == series[m] == brute_value == jack.eigenvalues[m], (lam, m)


# ---------------------------------------------------------------------------
# 3. traces


def _is_distinct(lam, n) -> bool:
    return len(set(pad(lam, n))) == n


@pytest.mark.criterion(3)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_distinct_trace(n):
    checked = 0
    for lam in all_lambdas(6, n):
        if not _is_distinct(lam, n):
            continue
        for tau in partitions(n):
            for m in range(1, 5):
                want = brute.trace_isotypic_brute(lam, tau, m, n, SYMBOLIC, cap=TRACE_CAP)
                assert closed.trace_isotypic_closed(lam, tau, m, n) == want, (lam, tau, m)
                checked += 1
    assert checked or n > 3


@pytest.mark.criterion(3)
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_general_trace(n):
    for lam in all_lambdas(5, n):
        if _is_distinct(lam, n):
            continue
        for tau in partitions(n):
            for m in range(1, 4):
                want = brute.trace_isotypic_brute(lam, tau, m, n, SYMBOLIC, cap=TRACE_CAP)
                assert closed.trace_isotypic_closed(lam, tau, m, n) == want, (lam, tau, m)


# ---------------------------------------------------------------------------
# 4. three-variable catalog


def _h(m, xs):
    if m < 0:
        return 0
    return sum(
        (
            _prod(c)
            for c in itertools.combinations_with_replacement(xs, m)
        ),
        0,
    )


def _prod(xs):
    out = 1
    for x in xs:
        out = out * x
    return out


def _tally(counter, tau, value, quadratic, mult):
    # a quadratic with a double root (h_{m-2} = 0 at m = 1) is a repeated eigenvalue
    if quadratic is not None:
        root = cpoly_perfect_root(quadratic, 2)
        if root is None:
            counter[(tau, tuple(quadratic))] += mult
            return
        value, mult = -root[1], 2 * mult
    counter[(tau, value)] += mult


def _catalog_triples():
    for a in range(5):
        for b in range(a + 1):
            for c in range(b + 1):
                yield a, b, c


@pytest.mark.criterion(4)
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_catalog_symbolic_records(m):
    for a, b, c in _catalog_triples():
        lam = (a, b, c)
        entries = catalog.n3_catalog(lam, m)
        report = brute.spectrum_on_v_lambda(lam, m, 3, SYMBOLIC)
        got, want = Counter(), Counter()
        for r in report.records:
            _tally(got, r.tau, r.value, r.minpoly, r.multiplicity)
        for e in entries:
            _tally(want, e.tau, e.value, e.quadratic, e.multiplicity)
        assert got == want, lam
        if a == b == c:
            assert entries[0].value == 3 * a**m
        if len({a, b, c}) == 3:
            # the 4b pair is A ± (θ/2) h_{m-2} sqrt(D)
            ell = [a + 2 * THETA, b + THETA, SYMBOLIC.coerce(c)]
            hm2 = _h(m - 2, ell)
            center = sum((x**m for x in ell), 0) - THETA**2 * hm2 / 2
            disc = (
                4 * sum((x * x for x in ell), 0)
                - 4 * (ell[0] * ell[1] + ell[0] * ell[2] + ell[1] * ell[2])
                - 3 * THETA**2
            )
            (quad,) = [e.quadratic for e in entries if e.item == "4b"]
            assert -quad[1] == 2 * center
            assert quad[2] == center**2 - THETA**2 * hm2**2 * disc / 4


@pytest.mark.criterion(4)
@pytest.mark.parametrize("mode", SPECIAL, ids=str)
def test_catalog_specialized(mode):
    for lam in _catalog_triples():
        for m in range(1, 5):
            assert catalog.check_catalog(lam, m, mode) == []


# ---------------------------------------------------------------------------
# 5. two-block spectra


def _two_block_cases(n):
    for eta in range(1, n):
        for a in range(4):
            for b in range(a):
                yield eta, a, b


def _expected_two_block(n, eta, a, b, m, mode):
    lam = closed.two_block_partition(n, eta, a, b)
    want = Counter()
    for k in range(min(eta, n - eta) + 1):
        dim = chars.isotypic_dimension(lam, (n - k, k) if k else (n,), n)
        want[closed.eig_two_block(n, eta, a, b, m, k, mode)] += dim
    return lam, want


@pytest.mark.criterion(5)
@pytest.mark.parametrize("mode", [SYMBOLIC] + SPECIAL, ids=str)
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_two_block_multiset(n, mode):
    checked = 0
    for eta, a, b in _two_block_cases(n):
        lam = closed.two_block_partition(n, eta, a, b)
        if mode.is_symbolic and v_lambda_dimension(lam, n) > 10:
            continue
        for m in range(1, 4):
            lam, want = _expected_two_block(n, eta, a, b, m, mode)
            report = brute.spectrum_on_v_lambda(lam, m, n, mode)
            assert all(r.value is not None for r in report.records), (lam, m)
            got = Counter()
            for r in report.records:
                got[r.value] += r.multiplicity
            assert got == +want, (lam, m)
            checked += 1
    assert checked


# ---------------------------------------------------------------------------
# 6. characters


@pytest.mark.criterion(6)
@pytest.mark.parametrize("n", range(1, 8))
def test_mn_equals_one_cycle(n):
    for tau in partitions(n):
        for k in range(1, n + 1):
            assert chars.character(tau, (k,) + (1,) * (n - k)) == chars.character_one_cycle(tau, k)


def _compositions(n):
    for cut in itertools.product((0, 1), repeat=n - 1):
        parts, run = [], 1
        for c in cut:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def _subsets(p):
    for r in range(1, p + 1):
        yield from itertools.combinations(range(1, p + 1), r)


@pytest.mark.criterion(6)
@pytest.mark.parametrize("n", range(2, 7))
def test_averaged_hook_closed_form(n):
    for blocks in _compositions(n):
        for sub in _subsets(len(blocks)):
            spec = chars.AveragedCharacterSpec(blocks, sub)
            assert chars.averaged_character((n - 1, 1), spec) == chars.averaged_character_n11(spec)


def _poch(x, j):
    out = Fraction(1)
    for i in range(j):
        out *= x + i
    return out


def _hyp3f2(upper, lower, terms):
    """Terminating 3F2 at 1, summed directly from its definition."""
    total = Fraction(0)
    fact = 1
    for j in range(terms):
        if j:
            fact *= j
        num = _poch(upper[0], j) * _poch(upper[1], j) * _poch(upper[2], j)
        if num == 0:
            continue
        total += num / (_poch(lower[0], j) * _poch(lower[1], j) * fact)
    return total


@pytest.mark.criterion(6)
@pytest.mark.parametrize("n", range(2, 7))
def test_averaged_two_block_hypergeometric(n):
    for eta in range(1, n):
        spec = chars.AveragedCharacterSpec((n - eta, eta), (1, 2))
        for k in range(min(eta, n - eta) + 1):
            tau = (n - k, k) if k else (n,)
            got = chars.averaged_character(tau, spec)
            series = _hyp3f2((-k, k - n - 1, -1), (eta - n, -eta), n + 1)
            assert got == series == chars.spherical_p2(n, eta, k), (eta, k)
            for single in ((1,), (2,)):
                assert chars.averaged_character(tau, chars.AveragedCharacterSpec((n - eta, eta), single)) == 1


# ---------------------------------------------------------------------------
# 7. structural lemmas


@pytest.mark.criterion(7)
@pytest.mark.parametrize("mode", [SYMBOLIC] + SPECIAL, ids=str)
def test_triangularity(mode):
    for n in range(1, 5):
        for lam in all_lambdas(5 if n < 4 else 4, n):
            for gamma in v_lambda_basis(lam, n):
                f = MultiPoly.monomial(gamma, mode)
                for m in range(1, 4):
                    rest = ops.apply_P(m, f) - ops.t_power_sum(m, f)
                    for mu in rest.support_partitions():
                        assert mu != lam and dominance_leq(mu, lam), (gamma, m, mu)


@pytest.mark.criterion(7)
@pytest.mark.parametrize("mode", [SYMBOLIC] + SPECIAL, ids=str)
def test_selfadjoint(mode):
    for n in range(1, 4):
        for d in range(5):
            monos = [MultiPoly.monomial(g, mode) for g in monomials_of_degree(d, n)]
            for i in range(1, n + 1):
                for f, g in itertools.product(monos, repeat=2):
                    lhs = ops.dunkl_pairing(ops.apply_xD(i, f), g)
                    rhs = ops.dunkl_pairing(f, ops.apply_xD(i, g))
                    assert lhs == rhs, (i, f, g)


@pytest.mark.criterion(7)
@pytest.mark.parametrize("mode", [SYMBOLIC] + SPECIAL, ids=str)
def test_cms_restriction(mode):
    for n in range(1, 5):
        for lam in all_lambdas(5, n):
            f = monomial_symmetric(lam, n, mode)
            assert ops.apply_P(2, f) == ops.apply_cms(f), lam


def _eigenfunction_counts(n, max_size, mode):
    m_list = list(range(1, n + 1))
    for lam in all_lambdas(max_size, n):
        fns = eigenfunctions.joint_eigenbasis(lam, n, m_list, mode, cap=TRACE_CAP)
        counts = Counter(fn.tau for fn in fns)
        mult = mult_profile(lam, n)[1]
        for tau in partitions(n):
            dim = chars.isotypic_dimension(lam, tau, n)
            assert counts.get(tau, 0) == dim, (lam, tau)
            assert (dim > 0) == dominance_leq(mult, tau), (lam, tau)
        assert len(fns) == v_lambda_dimension(lam, n)
        for fn in fns:
            if not fn.resolved:
                continue
            scaled, _ = fn.poly.clear_denominators()
            for m, value in fn.eigenvalues.items():
                assert ops.apply_P(m, scaled) == scaled.scale(value), (lam, fn.tau, m)
            assert fn.poly.support_partitions() <= set(enumerate_dominated(lam, n))


@pytest.mark.criterion(7)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_eigenfunction_counts_symbolic(n):
    _eigenfunction_counts(n, 4, SYMBOLIC)


@pytest.mark.criterion(7)
@pytest.mark.parametrize("mode", SPECIAL, ids=str)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_eigenfunction_counts_specialized(n, mode):
    _eigenfunction_counts(n, 4, mode)


# ---------------------------------------------------------------------------
# 8. CLI contract

VERIFY = ["verify", "all", "--n", "3", "--maxdeg", "4", "--theta", "1"]


def _mutated_h_sum(sign=-1, shift=1, index=1):
    def h_sum(ell, m):
        total = 0
        for r in range(1, len(ell) + 1):
            total = total + (sign * THETA) ** (r - shift) * closed.h_subsets(r, m + index - r, ell)
        return total

    return h_sum


def _mutated_t_diagonal(extra_below=0, extra_degree=0, weight=1):
    def t_diagonal(gamma, k, theta):
        below = sum(1 for g in gamma if g < gamma[k]) + extra_below
        return gamma[k] + extra_degree + weight * theta * below

    return t_diagonal


def _mutated_apply_T(sign):
    def apply_T(i, f):
        theta = f.mode.theta
        k = i - 1
        out = f._like({})
        for gamma, c in f.terms.items():
            out = out + MultiPoly.monomial(gamma, f.mode, c * ops.t_diagonal(gamma, k, theta))
            for j, g in enumerate(gamma):
                if g > gamma[k]:
                    swapped = list(gamma)
                    swapped[j], swapped[k] = swapped[k], swapped[j]
                    out = out + MultiPoly.monomial(swapped, f.mode, sign * theta * c)
        return out

    return apply_T


def _mutated_average(offset=0, factor=1):
    original = chars.averaged_character

    def averaged(tau, spec):
        value = original(tau, spec)
        return value * factor + offset if len(spec.A) > 1 else value

    return averaged


MUTANTS = {
    "3.4 sign of θ": (closed, "_eig_h_sum", _mutated_h_sum(sign=1)),
    "3.4 power of θ": (closed, "_eig_h_sum", _mutated_h_sum(shift=0)),
    "3.4 degree index": (closed, "_eig_h_sum", _mutated_h_sum(index=2)),
    "4.1 count below": (ops, "t_diagonal", _mutated_t_diagonal(extra_below=1)),
    "4.1 degree term": (ops, "t_diagonal", _mutated_t_diagonal(extra_degree=1)),
    "4.1 θ weight": (ops, "t_diagonal", _mutated_t_diagonal(weight=2)),
    "4.1 swap sign": (ops, "apply_T", _mutated_apply_T(sign=1)),
    "5.2 offset": (chars, "averaged_character", _mutated_average(offset=1)),
    "5.2 scale": (chars, "averaged_character", _mutated_average(factor=2)),
}


@pytest.mark.criterion(8)
def test_verify_clean_exit_zero(capsys):
    assert cli.main(VERIFY) == 0
    assert capsys.readouterr().out.strip() == '{"violations":[]}'


@pytest.mark.criterion(8)
@pytest.mark.parametrize("name", sorted(MUTANTS))
def test_verify_mutant_exit_one(name, monkeypatch, capsys):
    module, attr, replacement = MUTANTS[name]
    monkeypatch.setattr(module, attr, replacement)
    assert cli.main(VERIFY) == 1
    assert '"violations":[]' not in capsys.readouterr().out
