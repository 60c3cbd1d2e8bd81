from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hpeig.exact import (
    SYMBOLIC,
    THETA,
    ExactMatrix,
    SingularSystemError,
    SymbolicCapError,
    ThetaMode,
    ThetaPoly,
    ThetaRational,
    charpoly,
    cpoly_eval,
    cpoly_mul,
    cpoly_perfect_root,
    cpoly_power,
    div,
    evaluate_at_theta,
    format_scalar,
    kernel_basis,
    parse_scalar,
    poly_gcd,
    rref,
    solve_unique,
    symbolic_cap,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.lists(st.integers(-4, 4), max_size=4).map(ThetaPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
rationals = st.builds(lambda n, d: ThetaRational(n, d), polys, nonzero_polys)


def _value(x, t):
    return evaluate_at_theta(x, t)


# ---------------------------------------------------------------------------
# Q(θ)


def test_reduction_cancels_common_factor():
    # (θ^2 - 1)/(θ - 1) = θ + 1
    x = ThetaRational(ThetaPoly([-1, 0, 1]), ThetaPoly([-1, 1]))
    assert x.is_polynomial
    assert x == THETA + 1
    assert format_scalar(x) == "θ + 1"


def test_denominator_is_monic():
    x = ThetaRational(ThetaPoly([2]), ThetaPoly([0, 4]))
    assert x.den.coeffs[-1] == 1
    assert format_scalar(x) == "(1/2)/(θ)"


@given(rationals, rationals, small)
@settings(max_examples=150, deadline=None)
def test_field_ops_commute_with_evaluation(a, b, t):
    # evaluation is a ring homomorphism wherever the denominators survive
    if any(x.den(t) == 0 for x in (a, b)):
        return
    va, vb = _value(a, t), _value(b, t)
    assert _value(a + b, t) == va + vb
    assert _value(a - b, t) == va - vb
    assert _value(a * b, t) == va * vb
    if b and vb and (a / b).den(t) != 0:
        assert _value(a / b, t) == Fraction(va) / vb


@given(rationals, rationals, rationals)
@settings(max_examples=80, deadline=None)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a:
        assert a * (1 / a) == 1


@given(rationals)
@settings(max_examples=150, deadline=None)
def test_text_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@pytest.mark.parametrize(
    "text",
    ["0", "-3/4", "θ", "2*θ + 4", "-θ^2 + 1/3", "(θ + 1)/(θ^2 - 2)", "(3)/(θ)"],
)
def test_parse_examples(text):
    assert format_scalar(parse_scalar(text)) == text


def test_integers_stay_integers():
    assert div(6, 3) == 2 and isinstance(div(6, 3), int)
    assert div(1, 2) == Fraction(1, 2)
    assert isinstance(ThetaMode.at(1).coerce(Fraction(4, 2)), int)


def test_float_rejected():
    with pytest.raises(TypeError):
        ThetaMode.at(1).coerce(0.5)


def test_specialize_symbolic_value():
    x = (THETA**2 + 1) / (THETA - 3)
    assert ThetaMode.at("1/2").coerce(x) == Fraction(5, 4) / Fraction(-5, 2)


def test_gcd():
    a = ThetaPoly([-1, 0, 1])  # (θ-1)(θ+1)
    b = ThetaPoly([1, 2, 1])  # (θ+1)^2
    g = poly_gcd(a, b)
    assert g.monic().coeffs == (1, 1)


def test_mode_parse():
    assert ThetaMode.parse("sym").is_symbolic
    assert ThetaMode.parse("θ").is_symbolic
    assert ThetaMode.parse("3/2").theta == Fraction(3, 2)
    assert str(ThetaMode.parse("2")) == "2"


# ---------------------------------------------------------------------------
# matrices


def _det(rows):
    """Leibniz expansion, the oracle for small determinants."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term
    return total


int_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(int_matrices)
@settings(max_examples=60, deadline=None)
def test_charpoly_matches_determinant(rows):
    n = len(rows)
    cp = ExactMatrix(rows, n).charpoly()
    assert cp[0] == 1 and len(cp) == n + 1
    for t in range(-2, 3):
        shifted = [[(t if i == j else 0) - rows[i][j] for j in range(n)] for i in range(n)]
        assert cpoly_eval(cp, t) == _det(shifted)


def test_charpoly_symbolic():
    m = ExactMatrix([[THETA, 1], [0, 2 * THETA]], 2)
    cp = m.charpoly()
    assert cp == [1, -3 * THETA, 2 * THETA**2]


def test_symbolic_cap(monkeypatch):
    monkeypatch.setenv("HP_SYMBOLIC_CAP", "2")
    assert symbolic_cap() == 2
    big = ExactMatrix.identity(3, SYMBOLIC.one, SYMBOLIC.zero)
    with pytest.raises(SymbolicCapError):
        charpoly(big)
    assert len(charpoly(big, cap=5)) == 4


def test_rref_and_kernel():
    m = ExactMatrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]], 3)
    red, piv = rref(m)
    assert piv == [0, 1]
    ker = kernel_basis(m)
    assert len(ker) == 1
    assert all(x == 0 for x in m.apply(ker[0]))


def test_solve_unique():
    a = ExactMatrix([[2, 1], [1, 3]], 2)
    assert solve_unique(a, [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    with pytest.raises(SingularSystemError):
        solve_unique(ExactMatrix([[1, 1], [1, 1]], 2), [1, 2])


def test_cpoly_helpers():
    lin = [1, -THETA]
    sq = cpoly_power(lin, 2)
    assert sq == cpoly_mul(lin, lin)
    assert cpoly_perfect_root(sq, 2) == lin
    assert cpoly_perfect_root([1, 0, 1], 2) is None
