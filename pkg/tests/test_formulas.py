import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from idensity import FormulaError, parse_formula
from idensity.formulas import as_formula, iter_values, threshold_positive

F = Fraction


@pytest.mark.parametrize(
    "text, n, value",
    [
        ("1/(2n+1)", 3, F(1, 7)),
        ("n", 5, F(5)),
        ("1/2^(n+1)", 2, F(1, 8)),
        ("(1/2)^(n+1)", 2, F(1, 8)),
        ("3/n^2 + 1", 3, F(4, 3)),
        ("2n(n+1)", 2, F(12)),
        ("-n + 4", 1, F(3)),
    ],
)
def test_parse_and_evaluate(text, n, value):
    assert parse_formula(text)(n) == value


@pytest.mark.parametrize(
    "text, limit",
    [
        ("1/(2n+1)", 0),
        ("(3n+1)/(2n-7)", F(3, 2)),
        ("n", math.inf),
        ("-n^2 + n", -math.inf),
        ("1 + (1/2)^n", 1),
        ("2^n/(2^n + n)", 1),
        ("7", 7),
    ],
)
def test_limits(text, limit):
    assert parse_formula(text).limit() == limit


@pytest.mark.parametrize("text", ["", "n +", "x + 1", "1/0", "n^(1/2)", "import os"])
def test_rejects_malformed(text):
    with pytest.raises(FormulaError):
        parse_formula(text)


def test_undefined_value_raises():
    f = parse_formula("1/(n-3)")
    with pytest.raises(FormulaError):
        f(3)


def test_threshold_and_monotonicity():
    assert threshold_positive(parse_formula("n - 10")) == 11
    assert parse_formula("1/n").is_eventually_monotone_convergent()
    assert parse_formula("1 + (1/2)^n").is_eventually_monotone_convergent()


def test_shift():
    f = parse_formula("1/(2n+1)")
    assert f.shift(2).equals(parse_formula("1/(2n+5)"))


def test_float_evaluation_handles_huge_terms():
    f = parse_formula("2^n/(2^n + 1)")
    vals = f.evaluate_float(np.array([1, 10, 2000]))
    assert np.all(np.isfinite(vals))
    assert vals[-1] == pytest.approx(1.0)


_coef = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def formulas(draw):
    a, b, c = draw(_coef), draw(_coef), draw(_coef)
    k = draw(st.integers(1, 4))
    shape = draw(st.integers(0, 2))
    text = [
        f"({a}) + ({b})/(n+{k})",
        f"({a})*n + ({b})",
        f"({a}) + ({c})*(1/2)^n",
    ][shape]
    return text


@given(formulas(), formulas(), st.integers(1, 60))
def test_algebra_is_pointwise(s1, s2, n):
    f, g = parse_formula(s1), parse_formula(s2)
    assert (f + g)(n) == f(n) + g(n)
    assert (f - g)(n) == f(n) - g(n)
    assert (f * g)(n) == f(n) * g(n)
    if g(n) != 0 and not g.num.is_zero():
        assert (f / g)(n) == f(n) / g(n)


@given(formulas())
def test_limit_matches_tail_values(text):
    f = parse_formula(text)
    lim = f.limit()
    tail = iter_values(f, [2000, 4000])
    if isinstance(lim, float):
        assert abs(tail[1]) > abs(tail[0]) or tail[1] == tail[0]
    else:
        assert abs(tail[1] - lim) <= abs(tail[0] - lim) + F(1, 10**6)
        assert abs(tail[1] - lim) < F(1, 100)


@given(formulas(), st.integers(1, 30))
def test_as_formula_is_idempotent(text, n):
    f = parse_formula(text)
    assert as_formula(f) is f
    assert as_formula(str(f))(n) == f(n)
