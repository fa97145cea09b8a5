from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import IRR, RAT, named_functions, piecewise_affine, rational, rngs
from idensity import (
    FIN,
    NATDENS,
    HostNotSuitable,
    IntervalGenerator,
    PiecewiseFunction,
    PreconditionDensity,
    PreconditionError,
    RationalBorelSet,
    RationalFunction,
    baire_average,
    baire_constant,
    critical_values,
    density_class,
    is_i_d_open,
    is_iac_at,
    is_iac_global,
    is_iac_pointwise,
    j2_construct,
    level_sets,
    lusin_menchoff,
    semicontinuity_at,
)
from idensity.continuity import pointwise_test_points

R = RationalBorelSet
F = Fraction
NAMED = named_functions()


@pytest.mark.parametrize(
    "name, point, holds",
    [
        ("identity", F(1, 3), True),
        ("abs", 0, True),
        ("step", 0, False),
        ("step", F(1, 2), True),
        ("indicator_of_zero", 0, False),
        ("indicator_of_zero", 1, True),
        ("dirichlet", F(1, 2), False),
        ("dirichlet_window", F(1, 2), False),
        ("dirichlet_window", 2, True),
        ("dirichlet_window", 1, True),
    ],
)
def test_iac_examples(name, point, holds):
    for I in (FIN, NATDENS):
        assert is_iac_at(NAMED[name], point, I).holds is holds


def test_witness_has_density_one_and_contains_point():
    f = PiecewiseFunction(
        [
            (R.open("-inf", 0) | R.open(0, 1, kind=IRR) | R.open(1, "inf"), RationalFunction.const(0)),
            (R.point(0) | R.open(0, 1, kind=RAT) | R.point(1), RationalFunction.const(5)),
        ]
    )
    verdict = is_iac_at(f, F(1, 2), NATDENS)
    assert not verdict.holds
    verdict = is_iac_at(f, 2, NATDENS)
    assert verdict.holds
    W = verdict.witness
    assert W.contains(2) and density_class(W, 2).kind == "AllGeneratorsOne"
    assert all(f(x) == 0 for x in (F(3, 2), F(5, 2)) if W.contains(x))


def test_semicontinuity_examples():
    # step is lower semicontinuous at 0 (value 0, jumps up), not upper
    assert semicontinuity_at(NAMED["step"], 0, NATDENS) == (False, True)
    assert semicontinuity_at(NAMED["indicator_of_zero"], 0, NATDENS) == (True, False)
    assert semicontinuity_at(NAMED["abs"], 0, NATDENS) == (True, True)


def test_level_sets_and_critical_values():
    below, above = level_sets(NAMED["abs"], 1)
    assert below == R.open(-1, 1)
    assert above == R.open("-inf", -1) | R.open(1, "inf")
    assert critical_values(NAMED["step"]) == [0, 1]
    with pytest.raises(TypeError):
        level_sets(PiecewiseFunction([(R.real_line(), RationalFunction.identity() * RationalFunction.identity())]), 0)


def test_baire_average_examples():
    f = NAMED["identity"]
    assert baire_average(f, 0, 10) == F(1, 20)
    assert baire_constant(f, 0) == F(1, 2)
    assert baire_average(NAMED["step"], 0, 4) == 1
    assert baire_constant(NAMED["step"], 0) is None


def _shrinking_family(depth: int):
    holes = R.empty()
    out = []
    for n in range(1, depth + 1):
        holes = holes | R.point(F(1, 2 * n + 1))
        out.append(R.open(F(-1, n), F(1, n)) - holes)
    return out


def test_j2_construction_certifies():
    g = IntervalGenerator.symmetric(0, "1/(4n)")
    res = j2_construct(_shrinking_family(5), 0, g, NATDENS)
    assert res.certified
    assert res.lower_density == 1
    assert list(res.k) == sorted(res.k) and len(set(res.k)) == len(res.k)
    assert all(a > b for a, b in zip(res.s, res.s[1:]))
    assert not res.approximant.contains(0)
    assert all(m >= res.bound for m in res.window_minima)


def test_j2_rejects_bad_families():
    g = IntervalGenerator.symmetric(0, "1/(4n)")
    family = _shrinking_family(4) + [R.empty()]
    with pytest.raises(PreconditionDensity):
        j2_construct(family, 0, g, NATDENS)
    with pytest.raises(PreconditionError):
        j2_construct([R.open(-1, 1), R.open(-2, 2)], 0, g, NATDENS)
    with pytest.raises(PreconditionError):
        j2_construct(_shrinking_family(3), 0, g, NATDENS, depth=0)


def test_lusin_menchoff_examples():
    H = R.open(0, 4) | R.open(5, 9)
    Z = R.closed(1, 2) | R.point(7)
    P = lusin_menchoff(H, Z, NATDENS)
    assert P == R.closed(F(1, 2), 3) | R.closed(6, 8)
    with pytest.raises(HostNotSuitable):
        # 1 is a density point of H but the rationals of (1, 2) are missing
        lusin_menchoff(R.open(0, 4) - R.open(1, 2, kind=RAT), R.point(1), NATDENS)
    with pytest.raises(PreconditionDensity):
        lusin_menchoff(R.open(0, 1), R.point(2), NATDENS)
    with pytest.raises(PreconditionError):
        lusin_menchoff(R.open(0, 4), R.open(1, 2), NATDENS)


@given(rngs)
def test_two_routes_agree(rng):
    f = piecewise_affine(rng)
    for I in (FIN, NATDENS):
        assert is_iac_pointwise(f, I) == is_iac_global(f, I)


@given(rngs)
def test_iac_iff_both_semicontinuities(rng):
    f = piecewise_affine(rng)
    for p in pointwise_test_points(f)[:8]:
        assert is_iac_at(f, p, NATDENS).holds == (semicontinuity_at(f, p, NATDENS) == (True, True))


@given(rngs)
def test_witness_properties(rng):
    f = piecewise_affine(rng)
    for p in pointwise_test_points(f)[:8]:
        v = is_iac_at(f, p, NATDENS)
        if not v.holds:
            assert v.witness is None
            continue
        W = v.witness
        assert W.contains(p)
        assert density_class(W, p).kind == "AllGeneratorsOne"
        # f restricted to the witness is continuous at p: check on nearby witness points
        for k in (10, 100, 1000):
            for x in (p - F(1, k), p + F(1, k)):
                if W.contains(x):
                    assert abs(f(x) - f(p)) <= F(8, k)


@given(rngs)
def test_closure_under_algebra(rng):
    f, g = piecewise_affine(rng), piecewise_affine(rng)
    a, b = rational(rng), rational(rng)
    for p in sorted(set(f.breakpoints()) | set(g.breakpoints()) | {F(0)})[:6]:
        if is_iac_at(f, p, NATDENS).holds and is_iac_at(g, p, NATDENS).holds:
            assert is_iac_at(f + g, p, NATDENS).holds
            assert is_iac_at(f * g, p, NATDENS).holds
        if is_iac_at(f, p, NATDENS).holds:
            assert is_iac_at(f.post_compose_affine(a, b), p, NATDENS).holds


@given(rngs)
def test_level_sets_partition_the_line(rng):
    f = piecewise_affine(rng)
    mu = rational(rng)
    below, above = level_sets(f, mu)
    assert (below & above).is_empty()
    for x in f.breakpoints() + [mu, F(0)]:
        v = f(x)
        assert below.contains(x) == (v < mu)
        assert above.contains(x) == (v > mu)


@given(rngs)
def test_iac_functions_have_open_level_sets(rng):
    f = piecewise_affine(rng)
    if not is_iac_global(f, NATDENS):
        return
    for mu in critical_values(f)[:5]:
        below, above = level_sets(f, mu)
        assert is_i_d_open(below, NATDENS) and is_i_d_open(above, NATDENS)


@given(rngs)
def test_baire_bound_holds(rng):
    f = piecewise_affine(rng)
    for r in pointwise_test_points(f)[:6]:
        C = baire_constant(f, r)
        if C is None:
            continue
        for n in (1, 3, 17, 250):
            assert abs(baire_average(f, r, n) - f(r)) <= C / n


@settings(max_examples=25)
@given(rngs, st.integers(2, 6))
def test_j2_random_families(rng, depth):
    x0 = rational(rng)
    holes = [x0 + F(rng.randint(1, 7), 16 * n) for n in range(1, depth + 1)]
    family = []
    G = R.open(x0 - 2, x0 + 2)
    for n in range(1, depth + 1):
        G = G & R.open(x0 - F(2, n), x0 + F(2, n)) - R.point(holes[n - 1])
        family.append(G)
    g = IntervalGenerator.symmetric(x0, "(1/2)^(n+2)")
    res = j2_construct(family, x0, g, rng.choice((FIN, NATDENS)))
    assert res.certified
    assert res.approximant.issubset(family[0])
    assert not res.approximant.contains(x0)


@given(rngs)
def test_lusin_menchoff_postconditions(rng):
    a = rational(rng)
    b = a + rng.randint(1, 3)
    H = R.open(a - 1, b + 1) | R.open(b + 3, b + 5)
    Z = R.closed(a, b) | R.point(b + 4)
    P = lusin_menchoff(H, Z, NATDENS)
    assert Z.issubset(P.interior())
    assert P.issubset(H)
    assert P.is_natural_closed()
