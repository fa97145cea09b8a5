from fractions import Fraction

import pytest
from hypothesis import given

from corpus import natural_open_set, rational, rngs, separation_pair
from idensity import (
    HostNotSuitable,
    NATDENS,
    PointInClosedSet,
    RationalBorelSet,
    is_iac_at,
    psi,
    separating_function,
    urysohn,
)
from idensity.urysohn import superlevel

R = RationalBorelSet
F = Fraction


def test_psi():
    assert psi(0, 1) == 0
    assert psi(3, -1) == F(3, 4)
    assert psi(F(1, 2), F(1, 2)) == F(1, 2)
    with pytest.raises(ZeroDivisionError):
        psi(0, 0)


def test_bounded_host_values():
    u = urysohn(R.open(0, 4))
    assert [u(x) for x in (0, F(1, 2), 1, 2, 3, F(7, 2), 4, 5)] == [0, F(1, 2), 1, 1, 1, F(1, 2), 0, 0]
    assert u.truncation is None
    assert u.q_beta(2) == R.closed(F(1, 2), F(7, 2))
    assert u.q_beta(1) == R.closed(1, 3)
    assert u.q_beta(F(1, 2)).is_empty()


def test_unbounded_host_is_truncated():
    u = urysohn(~R.point(0))
    assert u.truncation == 1
    assert u(F(1, 2)) == F(1, 2)
    assert u(4) == F(1, 4)
    assert u.q_beta(4) == R.closed(-4, F(-1, 4)) | R.closed(F(1, 4), 4)
    assert u.q_beta(8).is_bounded()


def test_isolated_point_at_a_truncation_cut():
    # between the excluded points -5 and -3 the truncated value peaks at 1/4, at -4 only
    u = urysohn(~R.points([-5, -3]), truncation=1)
    Q = u.q_beta(4)
    assert Q.contains(-4)
    assert not Q.contains(F(-41, 10)) and not Q.contains(F(-39, 10))


def test_argument_checks():
    with pytest.raises(HostNotSuitable):
        urysohn(R.closed(0, 1))
    with pytest.raises(ValueError):
        urysohn(R.open(0, 1), r_max=0)
    with pytest.raises(PointInClosedSet):
        separating_function(R.closed(0, 1), F(1, 2))
    with pytest.raises(HostNotSuitable):
        separating_function(R.open(0, 1), 2)


def test_separating_function_example():
    sep = separating_function(R.closed(-1, 1), 3)
    assert sep(3) == 1
    assert sep(0) == sep(1) == 0
    assert 0 < sep(2) < 1
    rows = sep.sample([2])
    assert rows[0][3] == sep(2) == psi(rows[0][1], rows[0][2])


@given(rngs)
def test_piecewise_matches_closed_form(rng):
    u = urysohn(natural_open_set(rng), r_max=rng.choice((F(1, 2), 1, 2)))
    for x in u.piecewise.breakpoints() + [rational(rng) for _ in range(10)]:
        assert u.piecewise(x) == u(x)
        assert 0 <= u(x) <= 1
        assert (u(x) > 0) == u.host.contains(x)


@given(rngs)
def test_q_beta_is_a_nested_closed_family(rng):
    u = urysohn(natural_open_set(rng))
    betas = sorted({F(rng.randint(4, 32), 4) for _ in range(4)})
    qs = [u.q_beta(b) for b in betas]
    for b, Q in zip(betas, qs):
        assert Q.is_natural_closed()
        assert Q == superlevel(u.piecewise, 1 / b)
        assert Q.issubset(u.host)
        if u.host.is_bounded() or u.truncation is not None:
            assert Q.is_bounded()
    for a, b in zip(qs, qs[1:]):
        assert a.issubset(b.interior())


@given(rngs)
def test_q_beta_family_exhausts_the_host(rng):
    u = urysohn(natural_open_set(rng))
    for x in [rational(rng) for _ in range(10)]:
        if u.host.contains(x):
            assert u.q_beta(1 / u(x)).contains(x)


@given(rngs)
def test_inverse_rank_recovers_values(rng):
    u = urysohn(natural_open_set(rng))
    for x in [rational(rng) for _ in range(8)]:
        assert u.inverse_rank(x) == u(x)


@given(rngs)
def test_separating_function_properties(rng):
    Fc, p0 = separation_pair(rng)
    sep = separating_function(Fc, p0)
    probes = list(Fc.breakpoints) + [p0] + [rational(rng) for _ in range(10)]
    for x in probes:
        g = sep(x)
        assert 0 <= g <= 1
        assert (g == 0) == Fc.contains(x)
        assert (g == 1) == (x == p0)
        assert sep.piecewise(x) == g
        assert is_iac_at(sep.piecewise, x, NATDENS).holds
