"""Urysohn-type functions for natural-open hosts and point/closed-set separation.

For a host ``H`` whose complement is natural-closed, the function is

    g(x) = min(1, dist(x, H^c) / r_max) * min(1, R / |x|)     (x in H)

and 0 off ``H``.  The second factor is used only when ``H`` is unbounded so
that the superlevel sets ``Q_beta = {g >= 1/beta}`` stay bounded.  Because
``g`` is a product of clipped linear-fractional pieces it is an exact
``PiecewiseFunction`` with rational breakpoints, and every ``Q_beta`` is an
exact closed set; ``1 / inf{beta : x in Q_beta}`` recovers ``g``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import HostNotSuitable, PointInClosedSet
from .piecewise import PiecewiseFunction, RationalFunction
from .sets import RationalBorelSet, as_rational

ONE = RationalFunction.const(1)
ZERO = RationalFunction.const(0)


def psi(x1, x2) -> Fraction:
    """``|x1| / (|x1| + |x2|)``; undefined only at ``(0, 0)``."""
    x1, x2 = abs(as_rational(x1)), abs(as_rational(x2))
    if x1 + x2 == 0:
        raise ZeroDivisionError("psi is undefined at (0, 0)")
    return x1 / (x1 + x2)


def _open_components(H: RationalBorelSet) -> list[tuple]:
    """Maximal open intervals of a natural-open set (its full cells)."""
    return [(lo, hi) for lo, hi, bits in H.cells() if bits]


def _component_of(H: RationalBorelSet, x: Fraction) -> tuple:
    for lo, hi in _open_components(H):
        if lo < x < hi:
            return lo, hi
    raise ValueError(f"{x} is not inside an open component")


@dataclass(frozen=True)
class UrysohnFunction:
    """The clipped-distance function of a natural-open host, with its ``Q_beta`` family."""

    host: RationalBorelSet
    r_max: Fraction = Fraction(1)
    truncation: Optional[Fraction] = None  # R, set when the host is unbounded
    piecewise: PiecewiseFunction = field(init=False, repr=False, compare=False)
    _profile: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "piecewise", self._build())
        object.__setattr__(self, "_profile", level_profile(self.piecewise))

    def __call__(self, x) -> Fraction:
        """Closed-form evaluation, independent of the piecewise representation."""
        x = as_rational(x)
        if not self.host.contains(x):
            return Fraction(0)
        dist = (~self.host).distance_to(x)
        value = Fraction(1) if dist == math.inf else min(Fraction(1), dist / self.r_max)
        if self.truncation is not None and x != 0:
            value *= min(Fraction(1), self.truncation / abs(x))
        return value

    def q_beta(self, beta) -> RationalBorelSet:
        """``Q_beta = {x : g(x) >= 1/beta}``; empty for ``beta < 1``."""
        beta = as_rational(beta)
        if beta < 1:
            return RationalBorelSet.empty()
        return superlevel(self.piecewise, 1 / beta, self._profile)

    def inverse_rank(self, x) -> Fraction:
        """``1 / inf{beta : x in Q_beta}``, computed from the family (0 when never reached)."""
        value = self(x)
        if value == 0:
            return Fraction(0)
        beta = 1 / value
        assert self.q_beta(beta).contains(x)
        return 1 / beta

    def _build(self) -> PiecewiseFunction:
        H = self.host
        if H.is_empty():
            return PiecewiseFunction.constant(0)
        cuts: set[Fraction] = set(H.breakpoints)
        for lo, hi in _open_components(H):
            if not math.isinf(lo) and not math.isinf(hi):
                cuts.add((lo + hi) / 2)
            for edge, sign in ((lo, 1), (hi, -1)):
                if not math.isinf(edge):
                    inner = edge + sign * self.r_max
                    if lo < inner < hi:
                        cuts.add(inner)
        if self.truncation is not None:
            cuts.update((-self.truncation, Fraction(0), self.truncation))
        pts = sorted(cuts)
        pieces = []
        for i, b in enumerate(pts):
            pieces.append((RationalBorelSet.point(b), RationalFunction.const(self(b))))
        bounds = [-math.inf] + pts + [math.inf]
        for lo, hi in zip(bounds, bounds[1:]):
            if math.isinf(lo) and math.isinf(hi):
                sample = Fraction(0)
            elif math.isinf(lo):
                sample = hi - 1
            elif math.isinf(hi):
                sample = lo + 1
            else:
                sample = (lo + hi) / 2
            pieces.append((RationalBorelSet.open(lo, hi), self._expression(sample)))
        return PiecewiseFunction(pieces, validate=False)

    def _expression(self, x: Fraction) -> RationalFunction:
        """The rational expression of ``g`` on the open cell containing ``x``."""
        if not self.host.contains(x):
            return ZERO
        lo, hi = _component_of(self.host, x)
        X = RationalFunction.identity()
        if math.isinf(lo) and math.isinf(hi):
            first = ONE
        else:
            use_left = math.isinf(hi) or (not math.isinf(lo) and x - lo <= hi - x)
            dist = x - lo if use_left else hi - x
            if dist >= self.r_max:
                first = ONE
            elif use_left:
                first = (X - RationalFunction.const(lo)) * RationalFunction.const(1 / self.r_max)
            else:
                first = (RationalFunction.const(hi) - X) * RationalFunction.const(1 / self.r_max)
        if self.truncation is None or abs(x) <= self.truncation:
            return first
        sign = 1 if x > 0 else -1
        return first * (RationalFunction.const(sign * self.truncation) / X)


def level_profile(f: PiecewiseFunction) -> tuple:
    """Per-piece data for repeated superlevel queries.

    Points become ``(b, value)``; open cells become ``(lo, hi, at_lo, at_hi,
    n0, n1, d0, d1)`` with the one-sided limits and the linear-fractional
    coefficients.  Each piece must be a single full open interval or a point.
    """
    out = []
    for S, e in f.pieces:
        cells = [(lo, hi) for lo, hi, bits in S.cells() if bits]
        if not cells:
            (b,) = S.breakpoints
            out.append((b, e(b)))
            continue
        if len(cells) != 1 or any(S.contains(b) for b in S.breakpoints):
            raise TypeError("superlevel sets need pieces that are open intervals or points")
        if len(e.num) > 2 or len(e.den) > 2:
            raise TypeError("superlevel sets need linear-fractional pieces")
        lo, hi = cells[0]
        n0 = e.num[0] if e.num else Fraction(0)
        n1 = e.num[1] if len(e.num) > 1 else Fraction(0)
        d0 = e.den[0]
        d1 = e.den[1] if len(e.den) > 1 else Fraction(0)
        out.append((lo, hi, _limit_at(e, lo), _limit_at(e, hi), n0, n1, d0, d1))
    return tuple(out)


def superlevel(f: PiecewiseFunction, c: Fraction, profile: Optional[tuple] = None) -> RationalBorelSet:
    """``{x : f(x) >= c}`` for piecewise functions that are monotone on each open cell."""
    items = []
    for entry in profile if profile is not None else level_profile(f):
        if len(entry) == 2:
            b, value = entry
            if value >= c:
                items.append((b, b, True, True))
            continue
        lo, hi, at_lo, at_hi, n0, n1, d0, d1 = entry
        if at_lo >= c and at_hi >= c:
            items.append((lo, hi, False, False))
        elif at_lo >= c or at_hi >= c:
            # the expression is monotone, so num(x) = c den(x) has one root
            root = (c * d0 - n0) / (n1 - c * d1)
            items.append((root, hi, True, False) if at_hi >= c else (lo, root, False, True))
    items.sort(key=lambda t: (t[0], t[1]))
    return RationalBorelSet.from_sorted_intervals(items)


def _limit_at(e: RationalFunction, x) -> Fraction | float:
    if not math.isinf(x):
        return e(x)
    num, den = e.num, e.den
    if len(num) < len(den):
        return Fraction(0)
    if len(num) == len(den):
        return num[-1] / den[-1]
    lead = num[-1] / den[-1]
    odd = (len(num) - len(den)) % 2 == 1
    return math.inf if (lead > 0) != (odd and x < 0) else -math.inf


def urysohn(H: RationalBorelSet, r_max=1, truncation=1) -> UrysohnFunction:
    """Build the clipped-distance function of ``H`` (``H`` must be natural-open)."""
    if not H.is_natural_open():
        raise HostNotSuitable("the host must be natural-open (its complement natural-closed)")
    r_max = as_rational(r_max)
    if r_max <= 0:
        raise ValueError("r_max must be positive")
    R = None if H.is_bounded() else as_rational(truncation)
    return UrysohnFunction(H, r_max, R)


@dataclass(frozen=True)
class SeparatingFunction:
    """``g = psi(g1, g2)``: 0 on ``F``, 1 at ``p0``, values in ``[0, 1]``."""

    closed_set: RationalBorelSet
    point: Fraction
    g1: UrysohnFunction
    g2: UrysohnFunction
    piecewise: PiecewiseFunction = field(repr=False, compare=False)

    def __call__(self, x) -> Fraction:
        return psi(self.g1(x), self.g2(x))

    def sample(self, xs) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
        rows = []
        for x in xs:
            x = as_rational(x)
            a, b = self.g1(x), self.g2(x)
            rows.append((x, a, b, psi(a, b)))
        return rows


def separating_function(F: RationalBorelSet, p0, r_max=1, truncation=1) -> SeparatingFunction:
    p0 = as_rational(p0)
    if not F.is_natural_closed():
        raise HostNotSuitable("the set to separate from must be natural-closed")
    if F.contains(p0):
        raise PointInClosedSet(f"{p0} lies in the closed set")
    g1 = urysohn(~F, r_max, truncation)
    g2 = urysohn(~RationalBorelSet.point(p0), r_max, truncation)
    combined = g1.piecewise.combine(g2.piecewise, lambda a, b: a / (a + b))
    return SeparatingFunction(F, p0, g1, g2, combined)
