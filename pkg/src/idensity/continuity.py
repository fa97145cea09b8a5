"""I-approximate continuity of piecewise functions and related constructions.

For a piecewise function the behaviour at a point ``p`` is decided by its
*germ*: the pieces whose closure contains ``p``, the value each piece's
expression takes at ``p``, and on which side of ``p`` each piece carries
positive measure.  ``f`` is I-approximately continuous at ``p`` exactly when
the pieces whose expression tends to ``f(p)`` carry full measure on both
sides of ``p``; their union, cut down to a small interval, is the witness.

``is_iac_global`` instead follows the level-set route: every strict
sub- and super-level set must be I-d open.  Both routes are kept so they can
be checked against each other.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .density import IntervalGenerator, density_class, i_density_along, is_i_d_open, s_set
from .errors import HostNotSuitable, InvariantViolation, PreconditionDensity, PreconditionError
from .indexsets import Ideal
from .piecewise import PiecewiseFunction, RationalFunction
from .sets import RationalBorelSet, as_rational

_IRR = 2


class IACVerdict(NamedTuple):
    holds: bool
    witness: Optional[RationalBorelSet]


@dataclass(frozen=True)
class _GermPiece:
    set: RationalBorelSet
    expr: RationalFunction
    value: Optional[Fraction]  # expression value at p; None at a pole
    left: bool  # carries positive measure just left of p
    right: bool


def _germ(f: PiecewiseFunction, p: Fraction) -> list[_GermPiece]:
    out = []
    for idx, lcls, rcls, _ in f.local_view(p):
        S, e = f.pieces[idx]
        value = e(p) if e.defined_at(p) else None
        out.append(_GermPiece(S, e, value, bool(lcls & _IRR), bool(rcls & _IRR)))
    return out


def _covers_both_sides(pieces: Sequence[_GermPiece]) -> bool:
    return any(g.left for g in pieces) and any(g.right for g in pieces)


def _local_radius(f: PiecewiseFunction, p: Fraction) -> Fraction:
    """Distance from ``p`` to the nearest other breakpoint (1 if there is none)."""
    bps = f.breakpoints()
    i = bisect.bisect_left(bps, p)
    near = [abs(bps[j] - p) for j in (i - 1, i, i + 1) if 0 <= j < len(bps) and bps[j] != p]
    return min(near) if near else Fraction(1)


def is_iac_at(f: PiecewiseFunction, p, I: Ideal) -> IACVerdict:
    """Whether ``f`` is I-approximately continuous at the rational ``p``."""
    p = as_rational(p)
    fp = f(p)
    good = [g for g in _germ(f, p) if g.value == fp]
    if not _covers_both_sides(good):
        return IACVerdict(False, None)
    r = _local_radius(f, p)
    window = RationalBorelSet.open(p - r, p + r)
    W = RationalBorelSet.empty()
    for g in good:
        W = W | (g.set & window)
    return IACVerdict(True, W)


def semicontinuity_at(f: PiecewiseFunction, p, I: Ideal) -> tuple[bool, bool]:
    """``(upper, lower)`` I-approximate semicontinuity at ``p``.

    Only thresholds just past ``f(p)`` matter; for affine ``f`` the strict
    level set at such a threshold is built exactly and classified, otherwise
    the germ decides.
    """
    p = as_rational(p)
    fp = f(p)
    germ = _germ(f, p)
    values = sorted({g.value for g in germ if g.value is not None})
    above = [v for v in values if v > fp]
    below = [v for v in values if v < fp]
    alpha_up = (fp + above[0]) / 2 if above else fp + 1
    alpha_down = (fp + below[-1]) / 2 if below else fp - 1
    if f.is_affine:
        sub, _ = level_sets(f, alpha_up)
        _, sup = level_sets(f, alpha_down)
        upper = density_class(sub, p).kind == "AllGeneratorsOne"
        lower = density_class(sup, p).kind == "AllGeneratorsOne"
        return upper, lower
    upper = _covers_both_sides([g for g in germ if g.value is not None and g.value <= fp])
    lower = _covers_both_sides([g for g in germ if g.value is not None and g.value >= fp])
    return upper, lower


# -- level sets --------------------------------------------------------------


def _affine_region(a: Fraction, b: Fraction, mu: Fraction, sense: int) -> RationalBorelSet:
    """``{x : sense * (a x + b - mu) < 0}``."""
    a, c = a * sense, (b - mu) * sense
    if a == 0:
        return RationalBorelSet.real_line() if c < 0 else RationalBorelSet.empty()
    root = -c / a
    if a > 0:
        return RationalBorelSet.interval("-inf", root)
    return RationalBorelSet.interval(root, "inf")


def level_sets(f: PiecewiseFunction, mu) -> tuple[RationalBorelSet, RationalBorelSet]:
    """``({f < mu}, {f > mu})`` for a piecewise-affine ``f``."""
    mu = as_rational(mu)
    if not f.is_affine:
        raise TypeError("level sets are implemented for piecewise-affine functions")
    below = RationalBorelSet.empty()
    above = RationalBorelSet.empty()
    for S, e in f.pieces:
        a, b = e.slope, e.intercept
        below = below | (S & _affine_region(a, b, mu, 1))
        above = above | (S & _affine_region(a, b, mu, -1))
    return below, above


def _crossings(f: PiecewiseFunction) -> list[tuple[Fraction, Fraction]]:
    """Points ``(x, value)`` where two distinct affine piece expressions agree."""
    exprs = sorted({(e.slope, e.intercept) for _, e in f.pieces})
    out = []
    for i in range(len(exprs)):
        for j in range(i + 1, len(exprs)):
            (a1, b1), (a2, b2) = exprs[i], exprs[j]
            if a1 != a2:
                x = (b2 - b1) / (a1 - a2)
                out.append((x, a1 * x + b1))
    return out


def critical_values(f: PiecewiseFunction) -> list[Fraction]:
    crit: set[Fraction] = set()
    bps = f.breakpoints()
    for _, e in f.pieces:
        if e.slope == 0:
            crit.add(e.intercept)
        for x in bps:
            crit.add(e(x))
    crit.update(v for _, v in _crossings(f))
    return sorted(crit)


def _representatives(points: Sequence[Fraction]) -> list[Fraction]:
    """The points themselves, a midpoint between neighbours, and one point beyond each end."""
    pts = sorted(set(points))
    if not pts:
        return [Fraction(0)]
    out = [pts[0] - 1]
    for a, b in zip(pts, pts[1:]):
        out.extend((a, (a + b) / 2))
    out.extend((pts[-1], pts[-1] + 1))
    return out


def is_iac_global(f: PiecewiseFunction, I: Ideal) -> bool:
    """Level-set route: every ``{f < mu}`` and ``{f > mu}`` is I-d open."""
    for mu in _representatives(critical_values(f)):
        below, above = level_sets(f, mu)
        if not (is_i_d_open(below, I) and is_i_d_open(above, I)):
            return False
    return True


def pointwise_test_points(f: PiecewiseFunction) -> list[Fraction]:
    """Rational points whose verdicts determine I-AC at every rational point."""
    pts = set(f.breakpoints())
    if f.is_affine:
        pts.update(x for x, _ in _crossings(f))
    return _representatives(sorted(pts))


def iac_failures(f: PiecewiseFunction, I: Ideal) -> list[Fraction]:
    """Test points at which ``f`` is not I-approximately continuous."""
    return [p for p in pointwise_test_points(f) if not is_iac_at(f, p, I).holds]


def is_iac_pointwise(f: PiecewiseFunction, I: Ideal) -> bool:
    return not iac_failures(f, I)


# -- integral averages -------------------------------------------------------


def baire_average(f: PiecewiseFunction, r, n: int) -> Fraction:
    """``n (G(r + 1/n) - G(r))`` with ``G`` an exact antiderivative of ``f``."""
    r = as_rational(r)
    return n * f.integral(r, r + Fraction(1, n))


def baire_constant(f: PiecewiseFunction, r) -> Optional[Fraction]:
    """A ``C`` with ``|baire_average(f, r, n) - f(r)| <= C / n`` for every ``n >= 1``.

    Returns ``None`` when the expression carrying measure just right of ``r``
    does not tend to ``f(r)`` (the averages then converge elsewhere).
    """
    r = as_rational(r)
    right = [g for g in _germ(f, r) if g.right]
    if len(right) != 1 or right[0].value != f(r) or not right[0].expr.is_affine:
        return None
    slope = right[0].expr.slope
    later = [b for b in f.breakpoints() if b > r]
    if not later:
        return abs(slope) / 2
    d = min(later[0] - r, Fraction(1))
    window = [r, r + 1] + [b for b in f.breakpoints() if r <= b <= r + 1]
    bound = max(abs(e(x)) for _, e in f.pieces for x in window)
    return max(abs(slope) / 2, 2 * bound / d)


# -- condition (J2) ----------------------------------------------------------


@dataclass(frozen=True)
class J2Result:
    s: tuple[Fraction, ...]
    k: tuple[int, ...]
    approximant: RationalBorelSet
    lower_density: Fraction
    bound: Fraction
    window_minima: tuple[Fraction, ...]

    @property
    def certified(self) -> bool:
        return self.lower_density >= self.bound


def _full_radius(G: RationalBorelSet, x0: Fraction) -> Fraction:
    """Largest ``eps <= 1`` such that ``(x0 - eps, x0 + eps)`` lies in ``G`` up to a null set."""
    return min((~G.essential_interior()).distance_to(x0), Fraction(1))


def j2_construct(
    G: Sequence[RationalBorelSet],
    x0,
    g: IntervalGenerator,
    I: Ideal,
    depth: Optional[int] = None,
    scan_limit: int = 100_000,
    window_samples: int = 40,
) -> J2Result:
    """Excise shrinking central intervals from a decreasing density-one family.

    With ``delta_n = 2^-n`` and admissible generator indices ``k_1 < k_2 < ...``
    chosen so that the generator intervals shrink and sit inside the part of
    ``G_n`` that is full near ``x0``, the radii are
    ``s_n = delta_n * m(J_{k_{n+1}})``.  The family is continued constantly past
    the supplied depth, which turns the infinite union into the exact set
    ``U_{n<=N} (G_n minus (x0 - s_n, x0 + s_n))  ∪  (G_N minus {x0})``.
    """
    x0 = as_rational(x0)
    G = list(G)
    N = depth if depth is not None else len(G)
    if N < 1 or N > len(G):
        raise PreconditionError("depth must be between 1 and the number of sets supplied")
    G = G[:N]
    for n, Gn in enumerate(G, start=1):
        if density_class(Gn, x0).kind != "AllGeneratorsOne":
            raise PreconditionDensity(f"G_{n} does not have density 1 at {x0}")
        if n > 1 and not Gn.issubset(G[n - 2]):
            raise PreconditionError(f"G_{n} is not contained in G_{n - 1}")
    S = s_set(g)
    radii = [_full_radius(Gn, x0) for Gn in G] + [_full_radius(G[-1], x0)]
    ks: list[int] = []
    k = 0
    prev_len: Optional[Fraction] = None
    for eps in radii:
        while True:
            k += 1
            if k > scan_limit:
                raise PreconditionError("generator has too few admissible shrinking intervals")
            if not S.contains(k):
                continue
            lo, hi = g.interval(k)
            length = hi - lo
            if prev_len is not None and length >= prev_len:
                continue
            if x0 - lo < eps and hi - x0 < eps:
                break
        ks.append(k)
        prev_len = length
    s = []
    for n in range(1, N + 1):
        lo, hi = g.interval(ks[n])
        s.append(Fraction(1, 2**n) * (hi - lo))
    A = G[-1] - RationalBorelSet.point(x0)
    for Gn, sn in zip(G, s):
        A = A | (Gn - RationalBorelSet.open(x0 - sn, x0 + sn))
    report = i_density_along(A, g, I)
    minima = []
    for n in range(N):
        window = [j for j in range(ks[n], ks[n + 1]) if S.contains(j)][:window_samples]
        vals = []
        for j in window:
            lo, hi = g.interval(j)
            vals.append(A.measure_between(lo, hi) / (hi - lo))
        minima.append(min(vals) if vals else Fraction(1))
    bound = 1 - 3 * Fraction(1, 2**N)
    return J2Result(tuple(s), tuple(ks), A, report.lower, bound, tuple(minima))


# -- Lusin-Menchoff interpolation ---------------------------------------------


def _extent(Z: RationalBorelSet) -> tuple[Fraction | float, Fraction | float]:
    cells = list(Z.cells())
    lo = -math.inf if cells[0][2] else None
    hi = math.inf if cells[-1][2] else None
    members = [b for b, m in Z.marks() if m] + [
        b for a, c, bits in cells if bits for b in (a, c) if not math.isinf(b)
    ]
    if lo is None:
        lo = min(members)
    if hi is None:
        hi = max(members)
    return lo, hi


def lusin_menchoff(H: RationalBorelSet, Z: RationalBorelSet, I: Ideal) -> RationalBorelSet:
    """A natural-closed ``P`` with ``Z ⊆ interior(P)`` and ``P ⊆ H``.

    Each component ``(u, v)`` of the natural interior of ``H`` that meets ``Z``
    contributes ``[min Z - (min Z - u)/2, max Z + (v - max Z)/2]`` (margin 1 on
    an unbounded side).
    """
    if not Z.is_natural_closed():
        raise PreconditionError("Z must be natural-closed")
    if not Z.issubset(H.essential_interior()) or not Z.issubset(H):
        raise PreconditionDensity("every point of Z must lie in H and be a density point of H")
    inner = H.interior()
    if not Z.issubset(inner):
        raise HostNotSuitable("H has no closed interval around some point of Z")
    P = RationalBorelSet.empty()
    # the components of a natural-open set are exactly its full cells
    for u, v, bits in inner.cells():
        if not bits:
            continue
        part = Z & RationalBorelSet.open(u, v)
        if part.is_empty():
            continue
        zlo, zhi = _extent(part)
        left = zlo - (zlo - u) / 2 if not math.isinf(u) else zlo - 1
        right = zhi + (v - zhi) / 2 if not math.isinf(v) else zhi + 1
        P = P | RationalBorelSet.interval(left, right, True, True)
    if not (Z.issubset(P.interior()) and P.issubset(H) and P.is_natural_closed()):
        raise InvariantViolation("interpolating set violates its postconditions")
    return P
