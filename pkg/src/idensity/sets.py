"""Exact finitely-representable subsets of the real line.

A set is stored as a canonical cell decomposition: sorted rational
breakpoints ``b_0 < ... < b_{k-1}``, a membership flag for each breakpoint,
and for each of the ``k + 1`` open cells between them a two-bit class
telling whether the rationals and/or the irrationals of that cell belong to
the set.  Boolean operations act bitwise on a merged decomposition, so every
operation is exact and the result is again canonical.

The public view (components plus added/removed points) is derived from the
cells on demand and is what gets serialized.
"""

from __future__ import annotations

import enum
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

Number = Union[Fraction, int, str]
Endpoint = Union[Fraction, float]  # float only for +/- inf

INF = math.inf

_RAT = 1
_IRR = 2


class ComponentClass(enum.IntEnum):
    """Which points of an interval belong to a component."""

    RATIONALS_ONLY = _RAT
    IRRATIONALS_ONLY = _IRR
    FULL = _RAT | _IRR

    @property
    def tag(self) -> str:
        return {1: "rationals_only", 2: "irrationals_only", 3: "full"}[self.value]

    @classmethod
    def from_tag(cls, tag: str) -> "ComponentClass":
        aliases = {
            "full": cls.FULL,
            "rationals_only": cls.RATIONALS_ONLY,
            "rationals": cls.RATIONALS_ONLY,
            "irrationals_only": cls.IRRATIONALS_ONLY,
            "irrationals": cls.IRRATIONALS_ONLY,
        }
        try:
            return aliases[tag]
        except KeyError:
            raise ValueError(f"unknown component class {tag!r}") from None


def as_rational(x: Number) -> Fraction:
    """Coerce ``x`` to an exact ``Fraction``; floats other than integers are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        if math.isfinite(x) and x == int(x):
            return Fraction(int(x))
        raise TypeError(f"refusing inexact float {x!r}; pass a Fraction or a 'p/q' string")
    raise TypeError(f"cannot interpret {x!r} as a rational")


def as_endpoint(x) -> Endpoint:
    if isinstance(x, float) and math.isinf(x):
        return x
    if isinstance(x, str) and x.strip() in ("inf", "+inf", "-inf"):
        return -INF if x.strip() == "-inf" else INF
    return as_rational(x)


@dataclass(frozen=True)
class Interval:
    lo: Endpoint
    hi: Endpoint
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"interval with lo > hi: {self.lo} > {self.hi}")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValueError("a degenerate interval must be closed at both ends")
        if math.isinf(self.lo) and self.lo_closed or math.isinf(self.hi) and self.hi_closed:
            raise ValueError("infinite endpoints are always open")

    @property
    def length(self) -> Endpoint:
        return self.hi - self.lo

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{_fmt(self.lo)}, {_fmt(self.hi)}{right}"


def _fmt(x: Endpoint) -> str:
    if isinstance(x, float):
        return "-inf" if x < 0 else "inf"
    return str(x)


class RationalBorelSet:
    """Immutable exact set; build with the classmethods and boolean operators."""

    __slots__ = ("_points", "_cells", "_marks", "__dict__")

    def __init__(self, points: Sequence[Fraction], cells: Sequence[int], marks: Sequence[bool]):
        if len(cells) != len(points) + 1 or len(marks) != len(points):
            raise ValueError("inconsistent cell decomposition")
        out_pts: list[Fraction] = []
        out_marks: list[bool] = []
        out_cells: list[int] = [cells[0]]
        for i, p in enumerate(points):
            right = cells[i + 1]
            if right == out_cells[-1] and bool(marks[i]) == bool(right & _RAT):
                continue
            out_pts.append(p)
            out_marks.append(bool(marks[i]))
            out_cells.append(right)
        self._points = tuple(out_pts)
        self._cells = tuple(out_cells)
        self._marks = tuple(out_marks)

    # -- construction ------------------------------------------------------

    @classmethod
    def empty(cls) -> "RationalBorelSet":
        return cls((), (0,), ())

    @classmethod
    def real_line(cls) -> "RationalBorelSet":
        return cls((), (_RAT | _IRR,), ())

    @classmethod
    def rationals(cls) -> "RationalBorelSet":
        return cls((), (_RAT,), ())

    @classmethod
    def irrationals(cls) -> "RationalBorelSet":
        return cls((), (_IRR,), ())

    @classmethod
    def point(cls, x: Number) -> "RationalBorelSet":
        return cls((as_rational(x),), (0, 0), (True,))

    @classmethod
    def points(cls, xs: Iterable[Number]) -> "RationalBorelSet":
        pts = sorted({as_rational(x) for x in xs})
        return cls(pts, (0,) * (len(pts) + 1), (True,) * len(pts))

    @classmethod
    def interval(
        cls,
        lo,
        hi,
        lo_closed: bool = False,
        hi_closed: bool = False,
        kind: ComponentClass = ComponentClass.FULL,
    ) -> "RationalBorelSet":
        """The interval between ``lo`` and ``hi`` restricted to ``kind``.

        Empty or reversed bounds give the empty set; infinite bounds are open.
        """
        lo, hi = as_endpoint(lo), as_endpoint(hi)
        lo_closed = lo_closed and not math.isinf(lo)
        hi_closed = hi_closed and not math.isinf(hi)
        if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
            return cls.empty()
        rat = bool(kind & _RAT)
        if lo == hi:
            return cls((lo,), (0, 0), (rat,))
        pts: list[Fraction] = []
        cells = [0]
        marks: list[bool] = []
        if not math.isinf(lo):
            pts.append(lo)
            marks.append(lo_closed and rat)
            cells.append(int(kind))
        else:
            cells[0] = int(kind)
        if not math.isinf(hi):
            pts.append(hi)
            marks.append(hi_closed and rat)
            cells.append(0)
        return cls(pts, cells, marks)

    @classmethod
    def closed(cls, lo, hi, kind: ComponentClass = ComponentClass.FULL) -> "RationalBorelSet":
        return cls.interval(lo, hi, True, True, kind)

    @classmethod
    def open(cls, lo, hi, kind: ComponentClass = ComponentClass.FULL) -> "RationalBorelSet":
        return cls.interval(lo, hi, False, False, kind)

    @classmethod
    def from_components(
        cls,
        components: Iterable[tuple[Interval, ComponentClass]],
        plus: Iterable[Number] = (),
        minus: Iterable[Number] = (),
    ) -> "RationalBorelSet":
        out = cls.empty()
        for iv, kind in components:
            out = out | cls.interval(iv.lo, iv.hi, iv.lo_closed, iv.hi_closed, kind)
        return (out | cls.points(plus)) - cls.points(minus)

    @classmethod
    def from_sorted_intervals(cls, items: Iterable[tuple]) -> "RationalBorelSet":
        """Union of full intervals ``(lo, hi, lo_closed, hi_closed)`` given in
        increasing order and pairwise disjoint (touching is allowed).

        ``lo == hi`` with both ends closed denotes a single point.  This avoids
        the repeated boolean unions of ``from_components`` for long lists.
        """
        pts: list[Fraction] = []
        cells = [0]
        marks: list[bool] = []
        full = int(ComponentClass.FULL)
        for lo, hi, lo_closed, hi_closed in items:
            lo, hi = as_endpoint(lo), as_endpoint(hi)
            if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
                continue
            if not math.isinf(lo):
                if pts and pts[-1] == lo:
                    marks[-1] = marks[-1] or lo_closed
                else:
                    if pts and lo < pts[-1]:
                        raise ValueError("intervals must be sorted and disjoint")
                    pts.append(lo)
                    marks.append(lo_closed)
                    cells.append(0)
            if lo == hi:
                marks[-1] = True
                continue
            cells[-1] = full
            if not math.isinf(hi):
                pts.append(hi)
                marks.append(hi_closed)
                cells.append(0)
        return cls(pts, cells, marks)

    # -- structure access --------------------------------------------------

    @property
    def breakpoints(self) -> tuple[Fraction, ...]:
        return self._points

    def cells(self) -> Iterator[tuple[Endpoint, Endpoint, int]]:
        """Yield ``(lo, hi, class_bits)`` for the open cells, left to right."""
        pts = self._points
        n = len(pts)
        for i, c in enumerate(self._cells):
            lo = pts[i - 1] if i > 0 else -INF
            hi = pts[i] if i < n else INF
            yield lo, hi, c

    def marks(self) -> Iterator[tuple[Fraction, bool]]:
        return zip(self._points, self._marks)

    def _locate(self, x: Fraction) -> tuple[int, bool]:
        """Index of the breakpoint equal to ``x`` or of the cell containing it."""
        i = bisect_left(self._points, x)
        on_point = i < len(self._points) and self._points[i] == x
        return i, on_point

    def _resample(self, pts: Sequence[Fraction]) -> tuple[list[int], list[bool]]:
        """Classes of cells and flags of points on a refinement ``pts`` of our breakpoints."""
        own = self._points
        lookup = dict(zip(own, self._marks))
        cells = []
        for i in range(len(pts) + 1):
            j = 0 if i == 0 else bisect_right(own, pts[i - 1])
            cells.append(self._cells[j])
        marks = []
        for p in pts:
            m = lookup.get(p)
            if m is None:
                m = bool(self._cells[bisect_left(own, p)] & _RAT)
            marks.append(m)
        return cells, marks

    def _combine(self, other: "RationalBorelSet", op) -> "RationalBorelSet":
        """Apply ``op`` to class bits on the common refinement (a linear merge)."""
        a, ca, ma = self._points, self._cells, self._marks
        b, cb, mb = other._points, other._cells, other._marks
        na, nb = len(a), len(b)
        i = j = 0
        pts: list[Fraction] = []
        marks: list[bool] = []
        cells = [op(ca[0], cb[0]) & 3]
        while i < na or j < nb:
            if j >= nb or (i < na and a[i] < b[j]):
                p, x, y = a[i], ma[i], cb[j] & _RAT
                i += 1
            elif i >= na or b[j] < a[i]:
                p, x, y = b[j], ca[i] & _RAT, mb[j]
                j += 1
            else:
                p, x, y = a[i], ma[i], mb[j]
                i += 1
                j += 1
            pts.append(p)
            marks.append(bool(op(int(x), int(y)) & 1))
            cells.append(op(ca[i], cb[j]) & 3)
        return RationalBorelSet(pts, cells, marks)

    # -- boolean algebra ---------------------------------------------------

    def __or__(self, other: "RationalBorelSet") -> "RationalBorelSet":
        return self._combine(other, lambda x, y: x | y)

    def __and__(self, other: "RationalBorelSet") -> "RationalBorelSet":
        return self._combine(other, lambda x, y: x & y)

    def __sub__(self, other: "RationalBorelSet") -> "RationalBorelSet":
        return self._combine(other, lambda x, y: x & ~y)

    def __xor__(self, other: "RationalBorelSet") -> "RationalBorelSet":
        return self._combine(other, lambda x, y: x ^ y)

    def __invert__(self) -> "RationalBorelSet":
        return RationalBorelSet(
            self._points, [3 - c for c in self._cells], [not m for m in self._marks]
        )

    def complement(self) -> "RationalBorelSet":
        return ~self

    def issubset(self, other: "RationalBorelSet") -> bool:
        return (self - other).is_empty()

    def is_empty(self) -> bool:
        return not self._points and self._cells[0] == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalBorelSet):
            return NotImplemented
        return (self._points, self._cells, self._marks) == (
            other._points,
            other._cells,
            other._marks,
        )

    def __hash__(self) -> int:
        return hash((self._points, self._cells, self._marks))

    # -- membership and measure --------------------------------------------

    def contains(self, x: Number) -> bool:
        if isinstance(x, float) and math.isinf(x):
            return False
        x = as_rational(x)
        i, on_point = self._locate(x)
        if on_point:
            return self._marks[i]
        return bool(self._cells[i] & _RAT)

    __contains__ = contains

    def is_bounded(self) -> bool:
        return self._cells[0] == 0 and self._cells[-1] == 0

    def measure(self) -> Endpoint:
        """Lebesgue measure; ``math.inf`` when an unbounded cell carries irrationals."""
        total = Fraction(0)
        for lo, hi, c in self.cells():
            if c & _IRR:
                if math.isinf(lo) or math.isinf(hi):
                    return INF
                total += hi - lo
        return total

    @cached_property
    def _prefix(self) -> tuple[Fraction, ...]:
        # _prefix[i] = m(S ∩ [b_0, b_i])
        out = [Fraction(0)]
        for i in range(1, len(self._points)):
            width = self._points[i] - self._points[i - 1]
            out.append(out[-1] + (width if self._cells[i] & _IRR else 0))
        return tuple(out)

    def cumulative(self, x: Endpoint) -> Endpoint:
        """Signed measure ``F(x)`` with ``F(b) - F(a) = m(S ∩ [a, b])``.

        The reference point is the first breakpoint (or 0 when there is none).
        """
        pts = self._points
        if not pts:
            rho = 1 if self._cells[0] & _IRR else 0
            if math.isinf(x):
                return x if rho else Fraction(0)
            return rho * x
        if math.isinf(x):
            c = self._cells[0] if x < 0 else self._cells[-1]
            if c & _IRR:
                return x
            return Fraction(0) if x < 0 else self._prefix[-1]
        i, _ = self._locate(x)
        if i == 0:
            return (x - pts[0]) if self._cells[0] & _IRR else Fraction(0)
        rho = 1 if self._cells[i] & _IRR else 0
        # on a breakpoint the left cell (index i) gives the same value
        return self._prefix[i - 1] + rho * (x - pts[i - 1])

    def measure_between(self, lo: Endpoint, hi: Endpoint) -> Endpoint:
        """``m(S ∩ [lo, hi])``."""
        if hi <= lo:
            return Fraction(0)
        return self.cumulative(hi) - self.cumulative(lo)

    def side_densities(self, p: Number) -> tuple[int, int]:
        """Measure indicators (0 or 1) of the cells immediately left and right of ``p``."""
        p = as_rational(p)
        i, on_point = self._locate(p)
        left = self._cells[i]
        right = self._cells[i + 1] if on_point else left
        return (1 if left & _IRR else 0, 1 if right & _IRR else 0)

    def side_classes(self, p: Number) -> tuple[int, int]:
        """Raw class bits of the cells left and right of ``p``."""
        p = as_rational(p)
        i, on_point = self._locate(p)
        left = self._cells[i]
        return left, (self._cells[i + 1] if on_point else left)

    def in_closure(self, p: Number) -> bool:
        """Whether ``p`` lies in the natural closure of the set."""
        left, right = self.side_classes(p)
        return bool(left or right) or self.contains(p)

    # -- topology ----------------------------------------------------------

    def essential_interior(self) -> "RationalBorelSet":
        """Points having a neighbourhood contained in the set up to a null set."""
        cells = [3 if c & _IRR else 0 for c in self._cells]
        marks = [
            bool(self._cells[i] & _IRR and self._cells[i + 1] & _IRR)
            for i in range(len(self._points))
        ]
        return RationalBorelSet(self._points, cells, marks)

    def interior(self) -> "RationalBorelSet":
        """Natural-topology interior."""
        cells = [3 if c == 3 else 0 for c in self._cells]
        marks = [
            bool(self._marks[i] and self._cells[i] == 3 and self._cells[i + 1] == 3)
            for i in range(len(self._points))
        ]
        return RationalBorelSet(self._points, cells, marks)

    def closure(self) -> "RationalBorelSet":
        """Natural-topology closure."""
        cells = [3 if c else 0 for c in self._cells]
        marks = [
            bool(self._marks[i] or self._cells[i] or self._cells[i + 1])
            for i in range(len(self._points))
        ]
        return RationalBorelSet(self._points, cells, marks)

    def is_natural_open(self) -> bool:
        return self.interior() == self

    def is_natural_closed(self) -> bool:
        return self.closure() == self

    def distance_to(self, x: Fraction) -> Endpoint:
        """Distance from ``x`` to the natural closure of the set (``inf`` if empty)."""
        cl = self.closure()
        if cl.contains(x):
            return Fraction(0)
        best: Endpoint = INF
        for lo, hi, c in cl.cells():
            if not c:
                continue
            if hi <= x:
                best = min(best, x - hi)
            elif lo >= x:
                best = min(best, lo - x)
        for b, m in cl.marks():
            if m:
                best = min(best, abs(x - b))
        return best

    # -- public component view ----------------------------------------------

    def components(self) -> tuple[list[tuple[Interval, ComponentClass]], list[Fraction], list[Fraction]]:
        """Return ``(components, plus_points, minus_points)``.

        Components are maximal runs of cells with one class.  A member
        breakpoint between runs is absorbed as a closed endpoint by an
        adjacent run that contains rationals, preferring a rationals-only
        run, then the left run; otherwise it is listed as a plus point.
        Member flags inside a run that disagree with the run's class become
        plus or minus points.
        """
        pts, cells, marks = self._points, self._cells, self._marks
        n = len(pts)
        claimed: dict[int, str] = {}  # breakpoint index -> "left" / "right" run
        plus: list[Fraction] = []
        minus: list[Fraction] = []
        for i in range(n):
            left, right = cells[i], cells[i + 1]
            if left == right:
                if left and marks[i] != bool(left & _RAT):
                    (plus if marks[i] else minus).append(pts[i])
                elif not left and marks[i]:
                    plus.append(pts[i])
                continue
            if not marks[i]:
                continue
            if left == _RAT:
                claimed[i] = "left"
            elif right == _RAT:
                claimed[i] = "right"
            elif left & _RAT:
                claimed[i] = "left"
            elif right & _RAT:
                claimed[i] = "right"
            else:
                plus.append(pts[i])
        comps: list[tuple[Interval, ComponentClass]] = []
        i = 0
        while i <= n:
            c = cells[i]
            j = i
            while j < n and cells[j + 1] == c:
                j += 1
            if c:
                lo = pts[i - 1] if i > 0 else -INF
                hi = pts[j] if j < n else INF
                lo_closed = i > 0 and claimed.get(i - 1) == "right"
                hi_closed = j < n and claimed.get(j) == "left"
                comps.append((Interval(lo, hi, lo_closed, hi_closed), ComponentClass(c)))
            i = j + 1
        return comps, sorted(plus), sorted(minus)

    def __repr__(self) -> str:
        if self.is_empty():
            return "RationalBorelSet(∅)"
        comps, plus, minus = self.components()
        parts = []
        for iv, kind in comps:
            tag = "" if kind is ComponentClass.FULL else ("∩ℚ" if kind is ComponentClass.RATIONALS_ONLY else "∖ℚ")
            parts.append(f"{iv}{tag}")
        if plus:
            parts.append("{" + ", ".join(map(str, plus)) + "}")
        text = " ∪ ".join(parts)
        if minus:
            text += " ∖ {" + ", ".join(map(str, minus)) + "}"
        return f"RationalBorelSet({text})"


def union(a: RationalBorelSet, b: RationalBorelSet) -> RationalBorelSet:
    return a | b


def intersect(a: RationalBorelSet, b: RationalBorelSet) -> RationalBorelSet:
    return a & b


def complement(a: RationalBorelSet) -> RationalBorelSet:
    return ~a


def diff(a: RationalBorelSet, b: RationalBorelSet) -> RationalBorelSet:
    return a - b


def symm_diff(a: RationalBorelSet, b: RationalBorelSet) -> RationalBorelSet:
    return a ^ b


def measure(s: RationalBorelSet) -> Endpoint:
    return s.measure()


def contains(s: RationalBorelSet, x: Number) -> bool:
    return s.contains(x)


def essential_interior(s: RationalBorelSet) -> RationalBorelSet:
    return s.essential_interior()
