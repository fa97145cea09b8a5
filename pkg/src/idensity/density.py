"""I-density of representable sets along interval generators.

A generator about ``p`` assigns to every index ``n`` a closed interval
``J_n = [p - a_n, p + b_n]``, with ``a_n``, ``b_n`` given per index-set
pattern by formulas in ``n``.  The quotient ``m(J_n ∩ E) / m(J_n)`` is
computed symbolically: once ``J_n``'s endpoints have settled into fixed
cells of ``E``'s decomposition (an index we certify exactly), the measure
of ``J_n ∩ E`` is affine in ``a_n`` and ``b_n``, so the quotient on the tail
of each pattern is again a formula in ``n`` with a computable limit.  The
indices before that point are evaluated exactly one by one.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import PreconditionError, ZeroLengthInterval
from .formulas import Formula, as_formula
from .indexsets import (
    All,
    Empty,
    Finite,
    Ideal,
    IndexSet,
    Intersection,
    Tail,
    Union,
    finite_part_bound,
)
from .limits import DescribedSequence, ValueRule, i_liminf, i_limsup
from .sets import RationalBorelSet, as_rational

_IRR = 2


class PatternKind(enum.Enum):
    SHRINKING = "shrinking"
    EXPANDING = "expanding"
    CONSTANT = "constant"


@dataclass(frozen=True)
class RadiusRule:
    """Left and right radius formulas on one index-set pattern."""

    index_set: IndexSet
    left: Formula
    right: Formula

    @property
    def length(self) -> Formula:
        return self.left + self.right

    @property
    def kind(self) -> PatternKind:
        lim = self.length.limit()
        if lim == 0:
            return PatternKind.SHRINKING
        if lim == math.inf:
            return PatternKind.EXPANDING
        return PatternKind.CONSTANT

    @property
    def side_fraction(self) -> Optional[Fraction]:
        """``lim b_n / (a_n + b_n)``; ``None`` when the length is eventually zero."""
        if self.length.num.is_zero():
            return None
        lim = (self.right / self.length).limit()
        return lim if isinstance(lim, Fraction) else None


def _check_nonnegative(f: Formula, pattern: IndexSet, what: str) -> None:
    s, N = f.eventual_sign()
    if s < 0:
        if not pattern.is_finite():
            raise PreconditionError(f"{what} {f} is eventually negative")
        N = finite_part_bound(pattern)
    for n in pattern.members_up_to(N - 1):
        if f(n) < 0:
            raise PreconditionError(f"{what} {f} is negative at n={n}")


class IntervalGenerator:
    """Sequence of closed intervals ``[p - a_n, p + b_n]`` described by patterns."""

    def __init__(self, center, patterns: Iterable[RadiusRule]):
        self.center: Fraction = as_rational(center)
        self.patterns: tuple[RadiusRule, ...] = tuple(patterns)
        self._s_set: Optional[IndexSet] = None
        DescribedSequence(
            [(r.index_set, ValueRule.const(0)) for r in self.patterns], validate=True
        )
        for r in self.patterns:
            _check_nonnegative(r.left, r.index_set, "left radius")
            _check_nonnegative(r.right, r.index_set, "right radius")

    @classmethod
    def symmetric(cls, center, radius, index_set: IndexSet = All) -> "IntervalGenerator":
        f = as_formula(radius)
        return cls(center, [RadiusRule(index_set, f, f)])

    @classmethod
    def one_sided(cls, center, radius, side: int = 1) -> "IntervalGenerator":
        f = as_formula(radius)
        zero = Formula.const(0)
        left, right = (zero, f) if side > 0 else (f, zero)
        return cls(center, [RadiusRule(All, left, right)])

    @classmethod
    def from_radii(cls, center, pieces: Sequence[tuple[IndexSet, str, str]]) -> "IntervalGenerator":
        return cls(center, [RadiusRule(s, as_formula(a), as_formula(b)) for s, a, b in pieces])

    def rule_at(self, n: int) -> RadiusRule:
        for r in self.patterns:
            if r.index_set.contains(n):
                return r
        raise PreconditionError(f"index {n} is not covered by the generator")

    def interval(self, n: int) -> tuple[Fraction, Fraction]:
        r = self.rule_at(n)
        return self.center - r.left(n), self.center + r.right(n)

    def __repr__(self) -> str:
        inner = "; ".join(f"{r.index_set!r}: [{r.left}, {r.right}]" for r in self.patterns)
        return f"IntervalGenerator(center={self.center}, {inner})"


# -- the admissibility set ---------------------------------------------------


def _simplify_union(pieces: list[IndexSet]) -> IndexSet:
    pieces = [p for p in pieces if not (isinstance(p, Finite) and not p.elems)]
    if not pieces:
        return Empty
    if len(pieces) == 1:
        return pieces[0]
    return Union(pieces)


def _solve_on_pattern(f: Formula, pattern: IndexSet) -> IndexSet:
    """``{n in pattern : f(n) > 0}`` as an index-set expression."""
    s, N = f.eventual_sign()
    below = pattern.members_up_to(N - 1) if N > 1 else []
    hits = [n for n in below if f(n) > 0]
    if s > 0:
        if len(hits) == len(below):
            return pattern
        tail = Intersection((pattern, Tail(N)))
        return _simplify_union([tail, Finite(hits)])
    return Finite(hits)


def s_set(g: IntervalGenerator) -> IndexSet:
    """``{n : 0 < m(J_n) < 1/n}``."""
    if g._s_set is not None:
        return g._s_set
    pieces = []
    for r in g.patterns:
        length = r.length
        small = _solve_on_pattern(Formula.const(1) - Formula.n() * length, r.index_set)
        if length.eventual_sign()[0] == 0:
            continue
        positive = _solve_on_pattern(length, r.index_set)
        if positive is r.index_set:
            pieces.append(small)
        else:
            pieces.append(Intersection((small, positive)))
    g._s_set = _simplify_union(pieces)
    return g._s_set


def is_admissible(g: IntervalGenerator, I: Ideal) -> bool:
    return I.filter_contains(s_set(g))


# -- quotient sequence -------------------------------------------------------


def _cell_reference(E: RationalBorelSet, cell: int) -> tuple[int, Fraction]:
    """``(rho, K)`` with ``F(x) = K + rho x`` on the given cell of ``E``."""
    pts = E.breakpoints
    rho = 1 if E._cells[cell] & _IRR else 0
    if cell == 0:
        ref = pts[0] if pts else Fraction(0)
    else:
        ref = pts[cell - 1]
    return rho, E.cumulative(ref) - rho * ref


def _side_regime(E: RationalBorelSet, p: Fraction, radius: Formula, side: int) -> tuple[int, int, Fraction]:
    """``(N, rho, K)`` such that ``F(p + side r_n) = K + rho (p + side r_n)`` for ``n >= N``."""
    pts = E.breakpoints
    lim = radius.limit()
    if lim == math.inf:
        if side < 0:
            cell = 0
            need = radius - Formula.const(p - pts[0]) if pts else None
        else:
            cell = len(pts)
            need = radius - Formula.const(pts[-1] - p) if pts else None
        N = 1
        if need is not None:
            s, N = need.eventual_sign()
            assert s > 0
        rho, K = _cell_reference(E, cell)
        return N, rho, K
    x_inf = p + side * lim
    d = radius - Formula.const(lim)
    s, N = d.eventual_sign()
    if s == 0:
        return N, 0, E.cumulative(x_inf)
    direction = side * s
    i, on_point = E._locate(x_inf)
    if on_point:
        cell = i + 1 if direction > 0 else i
        j = i + 1 if direction > 0 else i - 1
    else:
        cell = i
        j = i if direction > 0 else i - 1
    if 0 <= j < len(pts):
        gap = abs(pts[j] - x_inf)
        s2, N2 = (Formula.const(gap) - d * s).eventual_sign()
        assert s2 > 0
        N = max(N, N2)
    rho, K = _cell_reference(E, cell)
    return N, rho, K


def exact_quotient(E: RationalBorelSet, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """``(m(J), m(J ∩ E))`` for ``J = [lo, hi]``."""
    return hi - lo, E.measure_between(lo, hi)


def quotient_sequence(
    E: RationalBorelSet, g: IntervalGenerator, I: Optional[Ideal] = None
) -> DescribedSequence:
    """The sequence ``x_n = m(J_n ∩ E) / m(J_n)`` as exact patterns.

    Indices where ``J_n`` has zero length get the placeholder value 0; this is
    allowed only on patterns that lie in the ideal (finitely many such indices
    always do).  ``I`` defaults to the finite-set ideal.
    """
    p = g.center
    out: list[tuple[IndexSet, ValueRule]] = []
    for r in g.patterns:
        P = r.index_set
        length = r.length
        ls, lN = length.eventual_sign()
        if ls == 0:
            ideal = I if I is not None else Ideal("fin")
            if not ideal.contains(P):
                raise ZeroLengthInterval(f"intervals on pattern {P!r} have zero length")
            out.append((P, ValueRule.const(0)))
            continue
        NL, rhoL, KL = _side_regime(E, p, r.left, -1)
        NR, rhoR, KR = _side_regime(E, p, r.right, 1)
        N = max(NL, NR, lN)
        C = KR + rhoR * p - KL - rhoL * p
        tail_formula = (Formula.const(C) + r.left * rhoL + r.right * rhoR) / length
        tail_rule = ValueRule.of(tail_formula)
        groups: dict[Fraction, list[int]] = {}
        matched: list[int] = []
        below = P.members_up_to(N - 1) if N > 1 else []
        for n in below:
            a, b = r.left(n), r.right(n)
            if a + b == 0:
                groups.setdefault(Fraction(0), []).append(n)
                continue
            v = E.measure_between(p - a, p + b) / (a + b)
            if tail_formula.den(n) != 0 and tail_formula(n) == v:
                matched.append(n)
            else:
                groups.setdefault(v, []).append(n)
        if len(matched) == len(below):
            tail_set: IndexSet = P
        else:
            tail = Intersection((P, Tail(N))) if N > 1 else P
            tail_set = _simplify_union([tail, Finite(matched)]) if matched else tail
        if not tail_set.is_empty():
            if tail_rule.is_constant and tail_rule.limit in groups:
                extra = groups.pop(tail_rule.limit)
                tail_set = _simplify_union([tail_set, Finite(extra)])
            out.append((tail_set, tail_rule))
        for v in sorted(groups):
            out.append((Finite(groups[v]), ValueRule.const(v)))
    return DescribedSequence(out, validate=False)


# -- density reports ---------------------------------------------------------


@dataclass(frozen=True)
class QuotientRow:
    n: int
    m_J: Fraction
    m_JE: Fraction

    @property
    def quotient(self) -> Fraction:
        return self.m_JE / self.m_J if self.m_J else Fraction(0)


@dataclass(frozen=True)
class DensityReport:
    lower: Fraction
    upper: Fraction
    two_sided: Optional[Fraction]
    admissible: bool
    s_set: IndexSet
    quotient_table: tuple[QuotientRow, ...] = field(default=())

    def __post_init__(self):
        if self.lower > self.upper:
            raise AssertionError("lower density exceeds upper density")
        if (self.two_sided is not None) != (self.lower == self.upper):
            raise AssertionError("two-sided value must be present exactly when lower == upper")


def quotient_table(E: RationalBorelSet, g: IntervalGenerator, rows: int) -> tuple[QuotientRow, ...]:
    out = []
    for n in range(1, rows + 1):
        lo, hi = g.interval(n)
        out.append(QuotientRow(n, hi - lo, E.measure_between(lo, hi)))
    return tuple(out)


def i_density_along(
    E: RationalBorelSet, g: IntervalGenerator, I: Ideal, table_rows: int = 0
) -> DensityReport:
    seq = quotient_sequence(E, g, I)
    lower, upper = i_liminf(seq, I), i_limsup(seq, I)
    S = s_set(g)
    return DensityReport(
        lower=lower,
        upper=upper,
        two_sided=lower if lower == upper else None,
        admissible=I.filter_contains(S),
        s_set=S,
        quotient_table=quotient_table(E, g, table_rows) if table_rows else (),
    )


# -- all-generator classification and the topology ---------------------------


@dataclass(frozen=True)
class DensityClass:
    """Side indicators of ``E`` at a point; determines every generator's density."""

    left: int
    right: int

    @property
    def kind(self) -> str:
        if self.left and self.right:
            return "AllGeneratorsOne"
        if not self.left and not self.right:
            return "AllGeneratorsZero"
        return "GeneratorDependent"

    def along(self, side_fraction: Fraction) -> Fraction:
        """Density along a shrinking generator whose right share tends to ``side_fraction``."""
        return self.left * (1 - side_fraction) + self.right * side_fraction

    def __str__(self) -> str:
        if self.kind == "GeneratorDependent":
            return f"GeneratorDependent(left={self.left}, right={self.right})"
        return self.kind


def density_class(E: RationalBorelSet, p) -> DensityClass:
    left, right = E.side_densities(p)
    return DensityClass(left, right)


def theta(E: RationalBorelSet, I: Ideal) -> RationalBorelSet:
    """Points where ``E`` has I-density 1 along every admissible generator."""
    return E.essential_interior()


def is_i_d_open(E: RationalBorelSet, I: Ideal) -> bool:
    return E.issubset(E.essential_interior())


def is_i_d_closed(E: RationalBorelSet, I: Ideal) -> bool:
    return is_i_d_open(~E, I)


def is_i_d_limit_point(E: RationalBorelSet, x, I: Ideal) -> bool:
    """Some admissible generator gives ``x`` positive upper density in ``E``."""
    left, right = E.side_densities(x)
    return bool(left or right)


def open_violations(E: RationalBorelSet) -> RationalBorelSet:
    """Members of ``E`` at which ``E`` fails to have density 1 (empty iff open)."""
    return E - E.essential_interior()
