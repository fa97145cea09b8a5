"""Ideal limit superior / inferior of pattern-described sequences.

A ``DescribedSequence`` partitions the naturals into index-set patterns and
attaches to each a value rule with a classical limit.  For a bounded
sequence of this shape the threshold sets defining I-limsup and I-liminf
reduce to pattern limits:

* if ``b`` is below the limit ``L`` of a pattern ``P`` outside the ideal,
  then ``{k : x_k > b}`` contains a cofinite part of ``P`` and so is not in
  the ideal;
* if ``b`` is above every such limit, ``{k : x_k > b}`` is contained in the
  union of the ideal patterns plus finitely many indices, so it is in the
  ideal.

Hence the I-limsup is the largest limit among non-ideal patterns and the
I-liminf the smallest.  ``horizon_oracle_limsup`` recomputes the same values
by brute force over a finite horizon without using this argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

import numpy as np

from .errors import FormulaError, InvalidPartition
from .formulas import Formula, as_formula
from .indexsets import All, Complement, IndexSet, Intersection, Union as IUnion
from .indexsets import Ideal

Rational = Fraction


@dataclass(frozen=True)
class ValueRule:
    """A per-pattern value: a constant, or a formula in ``n`` with a finite limit."""

    formula: Formula
    limit: Fraction

    def __post_init__(self):
        lim = self.formula.limit()
        if isinstance(lim, float):
            raise FormulaError(f"formula {self.formula} diverges; a finite limit is required")
        if lim != self.limit:
            raise FormulaError(
                f"declared limit {self.limit} does not match the limit {lim} of {self.formula}"
            )

    @classmethod
    def const(cls, v) -> "ValueRule":
        v = Fraction(v)
        return cls(Formula.const(v), v)

    @classmethod
    def of(cls, formula: Union[str, Formula], limit=None) -> "ValueRule":
        f = as_formula(formula)
        lim = f.limit()
        if isinstance(lim, float):
            raise FormulaError(f"formula {f} diverges; a finite limit is required")
        if limit is not None and Fraction(limit) != lim:
            raise FormulaError(f"declared limit {limit} does not match the limit {lim} of {f}")
        return cls(f, lim)

    @property
    def is_constant(self) -> bool:
        return self.formula.is_constant()

    def __call__(self, n: int) -> Fraction:
        return self.formula(n)

    def __add__(self, other: "ValueRule") -> "ValueRule":
        return ValueRule(self.formula + other.formula, self.limit + other.limit)

    def __neg__(self) -> "ValueRule":
        return ValueRule(-self.formula, -self.limit)

    def shifted(self, c: Fraction) -> "ValueRule":
        return ValueRule(self.formula + Formula.const(c), self.limit + c)


Pattern = tuple[IndexSet, ValueRule]


class DescribedSequence:
    """Finite partition of the naturals into patterns carrying value rules."""

    def __init__(self, patterns: Iterable[Pattern], validate: bool = True, scan: int = 10_000):
        self.patterns: tuple[Pattern, ...] = tuple(patterns)
        if validate:
            self.validate(scan)

    def validate(self, scan: int = 10_000) -> None:
        sets = [p for p, _ in self.patterns]
        if not sets:
            raise InvalidPartition("a sequence needs at least one pattern")
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                if not Intersection((sets[i], sets[j])).is_empty():
                    raise InvalidPartition(f"patterns {i} and {j} overlap")
        if not Complement(IUnion(sets)).is_empty():
            raise InvalidPartition("patterns do not cover every natural number")
        if scan:
            counts = np.zeros(scan + 1, dtype=int)
            for s in sets:
                counts += s.mask(scan)
            if np.any(counts[1:] != 1):
                k = int(np.nonzero(counts[1:] != 1)[0][0]) + 1
                raise InvalidPartition(f"index {k} is covered {counts[k]} times")

    def rule_at(self, n: int) -> ValueRule:
        for s, rule in self.patterns:
            if s.contains(n):
                return rule
        raise InvalidPartition(f"index {n} is not covered")

    def __call__(self, n: int) -> Fraction:
        return self.rule_at(n)(n)

    def values_float(self, N: int) -> np.ndarray:
        """``x_1 .. x_N`` as floats (entry 0 unused)."""
        out = np.full(N + 1, np.nan)
        for s, rule in self.patterns:
            m = s.mask(N)
            idx = np.nonzero(m)[0]
            if len(idx):
                out[idx] = rule.formula.evaluate_float(idx)
        return out

    # pointwise algebra via partition refinement
    def __add__(self, other: "DescribedSequence") -> "DescribedSequence":
        pats = []
        for s1, r1 in self.patterns:
            for s2, r2 in other.patterns:
                both = Intersection((s1, s2))
                if not both.is_empty():
                    pats.append((both, r1 + r2))
        return DescribedSequence(pats, validate=False)

    def __neg__(self) -> "DescribedSequence":
        return DescribedSequence([(s, -r) for s, r in self.patterns], validate=False)

    def shifted(self, c) -> "DescribedSequence":
        c = Fraction(c)
        return DescribedSequence([(s, r.shifted(c)) for s, r in self.patterns], validate=False)

    @classmethod
    def constant(cls, v) -> "DescribedSequence":
        return cls([(All, ValueRule.const(v))], validate=False)

    def __repr__(self) -> str:
        inner = "; ".join(f"{s!r} -> {r.formula}" for s, r in self.patterns)
        return f"DescribedSequence({inner})"


def pattern_limit_set(x: DescribedSequence, I: Ideal) -> list[Fraction]:
    """Sorted distinct limits of the patterns that are not in the ideal."""
    lims = {rule.limit for s, rule in x.patterns if not I.contains(s)}
    if not lims:
        raise InvalidPartition("every pattern lies in the ideal, so the patterns cannot cover ℕ")
    return sorted(lims)


def i_limsup(x: DescribedSequence, I: Ideal) -> Fraction:
    return pattern_limit_set(x, I)[-1]


def i_liminf(x: DescribedSequence, I: Ideal) -> Fraction:
    return pattern_limit_set(x, I)[0]


def i_limit(x: DescribedSequence, I: Ideal) -> Optional[Fraction]:
    """Common value of liminf and limsup, or ``None`` when the I-limit does not exist."""
    lims = pattern_limit_set(x, I)
    return lims[0] if len(lims) == 1 else None


# -- brute-force oracle ------------------------------------------------------


def horizon_oracle_limsup(
    x: DescribedSequence,
    I: Ideal,
    N: int = 100_000,
    delta: float = 1e-2,
    step: Fraction = Fraction(1, 1000),
) -> Fraction:
    """Brute-force estimate of the I-limsup from ``x_1 .. x_N``.

    A grid threshold ``b`` is accepted into ``B_x`` when the exceedance set
    ``{k : x_k > b}`` looks non-ideal: for ``natdens`` its share of the horizon
    is at least ``delta``; for ``fin`` it has at least ``log N`` members among
    the indices past ``sqrt(N)`` (the burn-in stands in for "infinitely many").
    Returns the first rejected grid point, which is the sup of the accepted
    thresholds up to one grid step.
    """
    if N < 1000:
        raise ValueError("the horizon oracle needs N >= 1000")
    vals = x.values_float(N)[1:]
    if I.kind == "fin":
        vals = vals[math.isqrt(N):]
    srt = np.sort(vals)
    lo = math.floor(srt[0]) - 1
    hi = math.ceil(srt[-1]) + 1
    step = Fraction(step)
    count = int((hi - lo) / step) + 1
    grid = (np.arange(count) * step.numerator + lo * step.denominator) / step.denominator
    # number of entries strictly greater than each grid value
    exceed = len(srt) - np.searchsorted(srt, grid, side="right")
    if I.kind == "natdens":
        accepted = exceed / N >= delta
    else:
        accepted = exceed >= math.log(N)
    rejected = np.nonzero(~accepted)[0]
    k = int(rejected[0])
    return Fraction(lo) + k * step


def horizon_oracle_liminf(x: DescribedSequence, I: Ideal, N: int = 100_000, **kw) -> Fraction:
    return -horizon_oracle_limsup(-x, I, N, **kw)


def classical_limsup_on_horizon(x: DescribedSequence, N: int) -> float:
    """Plain limsup proxy: max over the second half of the horizon."""
    vals = x.values_float(N)[N // 2 + 1 :]
    return float(np.max(vals))
