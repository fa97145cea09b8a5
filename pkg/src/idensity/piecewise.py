"""Piecewise rational functions of a real variable over representable sets."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import NotAPartition
from .sets import RationalBorelSet, as_rational

Poly = tuple[Fraction, ...]  # coefficients, lowest degree first


def _trim(p: Sequence[Fraction]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def _pscale(p: Poly, c: Fraction) -> Poly:
    return _trim([c * a for a in p])


def _pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    rem = list(p)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    while len(rem) >= len(q) and rem:
        shift = len(rem) - len(q)
        c = rem[-1] / q[-1]
        quot[shift] = c
        for i, b in enumerate(q):
            rem[shift + i] -= c * b
        rem = list(_trim(rem))
    return _trim(quot), _trim(rem)


def _pgcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, _pdivmod(p, q)[1]
    return _pscale(p, 1 / p[-1]) if p else (Fraction(1),)


def _peval(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


@dataclass(frozen=True)
class RationalFunction:
    """``num(x) / den(x)`` in lowest terms with monic denominator."""

    num: Poly
    den: Poly = (Fraction(1),)

    def __post_init__(self):
        num = _trim([Fraction(a) for a in self.num])
        den = _trim([Fraction(a) for a in self.den])
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            den = (Fraction(1),)
        elif len(den) > 1:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
        lead = den[-1]
        object.__setattr__(self, "num", _pscale(num, 1 / lead))
        object.__setattr__(self, "den", _pscale(den, 1 / lead))

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls((as_rational(c),))

    @classmethod
    def affine(cls, a, b) -> "RationalFunction":
        return cls((as_rational(b), as_rational(a)))

    @classmethod
    def identity(cls) -> "RationalFunction":
        return cls.affine(1, 0)

    @property
    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    @property
    def is_affine(self) -> bool:
        return self.is_polynomial and len(self.num) <= 2

    @property
    def slope(self) -> Fraction:
        assert self.is_affine
        return self.num[1] if len(self.num) > 1 else Fraction(0)

    @property
    def intercept(self) -> Fraction:
        assert self.is_affine
        return self.num[0] if self.num else Fraction(0)

    def defined_at(self, x: Fraction) -> bool:
        return _peval(self.den, x) != 0

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"{self} has a pole at {x}")
        return _peval(self.num, x) / d

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(_pscale(self.num, Fraction(-1)), self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if not other.num:
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def antiderivative_between(self, lo: Fraction, hi: Fraction) -> Fraction:
        """Exact integral over ``[lo, hi]``; polynomials only."""
        if not self.is_polynomial:
            raise TypeError("exact integration is implemented for polynomial pieces only")
        total = Fraction(0)
        for k, a in enumerate(self.num):
            total += a * (hi ** (k + 1) - lo ** (k + 1)) / (k + 1)
        return total

    def __str__(self) -> str:
        def show(p: Poly) -> str:
            if not p:
                return "0"
            terms = []
            for k, a in enumerate(p):
                if a == 0:
                    continue
                if k == 0:
                    terms.append(str(a))
                    continue
                power = "x" if k == 1 else f"x^{k}"
                terms.append(power if a == 1 else f"-{power}" if a == -1 else f"{a}*{power}")
            return " + ".join(reversed(terms))

        if self.is_polynomial:
            return show(self.num)
        return f"({show(self.num)})/({show(self.den)})"


Piece = tuple[RationalBorelSet, RationalFunction]


class PiecewiseFunction:
    """Function defined by rational expressions on sets that partition the real line."""

    def __init__(self, pieces: Iterable[Piece], validate: bool = True):
        self.pieces: tuple[Piece, ...] = tuple((s, f) for s, f in pieces if not s.is_empty())
        self._breakpoints: Optional[list[Fraction]] = None
        self._table: Optional[list] = None
        if validate:
            self.validate()

    def validate(self) -> None:
        seen = RationalBorelSet.empty()
        for i, (s, _) in enumerate(self.pieces):
            if not (seen & s).is_empty():
                raise NotAPartition(f"piece {i} overlaps an earlier piece")
            seen = seen | s
        if seen != RationalBorelSet.real_line():
            missing = ~seen
            raise NotAPartition(f"pieces leave {missing!r} uncovered")

    @classmethod
    def constant(cls, c) -> "PiecewiseFunction":
        return cls([(RationalBorelSet.real_line(), RationalFunction.const(c))], validate=False)

    @classmethod
    def affine(cls, a, b) -> "PiecewiseFunction":
        return cls([(RationalBorelSet.real_line(), RationalFunction.affine(a, b))], validate=False)

    @classmethod
    def indicator(cls, S: RationalBorelSet, inside=1, outside=0) -> "PiecewiseFunction":
        return cls(
            [(S, RationalFunction.const(inside)), (~S, RationalFunction.const(outside))],
            validate=False,
        )

    @classmethod
    def dirichlet(cls) -> "PiecewiseFunction":
        """1 on the rationals, 0 on the irrationals."""
        return cls.indicator(RationalBorelSet.rationals())

    def local_view(self, x) -> list[tuple[int, int, int, bool]]:
        """``(piece index, left class bits, right class bits, contains x)`` for
        every piece that touches the rational ``x``."""
        x = as_rational(x)
        bps = self.breakpoints()
        if self._table is None:
            # class bits of every piece on the common refinement of all breakpoints
            self._table = [s._resample(bps) for s, _ in self.pieces]
        k = bisect_left(bps, x)
        on_point = k < len(bps) and bps[k] == x
        out = []
        for idx, (cells, marks) in enumerate(self._table):
            if on_point:
                left, right, inside = cells[k], cells[k + 1], marks[k]
            else:
                left = right = cells[k]
                inside = bool(left & 1)
            if left or right or inside:
                out.append((idx, left, right, inside))
        return out

    def piece_at(self, x) -> Piece:
        for idx, _, _, inside in self.local_view(x):
            if inside:
                return self.pieces[idx]
        raise NotAPartition(f"no piece contains {x}")

    def __call__(self, x) -> Fraction:
        return self.piece_at(x)[1](x)

    @property
    def is_affine(self) -> bool:
        return all(f.is_affine for _, f in self.pieces)

    def breakpoints(self) -> list[Fraction]:
        if self._breakpoints is None:
            pts: set[Fraction] = set()
            for s, _ in self.pieces:
                pts.update(s.breakpoints)
            self._breakpoints = sorted(pts)
        return list(self._breakpoints)

    def combine(
        self, other: "PiecewiseFunction", op: Callable[[RationalFunction, RationalFunction], RationalFunction]
    ) -> "PiecewiseFunction":
        out = []
        for s1, f1 in self.pieces:
            for s2, f2 in other.pieces:
                both = s1 & s2
                if not both.is_empty():
                    out.append((both, op(f1, f2)))
        return PiecewiseFunction(out, validate=False)

    def __add__(self, other: "PiecewiseFunction") -> "PiecewiseFunction":
        return self.combine(other, lambda a, b: a + b)

    def __mul__(self, other: "PiecewiseFunction") -> "PiecewiseFunction":
        return self.combine(other, lambda a, b: a * b)

    def __neg__(self) -> "PiecewiseFunction":
        return PiecewiseFunction([(s, -f) for s, f in self.pieces], validate=False)

    def post_compose_affine(self, a, b) -> "PiecewiseFunction":
        """``x -> a * f(x) + b``."""
        ca, cb = RationalFunction.const(a), RationalFunction.const(b)
        return self.map(lambda f: ca * f + cb)

    def map(self, g: Callable[[RationalFunction], RationalFunction]) -> "PiecewiseFunction":
        return PiecewiseFunction([(s, g(f)) for s, f in self.pieces], validate=False)

    def integral(self, lo, hi) -> Fraction:
        """Exact Lebesgue integral over ``[lo, hi]``; null cells contribute nothing."""
        lo, hi = as_rational(lo), as_rational(hi)
        if hi < lo:
            return -self.integral(hi, lo)
        total = Fraction(0)
        for s, f in self.pieces:
            for a, b, bits in s.cells():
                if not bits & 2:
                    continue
                a, b = max(a, lo), min(b, hi)
                if a < b:
                    total += f.antiderivative_between(a, b)
        return total

    def __repr__(self) -> str:
        return "PiecewiseFunction(" + "; ".join(f"{s!r}: {f}" for s, f in self.pieces) + ")"
