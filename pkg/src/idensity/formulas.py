"""Exact formulas in the index variable ``n``.

A formula is a quotient of *exponential polynomials*: finite sums of terms
``c * n**k * b**n`` with rational ``c``, integer ``k`` (negative allowed) and
positive rational base ``b``.  This covers constants, ``c/(a n + b)``,
``c n``, ``c / n**e``, ``1 / 2**(n+1)`` and sums, products and quotients of
these.

Terms are ordered by growth: ``(b, k)`` lexicographically.  That ordering
gives exact limits, and a certified index from which the sign of an
exponential polynomial no longer changes (see ``eventual_sign``).
"""

from __future__ import annotations

import ast
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from .errors import FormulaError

Key = tuple[Fraction, int]  # (base, degree)
Limit = Union[Fraction, float]  # float only for +/- inf


def _frac_pow(x: Fraction, k: int) -> Fraction:
    return x**k if k >= 0 else 1 / (x ** (-k))


@dataclass(frozen=True)
class ExpPoly:
    """``sum c * n**k * b**n`` stored as sorted ``((b, k, c), ...)`` with ``c != 0``."""

    terms: tuple[tuple[Fraction, int, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[Key, Fraction]) -> "ExpPoly":
        return cls(tuple(sorted((b, k, c) for (b, k), c in d.items() if c != 0)))

    @classmethod
    def const(cls, c) -> "ExpPoly":
        return cls.from_dict({(Fraction(1), 0): Fraction(c)})

    @classmethod
    def monomial(cls, c=1, degree: int = 0, base=1) -> "ExpPoly":
        base = Fraction(base)
        if base <= 0:
            raise FormulaError("exponential base must be positive")
        return cls.from_dict({(base, int(degree)): Fraction(c)})

    def as_dict(self) -> dict[Key, Fraction]:
        return {(b, k): c for b, k, c in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> Fraction | None:
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and self.terms[0][:2] == (1, 0):
            return self.terms[0][2]
        return None

    def lead(self) -> tuple[Fraction, int, Fraction]:
        return self.terms[-1]

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        d = self.as_dict()
        for b, k, c in other.terms:
            d[(b, k)] = d.get((b, k), Fraction(0)) + c
        return ExpPoly.from_dict(d)

    def __neg__(self) -> "ExpPoly":
        return ExpPoly(tuple((b, k, -c) for b, k, c in self.terms))

    def __sub__(self, other: "ExpPoly") -> "ExpPoly":
        return self + (-other)

    def __mul__(self, other: "ExpPoly") -> "ExpPoly":
        d: dict[Key, Fraction] = {}
        for b1, k1, c1 in self.terms:
            for b2, k2, c2 in other.terms:
                key = (b1 * b2, k1 + k2)
                d[key] = d.get(key, Fraction(0)) + c1 * c2
        return ExpPoly.from_dict(d)

    def scale(self, s: Fraction) -> "ExpPoly":
        return ExpPoly.from_dict({(b, k): c * s for b, k, c in self.terms})

    def __call__(self, n: int) -> Fraction:
        n = int(n)
        if n < 1:
            raise ValueError("formulas are evaluated at natural n >= 1")
        nf = Fraction(n)
        return sum((c * _frac_pow(nf, k) * b**n for b, k, c in self.terms), Fraction(0))

    def relative_float(self, ns: np.ndarray, ref: Key) -> np.ndarray:
        """Float values of ``self(n) / (n**k_ref * b_ref**n)`` without overflow."""
        bref, kref = ref
        logn = np.log(ns.astype(float))
        out = np.zeros(len(ns))
        for b, k, c in self.terms:
            expo = (k - kref) * logn + ns * (math.log(b) - math.log(bref))
            out += float(c) * np.exp(expo)
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for b, k, c in reversed(self.terms):
            factors = [] if c == 1 and (k or b != 1) else [_lit(c)]
            if k == 1:
                factors.append("n")
            elif k:
                factors.append(f"n^({k})")
            if b != 1:
                factors.append(f"({b})^n")
            parts.append("*".join(factors))
        return " + ".join(parts)


def _lit(c: Fraction) -> str:
    return f"({c})" if c.denominator != 1 or c < 0 else str(c)


def eventual_sign(p: ExpPoly) -> tuple[int, int]:
    """Return ``(s, N)`` such that ``sign(p(n)) == s`` for every ``n >= N``.

    Factor out the leading term: ``p(n) = n**k b**n (c + sum_j c_j n**e_j r_j**n)``
    with ``r_j <= 1`` and ``e_j < 0`` when ``r_j == 1``.  Each tail term is
    decreasing once ``n >= e_j / (1 - r_j)`` (because ``-log r >= 1 - r``), so
    the tail sum is eventually decreasing to 0 and the first ``N`` past that
    point where it drops below ``|c|`` is found by doubling and bisection.
    """
    if not p.terms:
        return 0, 1
    bl, kl, cl = p.lead()
    rest = [(b / bl, k - kl, abs(c)) for b, k, c in p.terms[:-1]]
    sign = 1 if cl > 0 else -1
    if not rest:
        return sign, 1
    start = 1
    for r, e, _ in rest:
        if r < 1 and e > 0:
            start = max(start, math.floor(e / (1 - r)) + 1)
    target = abs(cl)

    def tail(n: int) -> Fraction:
        nf = Fraction(n)
        return sum((c * _frac_pow(nf, e) * r**n for r, e, c in rest), Fraction(0))

    if tail(start) < target:
        return sign, start
    lo, hi = start, 2 * start
    while tail(hi) >= target:
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail(mid) < target:
            hi = mid
        else:
            lo = mid
    return sign, hi


@dataclass(frozen=True)
class Formula:
    """Quotient ``num / den`` of exponential polynomials in ``n``."""

    num: ExpPoly
    den: ExpPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise FormulaError("division by the zero formula")
        num, den = self.num, self.den
        if den.terms == ((1, 0, 1),):
            return
        if len(den.terms) == 1:
            b, k, c = den.terms[0]
            num = num * ExpPoly.monomial(1 / c, -k, 1 / b)
            den = ExpPoly.const(1)
        else:
            if den.lead()[2] < 0:
                num, den = -num, -den
            if num.terms and num.lead()[:2] == den.lead()[:2]:
                ratio = num.lead()[2] / den.lead()[2]
                if (num - den.scale(ratio)).is_zero():
                    num, den = ExpPoly.const(ratio), ExpPoly.const(1)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def const(cls, c) -> "Formula":
        return cls(ExpPoly.const(c), ExpPoly.const(1))

    @classmethod
    def n(cls) -> "Formula":
        return cls(ExpPoly.monomial(1, 1), ExpPoly.const(1))

    @classmethod
    def parse(cls, text: str) -> "Formula":
        return parse_formula(text)

    def constant_value(self) -> Fraction | None:
        if self.den.constant_value() is not None:
            v = self.num.constant_value()
            return None if v is None else v / self.den.constant_value()
        return None

    def is_constant(self) -> bool:
        return self.constant_value() is not None

    def __call__(self, n: int) -> Fraction:
        d = self.den(n)
        if d == 0:
            raise FormulaError(f"formula {self} is undefined at n={n}")
        return self.num(n) / d

    def evaluate_float(self, ns: np.ndarray) -> np.ndarray:
        ref = self.den.lead()[:2]
        return self.num.relative_float(ns, ref) / self.den.relative_float(ns, ref)

    def limit(self) -> Limit:
        """Classical limit as ``n -> inf``; ``+-math.inf`` when it diverges."""
        if self.num.is_zero():
            return Fraction(0)
        bn, kn, cn = self.num.lead()
        bd, kd, cd = self.den.lead()
        if (bn, kn) < (bd, kd):
            return Fraction(0)
        if (bn, kn) == (bd, kd):
            return cn / cd
        return math.inf if cn / cd > 0 else -math.inf

    def eventual_sign(self) -> tuple[int, int]:
        s1, n1 = eventual_sign(self.num)
        s2, n2 = eventual_sign(self.den)
        return s1 * s2, max(n1, n2)

    def distance_to_limit(self) -> "Formula":
        lim = self.limit()
        if isinstance(lim, float):
            raise FormulaError("formula diverges")
        return self - Formula.const(lim)

    def is_eventually_monotone_convergent(self) -> bool:
        """``|f(n) - lim|`` is eventually non-increasing (checked symbolically)."""
        d = self.distance_to_limit()
        s, n0 = d.eventual_sign()
        if s == 0:
            return True
        # difference d(n) - d(n+1) has the sign of d eventually
        shifted = d.shift(1)
        s2, _ = (d - shifted).eventual_sign()
        return s2 == s or s2 == 0

    def shift(self, m: int) -> "Formula":
        """The formula ``n -> f(n + m)``."""
        def sh(p: ExpPoly) -> ExpPoly:
            out = ExpPoly()
            for b, k, c in p.terms:
                # (n+m)^k = sum binom(k, j) m^(k-j) n^j
                for j in range(k + 1):
                    coef = c * math.comb(k, j) * Fraction(m) ** (k - j) * b**m
                    out = out + ExpPoly.monomial(coef, j, b)
            return out

        lowest = min((k for _, k, _ in self.num.terms + self.den.terms), default=0)
        num, den = self.num, self.den
        if lowest < 0:
            lift = ExpPoly.monomial(1, -lowest)
            num, den = num * lift, den * lift
        return Formula(sh(num), sh(den))

    def __add__(self, other: "Formula") -> "Formula":
        other = _coerce(other)
        if self.den == other.den:
            return Formula(self.num + other.num, self.den)
        return Formula(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Formula":
        return Formula(-self.num, self.den)

    def __sub__(self, other: "Formula") -> "Formula":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Formula":
        return _coerce(other) - self

    def __mul__(self, other: "Formula") -> "Formula":
        other = _coerce(other)
        return Formula(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "Formula") -> "Formula":
        other = _coerce(other)
        if other.num.is_zero():
            raise FormulaError("division by the zero formula")
        return Formula(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "Formula":
        return _coerce(other) / self

    def equals(self, other: "Formula") -> bool:
        other = _coerce(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def __str__(self) -> str:
        dc = self.den.constant_value()
        if dc == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"Formula({str(self)!r})"


def _coerce(x) -> Formula:
    if isinstance(x, Formula):
        return x
    if isinstance(x, (int, Fraction)):
        return Formula.const(x)
    raise TypeError(f"cannot use {x!r} as a formula")


# -- parsing -----------------------------------------------------------------

_IMPLICIT = re.compile(r"(?<=[0-9n)])\s*(?=[(n])")


def parse_formula(text: str) -> Formula:
    """Parse strings such as ``"1/(2n+1)"``, ``"n"``, ``"1/2^(n+1)"``, ``"3/n^2 + 1"``."""
    if not isinstance(text, str) or not text.strip():
        raise FormulaError(f"empty formula {text!r}")
    src = text.replace("^", "**").replace("·", "*")
    src = _IMPLICIT.sub("*", src)
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise FormulaError(f"cannot parse formula {text!r}: {exc.msg}") from None
    return _build(tree.body, text)


def _build(node: ast.AST, text: str) -> Formula:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        if isinstance(node.value, float):
            return Formula.const(Fraction(repr(node.value)))
        return Formula.const(node.value)
    if isinstance(node, ast.Name) and node.id == "n":
        return Formula.n()
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _build(node.operand, text)
        return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            return _build_pow(node, text)
        left, right = _build(node.left, text), _build(node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    raise FormulaError(f"unsupported construct in formula {text!r}")


def _build_pow(node: ast.BinOp, text: str) -> Formula:
    base = _build(node.left, text)
    expo = _build(node.right, text)
    k = expo.constant_value()
    if k is not None:
        if k.denominator != 1:
            raise FormulaError(f"non-integer exponent in {text!r}")
        k = int(k)
        out = Formula.const(1)
        for _ in range(abs(k)):
            out = out * base
        return out if k >= 0 else Formula.const(1) / out
    b = base.constant_value()
    if b is None or b <= 0:
        raise FormulaError(f"exponent depending on n needs a positive constant base in {text!r}")
    # exponent must be affine in n with integer coefficients: s*n + t
    if expo.den.constant_value() != 1 or any(
        (bb, kk) not in ((1, 0), (1, 1)) for bb, kk, _ in expo.num.terms
    ):
        raise FormulaError(f"exponent must be affine in n in {text!r}")
    coeffs = expo.num.as_dict()
    s = coeffs.get((Fraction(1), 1), Fraction(0))
    t = coeffs.get((Fraction(1), 0), Fraction(0))
    if s.denominator != 1 or t.denominator != 1:
        raise FormulaError(f"exponent coefficients must be integers in {text!r}")
    s, t = int(s), int(t)
    return Formula(ExpPoly.monomial(_frac_pow(b, t), 0, _frac_pow(b, s)), ExpPoly.const(1))


def as_formula(x: Union[str, int, Fraction, Formula]) -> Formula:
    if isinstance(x, Formula):
        return x
    if isinstance(x, str):
        return parse_formula(x)
    return _coerce(Fraction(x) if not isinstance(x, Fraction) else x)


def threshold_positive(f: Formula) -> int | None:
    """Smallest-known ``N`` with ``f(n) > 0`` for all ``n >= N``, or ``None`` if not eventually positive."""
    s, N = f.eventual_sign()
    return N if s > 0 else None


def iter_values(f: Formula, ns: Iterable[int]) -> list[Fraction]:
    return [f(n) for n in ns]
