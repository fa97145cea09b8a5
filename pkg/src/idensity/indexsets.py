"""Decidable subsets of the natural numbers ``{1, 2, 3, ...}``.

Expressions are built from finite sets, arithmetic progressions, perfect
powers, ``All`` and ``Empty`` with union, intersection and complement.

Every question (membership, finiteness, emptiness, natural density) is
answered exactly.  Past a threshold ``T`` the membership of ``n`` depends
only on ``n mod L`` (``L`` the lcm of all progression steps) and on which of
the occurring exponents ``e`` make ``n`` a perfect ``e``-th power.  For each
such *pattern* we decide whether infinitely many ``n`` realize it, which
settles finiteness; perfect powers have density zero, so the density is the
fraction of residues accepted when no power bit is set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

__all__ = [
    "IndexSet",
    "Finite",
    "AP",
    "Powers",
    "All",
    "Empty",
    "Union",
    "Intersection",
    "Complement",
    "Tail",
    "Ideal",
    "FIN",
    "NATDENS",
    "natural_density",
    "in_ideal",
    "in_filter",
    "is_finite",
    "min_element",
    "members_up_to",
]


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _integer_root(n: int, e: int) -> int:
    """Largest ``r`` with ``r**e <= n`` for ``n >= 0``."""
    if n < 2:
        return n
    r = 1 << ((n.bit_length() + e - 1) // e)
    while True:
        s = ((e - 1) * r + n // r ** (e - 1)) // e
        if s >= r:
            return r
        r = s


def _is_perfect_power(n: int, e: int) -> bool:
    return n >= 1 and _integer_root(n, e) ** e == n


class IndexSet:
    """Base class of index-set expressions; instances are immutable and hashable."""

    def contains(self, n: int) -> bool:
        raise NotImplementedError

    def __contains__(self, n: int) -> bool:
        return self.contains(n)

    def mask(self, N: int) -> np.ndarray:
        """Boolean array ``m`` of length ``N + 1`` with ``m[n]`` = membership of ``n`` (``m[0]`` False)."""
        raise NotImplementedError

    # operators
    def __or__(self, other: "IndexSet") -> "IndexSet":
        return Union((self, other))

    def __and__(self, other: "IndexSet") -> "IndexSet":
        return Intersection((self, other))

    def __invert__(self) -> "IndexSet":
        return Complement(self)

    def __sub__(self, other: "IndexSet") -> "IndexSet":
        return Intersection((self, Complement(other)))

    # analysis
    def is_finite(self) -> bool:
        return not _analysis(self).infinite

    def is_empty(self) -> bool:
        return _is_empty(self)

    def density(self) -> Fraction:
        return _analysis(self).density

    def min_element(self) -> Optional[int]:
        return min_element(self)

    def members_up_to(self, N: int) -> list[int]:
        return [int(k) for k in np.nonzero(self.mask(N))[0]]

    def equals(self, other: "IndexSet") -> bool:
        """Extensional equality."""
        return (self - other).is_empty() and (other - self).is_empty()

    def issubset(self, other: "IndexSet") -> bool:
        return (self - other).is_empty()

    # structural helpers used by the analysis
    def _threshold(self) -> int:
        return 1

    def _modulus(self) -> int:
        return 1

    def _exponents(self) -> frozenset[int]:
        return frozenset()

    def _eval_pattern(self, r: int, bits: frozenset[int]) -> bool:
        """Membership of any ``n >= threshold`` with ``n ≡ r (mod L)`` whose power set is ``bits``."""
        raise NotImplementedError


@dataclass(frozen=True)
class Finite(IndexSet):
    elems: tuple[int, ...]

    def __init__(self, elems: Iterable[int]):
        vals = tuple(sorted({int(e) for e in elems}))
        if vals and vals[0] < 1:
            raise ValueError("finite index sets must contain natural numbers >= 1")
        object.__setattr__(self, "elems", vals)

    def contains(self, n: int) -> bool:
        return n in self.elems

    def mask(self, N: int) -> np.ndarray:
        m = np.zeros(N + 1, dtype=bool)
        idx = [e for e in self.elems if e <= N]
        m[idx] = True
        return m

    def _threshold(self) -> int:
        return self.elems[-1] + 1 if self.elems else 1

    def _eval_pattern(self, r, bits):
        return False

    def __repr__(self) -> str:
        return f"Finite({list(self.elems)})"


@dataclass(frozen=True)
class AP(IndexSet):
    """``{a + d k : k >= 0}`` intersected with the naturals."""

    a: int
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("progression step must be >= 1")

    def contains(self, n: int) -> bool:
        return n >= 1 and n >= self.a and (n - self.a) % self.d == 0

    def mask(self, N: int) -> np.ndarray:
        m = np.zeros(N + 1, dtype=bool)
        start = self.a
        if start < 1:
            start += ((1 - start + self.d - 1) // self.d) * self.d
        m[start::self.d] = True
        return m

    def _threshold(self) -> int:
        return max(self.a, 1)

    def _modulus(self) -> int:
        return self.d

    def _eval_pattern(self, r, bits):
        return (r - self.a) % self.d == 0

    def __repr__(self) -> str:
        return f"AP({self.a}, {self.d})"


def Tail(N: int) -> AP:
    """``{N, N+1, ...}``."""
    return AP(max(int(N), 1), 1)


@dataclass(frozen=True)
class Powers(IndexSet):
    """Perfect ``e``-th powers ``{m^e : m >= 1}``."""

    e: int

    def __post_init__(self):
        if self.e < 2:
            raise ValueError("power exponent must be >= 2")

    def contains(self, n: int) -> bool:
        return _is_perfect_power(n, self.e)

    def mask(self, N: int) -> np.ndarray:
        m = np.zeros(N + 1, dtype=bool)
        k = 1
        while k**self.e <= N:
            m[k**self.e] = True
            k += 1
        return m

    def _exponents(self):
        return frozenset((self.e,))

    def _eval_pattern(self, r, bits):
        return self.e in bits

    def __repr__(self) -> str:
        return f"Powers({self.e})"


@dataclass(frozen=True)
class _AllType(IndexSet):
    def contains(self, n):
        return n >= 1

    def mask(self, N):
        m = np.ones(N + 1, dtype=bool)
        m[0] = False
        return m

    def _eval_pattern(self, r, bits):
        return True

    def __repr__(self):
        return "All"


@dataclass(frozen=True)
class _EmptyType(IndexSet):
    def contains(self, n):
        return False

    def mask(self, N):
        return np.zeros(N + 1, dtype=bool)

    def _eval_pattern(self, r, bits):
        return False

    def __repr__(self):
        return "Empty"


All = _AllType()
Empty = _EmptyType()


@dataclass(frozen=True)
class Union(IndexSet):
    args: tuple[IndexSet, ...]

    def __init__(self, args: Iterable[IndexSet]):
        object.__setattr__(self, "args", tuple(args))

    def contains(self, n):
        return any(a.contains(n) for a in self.args)

    def mask(self, N):
        m = np.zeros(N + 1, dtype=bool)
        for a in self.args:
            m |= a.mask(N)
        return m

    def _threshold(self):
        return max((a._threshold() for a in self.args), default=1)

    def _modulus(self):
        return reduce(_lcm, (a._modulus() for a in self.args), 1)

    def _exponents(self):
        return frozenset().union(*(a._exponents() for a in self.args))

    def _eval_pattern(self, r, bits):
        return any(a._eval_pattern(r, bits) for a in self.args)

    def __repr__(self):
        return "Union(" + ", ".join(map(repr, self.args)) + ")"


@dataclass(frozen=True)
class Intersection(IndexSet):
    args: tuple[IndexSet, ...]

    def __init__(self, args: Iterable[IndexSet]):
        object.__setattr__(self, "args", tuple(args))

    def contains(self, n):
        return all(a.contains(n) for a in self.args)

    def mask(self, N):
        m = np.ones(N + 1, dtype=bool)
        m[0] = False
        for a in self.args:
            m &= a.mask(N)
        return m

    def _threshold(self):
        return max((a._threshold() for a in self.args), default=1)

    def _modulus(self):
        return reduce(_lcm, (a._modulus() for a in self.args), 1)

    def _exponents(self):
        return frozenset().union(*(a._exponents() for a in self.args))

    def _eval_pattern(self, r, bits):
        return all(a._eval_pattern(r, bits) for a in self.args)

    def __repr__(self):
        return "Intersection(" + ", ".join(map(repr, self.args)) + ")"


@dataclass(frozen=True)
class Complement(IndexSet):
    of: IndexSet

    def contains(self, n):
        return n >= 1 and not self.of.contains(n)

    def mask(self, N):
        m = ~self.of.mask(N)
        m[0] = False
        return m

    def _threshold(self):
        return self.of._threshold()

    def _modulus(self):
        return self.of._modulus()

    def _exponents(self):
        return self.of._exponents()

    def _eval_pattern(self, r, bits):
        return not self.of._eval_pattern(r, bits)

    def __repr__(self):
        return f"Complement({self.of!r})"


# -- exact analysis ----------------------------------------------------------


@dataclass(frozen=True)
class _Analysis:
    threshold: int
    modulus: int
    infinite: bool
    density: Fraction


@lru_cache(maxsize=None)
def _power_residues(E: int, L: int) -> frozenset[int]:
    return frozenset(pow(m, E, L) for m in range(L))


@lru_cache(maxsize=None)
def _realizable_bitsets(exps: frozenset[int]) -> tuple[tuple[frozenset[int], int], ...]:
    """Power-bit sets realized by infinitely many naturals, with the lcm they force.

    ``n`` is a perfect ``E``-th power for ``E = lcm(S)`` exactly when it is a
    perfect ``e``-th power for every ``e`` in ``S``.  Such an ``n = m^E`` avoids
    being an ``f``-th power for ``f`` outside ``S`` for infinitely many ``m`` in
    every residue class precisely when ``f`` does not divide ``E``.
    """
    out = [(frozenset(), 1)]
    ordered = sorted(exps)
    for k in range(1, len(ordered) + 1):
        for subset in combinations(ordered, k):
            E = reduce(_lcm, subset, 1)
            if any(E % f == 0 for f in ordered if f not in subset):
                continue
            out.append((frozenset(subset), E))
    return tuple(out)


@lru_cache(maxsize=4096)
def _analysis(K: IndexSet) -> _Analysis:
    T = K._threshold()
    L = K._modulus()
    exps = K._exponents()
    accepted = sum(1 for r in range(L) if K._eval_pattern(r, frozenset()))
    infinite = accepted > 0
    if not infinite:
        for bits, E in _realizable_bitsets(exps):
            if not bits:
                continue
            if any(K._eval_pattern(r, bits) for r in _power_residues(E, L)):
                infinite = True
                break
    return _Analysis(T, L, infinite, Fraction(accepted, L))


def _is_empty(K: IndexSet) -> bool:
    # shortcut for finite pieces intersected with something
    if isinstance(K, Intersection):
        for a in K.args:
            if isinstance(a, Finite):
                return not any(K.contains(n) for n in a.elems)
    if isinstance(K, Finite):
        return not K.elems
    info = _analysis(K)
    if info.infinite:
        return False
    return not any(K.contains(n) for n in range(1, info.threshold))


def natural_density(K: IndexSet) -> Fraction:
    return K.density()


def is_finite(K: IndexSet) -> bool:
    return K.is_finite()


def members_up_to(K: IndexSet, N: int) -> list[int]:
    return K.members_up_to(N)


def min_element(K: IndexSet) -> Optional[int]:
    info = _analysis(K)
    for n in range(1, info.threshold):
        if K.contains(n):
            return n
    if not info.infinite:
        return None
    n = max(info.threshold, 1)
    while True:
        if K.contains(n):
            return n
        n += 1


def finite_part_bound(K: IndexSet) -> int:
    """An ``N`` such that every member ``>= N`` lies in an infinite pattern class."""
    return _analysis(K).threshold


# -- ideals ------------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    """One of the two shipped admissible ideals: ``fin`` or ``natdens``."""

    kind: str

    def __post_init__(self):
        if self.kind not in ("fin", "natdens"):
            raise ValueError(f"unknown ideal {self.kind!r}")

    def contains(self, K: IndexSet) -> bool:
        if self.kind == "fin":
            return K.is_finite()
        return K.density() == 0

    def filter_contains(self, K: IndexSet) -> bool:
        return self.contains(Complement(K))

    @property
    def label(self) -> str:
        return "Fin" if self.kind == "fin" else "I_d"

    @classmethod
    def parse(cls, text: str) -> "Ideal":
        key = text.strip().lower()
        if key in ("fin", "finite", "i_f"):
            return FIN
        if key in ("natdens", "id", "i_d", "density"):
            return NATDENS
        raise ValueError(f"unknown ideal {text!r}; use 'fin' or 'natdens'")

    def __repr__(self) -> str:
        return self.label


FIN = Ideal("fin")
NATDENS = Ideal("natdens")


def in_ideal(I: Ideal, K: IndexSet) -> bool:
    return I.contains(K)


def in_filter(I: Ideal, K: IndexSet) -> bool:
    return I.filter_contains(K)
