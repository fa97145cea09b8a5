"""Builders for the two worked examples: a generator whose admissibility
depends on the ideal, and a set that is neither I-d open nor I-d closed."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .density import (
    DensityReport,
    IntervalGenerator,
    RadiusRule,
    density_class,
    i_density_along,
    is_i_d_closed,
    is_i_d_open,
)
from .formulas import as_formula
from .indexsets import FIN, NATDENS, All, Complement, Powers
from .sets import ComponentClass, RationalBorelSet, as_rational


def squares_generator(center=0) -> IntervalGenerator:
    """Radius ``1/(2n+1)`` off the squares and ``n`` on the squares."""
    squares = Powers(2)
    return IntervalGenerator(
        center,
        [
            RadiusRule(Complement(squares), as_formula("1/(2n+1)"), as_formula("1/(2n+1)")),
            RadiusRule(squares, as_formula("n"), as_formula("n")),
        ],
    )


@dataclass(frozen=True)
class SquaresExample:
    E: RationalBorelSet
    generator: IntervalGenerator
    natdens: DensityReport
    fin: DensityReport


def example_squares(rows: int = 16) -> SquaresExample:
    E = RationalBorelSet.open(-1, 1)
    g = squares_generator(0)
    return SquaresExample(
        E=E,
        generator=g,
        natdens=i_density_along(E, g, NATDENS, table_rows=rows),
        fin=i_density_along(E, g, FIN, table_rows=rows),
    )


def dyadic_generator(center) -> IntervalGenerator:
    """``[c - 2^-(k+1), c + 2^-(k+1)]``, of length ``2^-k``."""
    return IntervalGenerator.symmetric(center, "(1/2)^(n+1)", All)


@dataclass(frozen=True)
class PuncturedIntervalExample:
    x1: Fraction
    x2: Fraction
    b: Fraction
    I: RationalBorelSet
    J: RationalBorelSet
    I_prime: RationalBorelSet
    open_: bool
    closed: bool
    center_class: str
    center_density: DensityReport  # of I' at b
    edge_density: DensityReport  # of the complement of I' at x1, along the dyadic generator


def example_punctured(x1=0, x2=1, rows: int = 12) -> PuncturedIntervalExample:
    """``I' = I minus (J intersected with the irrationals)`` for ``I = (x1, x2)``
    and ``J`` the closed middle half of ``I``."""
    x1, x2 = as_rational(x1), as_rational(x2)
    if not x1 < x2:
        raise ValueError("need x1 < x2")
    b = (x1 + x2) / 2
    w = (x2 - x1) / 4
    I = RationalBorelSet.open(x1, x2)
    J = RationalBorelSet.closed(b - w, b + w)
    I_prime = I - (J & RationalBorelSet.irrationals())
    assert I_prime == (
        RationalBorelSet.open(x1, b - w)
        | RationalBorelSet.interval(b - w, b + w, True, True, kind=ComponentClass.RATIONALS_ONLY)
        | RationalBorelSet.open(b + w, x2)
    )
    comp = ~I_prime
    return PuncturedIntervalExample(
        x1=x1,
        x2=x2,
        b=b,
        I=I,
        J=J,
        I_prime=I_prime,
        open_=is_i_d_open(I_prime, NATDENS),
        closed=is_i_d_closed(I_prime, NATDENS),
        center_class=str(density_class(I_prime, b)),
        center_density=i_density_along(I_prime, dyadic_generator(b), NATDENS, table_rows=rows),
        edge_density=i_density_along(comp, dyadic_generator(x1), NATDENS, table_rows=rows),
    )


EXAMPLES = {
    "squares-generator": "generator admissible for I_d but not for Fin; density of (-1,1) at 0",
    "punctured-interval": "I' = (x1,x2) minus the irrationals of its middle half: neither open nor closed",
}
