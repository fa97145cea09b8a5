"""Exact ideal densities on representable subsets of the real line.

Sets are finite unions of intervals, possibly restricted to the rationals or
the irrationals, plus finitely many added or removed points.  Sequences and
interval generators are described by finitely many index-set patterns with
closed-form value rules, so every density, limit and classification below is
computed with exact rational arithmetic.
"""

from .continuity import (
    IACVerdict,
    J2Result,
    baire_average,
    baire_constant,
    critical_values,
    iac_failures,
    is_iac_at,
    is_iac_global,
    is_iac_pointwise,
    j2_construct,
    level_sets,
    lusin_menchoff,
    semicontinuity_at,
)
from .density import (
    DensityClass,
    DensityReport,
    IntervalGenerator,
    QuotientRow,
    RadiusRule,
    density_class,
    i_density_along,
    is_admissible,
    is_i_d_closed,
    is_i_d_limit_point,
    is_i_d_open,
    quotient_sequence,
    quotient_table,
    s_set,
    theta,
)
from .errors import (
    DensityUndefined,
    FormulaError,
    HostNotSuitable,
    InvalidPartition,
    InvariantViolation,
    NotAPartition,
    PointInClosedSet,
    PreconditionDensity,
    PreconditionError,
    UnsolvableRadius,
    ZeroLengthInterval,
)
from .formulas import Formula, parse_formula
from .indexsets import (
    AP,
    FIN,
    NATDENS,
    All,
    Complement,
    Empty,
    Finite,
    Ideal,
    IndexSet,
    Intersection,
    Powers,
    Tail,
    Union,
    in_filter,
    in_ideal,
    natural_density,
)
from .limits import (
    DescribedSequence,
    ValueRule,
    horizon_oracle_liminf,
    horizon_oracle_limsup,
    i_limit,
    i_liminf,
    i_limsup,
    pattern_limit_set,
)
from .piecewise import PiecewiseFunction, RationalFunction
from .sets import ComponentClass, Interval, RationalBorelSet
from .urysohn import SeparatingFunction, UrysohnFunction, psi, separating_function, urysohn

__version__ = "0.1.0"

__all__ = [
    "All",
    "AP",
    "baire_average",
    "baire_constant",
    "Complement",
    "ComponentClass",
    "critical_values",
    "density_class",
    "DensityClass",
    "DensityReport",
    "DensityUndefined",
    "DescribedSequence",
    "Empty",
    "FIN",
    "Finite",
    "Formula",
    "FormulaError",
    "horizon_oracle_liminf",
    "horizon_oracle_limsup",
    "HostNotSuitable",
    "i_density_along",
    "i_liminf",
    "i_limit",
    "i_limsup",
    "iac_failures",
    "IACVerdict",
    "Ideal",
    "in_filter",
    "in_ideal",
    "IndexSet",
    "Intersection",
    "Interval",
    "IntervalGenerator",
    "InvalidPartition",
    "InvariantViolation",
    "is_admissible",
    "is_i_d_closed",
    "is_i_d_limit_point",
    "is_i_d_open",
    "is_iac_at",
    "is_iac_global",
    "is_iac_pointwise",
    "j2_construct",
    "J2Result",
    "level_sets",
    "lusin_menchoff",
    "NATDENS",
    "natural_density",
    "NotAPartition",
    "parse_formula",
    "pattern_limit_set",
    "PiecewiseFunction",
    "PointInClosedSet",
    "Powers",
    "PreconditionDensity",
    "PreconditionError",
    "psi",
    "quotient_sequence",
    "quotient_table",
    "QuotientRow",
    "RadiusRule",
    "RationalBorelSet",
    "RationalFunction",
    "s_set",
    "semicontinuity_at",
    "separating_function",
    "SeparatingFunction",
    "Tail",
    "theta",
    "Union",
    "UnsolvableRadius",
    "urysohn",
    "UrysohnFunction",
    "ValueRule",
    "ZeroLengthInterval",
]
