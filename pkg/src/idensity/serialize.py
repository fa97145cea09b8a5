"""JSON encoding and decoding of every value type.

Rationals are written as ``"p/q"`` strings (always with a denominator) and
unbounded endpoints as ``"inf"`` / ``"-inf"``.  Decoding validates against
``schemas.json`` first, so malformed input is reported with the JSON path of
the offending element.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, Optional

import jsonschema

from .density import DensityReport, IntervalGenerator, RadiusRule
from .errors import PreconditionError
from .formulas import as_formula
from .indexsets import (
    AP,
    All,
    Complement,
    Empty,
    Finite,
    IndexSet,
    Intersection,
    Powers,
    Union,
)
from .limits import DescribedSequence, ValueRule
from .piecewise import PiecewiseFunction, RationalFunction
from .sets import ComponentClass, Interval, RationalBorelSet, as_endpoint, as_rational

DOES_NOT_EXIST = "DoesNotExist"


class ValidationError(PreconditionError):
    """Input document does not match the schema; ``path`` locates the problem."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


@lru_cache(maxsize=1)
def schemas() -> dict:
    text = resources.files("idensity").joinpath("schemas.json").read_text()
    return json.loads(text)


def _json_path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def validate(doc: Any, kind: str, path: str = "$") -> None:
    schema = dict(schemas())
    schema["$ref"] = f"#/$defs/{kind}"
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        # prefer the deepest error, which usually names the real culprit
        err = max(errors, key=lambda e: len(e.absolute_path))
        best = jsonschema.exceptions.best_match([err]) or err
        prefix = path.rstrip("$") if path != "$" else ""
        loc = _json_path(best.absolute_path)
        raise ValidationError(best.message, path + loc[1:] if prefix else loc)


# -- scalars -----------------------------------------------------------------


def rat(x) -> str:
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        raise TypeError(f"refusing to encode inexact float {x!r}")
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def opt_rat(x: Optional[Fraction]) -> str:
    return DOES_NOT_EXIST if x is None else rat(x)


def parse_rat(x) -> Fraction:
    if isinstance(x, str):
        return as_rational(x.replace(" ", ""))
    return as_rational(x)


def parse_opt_rat(x) -> Optional[Fraction]:
    return None if x == DOES_NOT_EXIST else parse_rat(x)


# -- sets --------------------------------------------------------------------


def set_to_json(S: RationalBorelSet) -> dict:
    comps, plus, minus = S.components()
    return {
        "components": [
            {
                "lo": rat(iv.lo),
                "hi": rat(iv.hi),
                "lo_open": not iv.lo_closed,
                "hi_open": not iv.hi_closed,
                "class": kind.tag,
            }
            for iv, kind in comps
        ],
        "plus": [rat(p) for p in plus],
        "minus": [rat(p) for p in minus],
    }


def set_from_json(doc: dict, path: str = "$") -> RationalBorelSet:
    validate(doc, "set", path)
    comps = []
    for i, c in enumerate(doc["components"]):
        lo, hi = as_endpoint(c["lo"]), as_endpoint(c["hi"])
        lo_closed = not c.get("lo_open", False) and not math.isinf(lo)
        hi_closed = not c.get("hi_open", False) and not math.isinf(hi)
        try:
            iv = Interval(lo, hi, lo_closed, hi_closed)
        except ValueError as exc:
            raise ValidationError(str(exc), f"{path}.components[{i}]") from None
        comps.append((iv, ComponentClass.from_tag(c.get("class", "full"))))
    return RationalBorelSet.from_components(
        comps,
        [parse_rat(p) for p in doc.get("plus", [])],
        [parse_rat(p) for p in doc.get("minus", [])],
    )


# -- index sets --------------------------------------------------------------


def index_set_to_json(K: IndexSet) -> dict:
    if isinstance(K, Finite):
        return {"kind": "finite", "elems": list(K.elems)}
    if isinstance(K, AP):
        return {"kind": "ap", "a": K.a, "d": K.d}
    if isinstance(K, Powers):
        return {"kind": "powers", "e": K.e}
    if K == All:
        return {"kind": "all"}
    if K == Empty:
        return {"kind": "empty"}
    if isinstance(K, Union):
        return {"kind": "union", "args": [index_set_to_json(a) for a in K.args]}
    if isinstance(K, Intersection):
        return {"kind": "intersection", "args": [index_set_to_json(a) for a in K.args]}
    if isinstance(K, Complement):
        return {"kind": "complement", "of": index_set_to_json(K.of)}
    raise TypeError(f"cannot encode {K!r}")


def index_set_from_json(doc: dict, path: str = "$") -> IndexSet:
    validate(doc, "index_set", path)
    return _index_set(doc)


def _index_set(doc: dict) -> IndexSet:
    kind = doc["kind"]
    if kind == "finite":
        return Finite(doc["elems"])
    if kind == "ap":
        return AP(doc["a"], doc["d"])
    if kind == "powers":
        return Powers(doc["e"])
    if kind == "all":
        return All
    if kind == "empty":
        return Empty
    if kind == "union":
        return Union([_index_set(a) for a in doc["args"]])
    if kind == "intersection":
        return Intersection([_index_set(a) for a in doc["args"]])
    return Complement(_index_set(doc["of"]))


# -- sequences and generators -------------------------------------------------


def rule_to_json(rule: ValueRule) -> dict:
    v = rule.formula.constant_value()
    if v is not None:
        return {"kind": "const", "v": rat(v)}
    return {"kind": "formula", "expr": str(rule.formula), "limit": rat(rule.limit)}


def _rule(doc: dict, path: str) -> ValueRule:
    try:
        if doc["kind"] == "const":
            return ValueRule.const(parse_rat(doc["v"]))
        limit = parse_rat(doc["limit"]) if "limit" in doc else None
        return ValueRule.of(doc["expr"], limit)
    except PreconditionError as exc:
        raise ValidationError(str(exc), path) from None


def sequence_to_json(x: DescribedSequence) -> dict:
    return {
        "patterns": [
            {"index_set": index_set_to_json(s), "rule": rule_to_json(r)} for s, r in x.patterns
        ]
    }


def sequence_from_json(doc: dict, path: str = "$") -> DescribedSequence:
    validate(doc, "sequence", path)
    pats = []
    for i, p in enumerate(doc["patterns"]):
        pats.append((_index_set(p["index_set"]), _rule(p["rule"], f"{path}.patterns[{i}].rule")))
    return DescribedSequence(pats)


def generator_to_json(g: IntervalGenerator) -> dict:
    return {
        "center": rat(g.center),
        "patterns": [
            {"index_set": index_set_to_json(r.index_set), "left": str(r.left), "right": str(r.right)}
            for r in g.patterns
        ],
    }


def generator_from_json(doc: dict, path: str = "$") -> IntervalGenerator:
    validate(doc, "generator", path)
    rules = []
    for i, p in enumerate(doc["patterns"]):
        try:
            left, right = as_formula(str(p["left"])), as_formula(str(p["right"]))
        except PreconditionError as exc:
            raise ValidationError(str(exc), f"{path}.patterns[{i}]") from None
        rules.append(RadiusRule(_index_set(p["index_set"]), left, right))
    return IntervalGenerator(parse_rat(doc["center"]), rules)


# -- functions ---------------------------------------------------------------


def expression_to_json(e: RationalFunction) -> tuple[str, dict]:
    if e.is_affine:
        return "affine", {"a": rat(e.slope), "b": rat(e.intercept)}
    return "rational", {"num": [rat(c) for c in e.num], "den": [rat(c) for c in e.den]}


def _expression(doc: dict) -> RationalFunction:
    if "a" in doc:
        return RationalFunction.affine(parse_rat(doc["a"]), parse_rat(doc["b"]))
    den = doc.get("den", ["1"])
    return RationalFunction(tuple(parse_rat(c) for c in doc["num"]), tuple(parse_rat(c) for c in den))


def piecewise_to_json(f: PiecewiseFunction) -> dict:
    pieces = []
    for S, e in f.pieces:
        key, body = expression_to_json(e)
        pieces.append({"set": set_to_json(S), key: body})
    return {"pieces": pieces}


def piecewise_from_json(doc: dict, path: str = "$") -> PiecewiseFunction:
    validate(doc, "piecewise", path)
    pieces = []
    for i, p in enumerate(doc["pieces"]):
        S = set_from_json(p["set"], f"{path}.pieces[{i}].set")
        pieces.append((S, _expression(p.get("affine") or p["rational"])))
    return PiecewiseFunction(pieces)


# -- reports -----------------------------------------------------------------


def density_report_to_json(r: DensityReport) -> dict:
    return {
        "lower": rat(r.lower),
        "upper": rat(r.upper),
        "two_sided": opt_rat(r.two_sided),
        "admissible": r.admissible,
        "s_set": index_set_to_json(r.s_set),
        "quotient_table": [
            {"n": row.n, "m_J": rat(row.m_J), "m_JE": rat(row.m_JE), "quotient": rat(row.quotient)}
            for row in r.quotient_table
        ],
    }


def density_report_from_json(doc: dict) -> DensityReport:
    from .density import QuotientRow

    return DensityReport(
        lower=parse_rat(doc["lower"]),
        upper=parse_rat(doc["upper"]),
        two_sided=parse_opt_rat(doc["two_sided"]),
        admissible=bool(doc["admissible"]),
        s_set=index_set_from_json(doc["s_set"]),
        quotient_table=tuple(
            QuotientRow(int(r["n"]), parse_rat(r["m_J"]), parse_rat(r["m_JE"]))
            for r in doc.get("quotient_table", [])
        ),
    )


def dumps(doc: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)
