"""``idensity`` command line.

Every subcommand reads JSON inputs either from named flags (inline JSON, or
``@path`` to read a file) or from one document given with ``--file`` /
``--inline`` whose keys name the inputs (``set``, ``generator``, ...).
Reports go to standard output as JSON (exact ``p/q`` strings) or CSV.

Exit codes: 0 success, 2 invalid input or failed precondition, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import serialize as ser
from .continuity import (
    critical_values,
    iac_failures,
    is_iac_at,
    is_iac_global,
    is_iac_pointwise,
    semicontinuity_at,
)
from .density import (
    density_class,
    i_density_along,
    is_i_d_closed,
    is_i_d_limit_point,
    is_i_d_open,
    theta,
)
from .errors import InvariantViolation, PreconditionError
from .indexsets import FIN, NATDENS, Ideal
from .limits import (
    horizon_oracle_liminf,
    horizon_oracle_limsup,
    i_limit,
    i_liminf,
    i_limsup,
    pattern_limit_set,
)
from .reproduce import EXAMPLES, example_punctured, example_squares
from .sets import RationalBorelSet
from .urysohn import separating_function


class UsageError(PreconditionError):
    pass


# -- input -------------------------------------------------------------------


def _load_json(text: str, what: str) -> Any:
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ser.ValidationError(f"{what} is not valid JSON: {exc.msg}", f"$ (line {exc.lineno})")


def _inputs(args) -> dict:
    doc: dict = {}
    if args.file:
        doc = _load_json("@" + args.file, "--file")
    elif args.inline:
        doc = _load_json(args.inline, "--inline")
    if not isinstance(doc, dict):
        raise ser.ValidationError("the input document must be a JSON object")
    return doc


def _need(args, doc: dict, key: str, parse):
    flag = getattr(args, key.replace("-", "_"), None)
    if flag is not None:
        return parse(_load_json(flag, f"--{key}"), "$")
    if key.replace("-", "_") in doc:
        k = key.replace("-", "_")
        return parse(doc[k], f"$.{k}")
    raise UsageError(f"missing input '{key}' (pass --{key} or include it in --file/--inline)")


def _optional(args, doc: dict, key: str, parse):
    flag = getattr(args, key, None)
    if flag is not None:
        return parse(flag)
    return parse(doc[key]) if key in doc else None


def _ideals(name: str) -> list[Ideal]:
    if name == "both":
        return [FIN, NATDENS]
    return [Ideal.parse(name)]


# -- output ------------------------------------------------------------------


def decimal12(q: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(q.numerator) / Decimal(q.denominator)
        return str(d.quantize(Decimal("1e-12")))


def _show(q: Optional[Fraction]) -> str:
    return ser.DOES_NOT_EXIST if q is None else str(q)


def _write_csv(rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _key_value_csv(doc: dict) -> str:
    rows = [("key", "value")]
    for k in sorted(doc):
        v = doc[k]
        rows.append((k, v if isinstance(v, str) else json.dumps(v, sort_keys=True)))
    return _write_csv(rows)


def _quotient_csv(table, label: str = "n") -> str:
    rows = [(label, "m_J", "m_JE", "quotient", "quotient_decimal")]
    for r in table:
        rows.append((r.n, ser.rat(r.m_J), ser.rat(r.m_JE), ser.rat(r.quotient), decimal12(r.quotient)))
    return _write_csv(rows)


def _emit(args, doc: dict, csv_text: Optional[str] = None) -> str:
    if args.format == "csv":
        return csv_text if csv_text is not None else _key_value_csv(doc)
    return ser.dumps(doc) + "\n"


# -- subcommands -------------------------------------------------------------


def cmd_density(args) -> str:
    doc = _inputs(args)
    E = _need(args, doc, "set", ser.set_from_json)
    g = _need(args, doc, "generator", ser.generator_from_json)
    I = Ideal.parse(args.ideal)
    report = i_density_along(E, g, I, table_rows=args.rows)
    out = ser.density_report_to_json(report)
    out["ideal"] = I.kind
    lines = [
        f"{I.label}-density: {_show(report.two_sided)}",
        f"lower: {report.lower}",
        f"upper: {report.upper}",
        f"admissible: {str(report.admissible).lower()}",
    ]
    return _emit(args, out, _quotient_csv(report.quotient_table) + "\n".join(lines) + "\n")


def cmd_limsup(args) -> str:
    doc = _inputs(args)
    x = _need(args, doc, "sequence", ser.sequence_from_json)
    results = []
    for I in _ideals(args.ideal):
        results.append(
            {
                "ideal": I.kind,
                "limsup": ser.rat(i_limsup(x, I)),
                "liminf": ser.rat(i_liminf(x, I)),
                "limit": ser.opt_rat(i_limit(x, I)),
                "pattern_limits": [ser.rat(v) for v in pattern_limit_set(x, I)],
            }
        )
    out = results[0] if len(results) == 1 else {"results": results}
    rows = [("ideal", "limsup", "liminf", "limit")]
    rows += [(r["ideal"], r["limsup"], r["liminf"], r["limit"]) for r in results]
    return _emit(args, out, _write_csv(rows))


def _measure(E: RationalBorelSet) -> str:
    return ser.rat(E.measure())


def cmd_classify(args) -> str:
    doc = _inputs(args)
    E = _need(args, doc, "set", ser.set_from_json)
    I = Ideal.parse(args.ideal)
    out = {
        "i_d_open": is_i_d_open(E, I),
        "i_d_closed": is_i_d_closed(E, I),
        "measure": _measure(E),
        "theta": ser.set_to_json(theta(E, I)),
    }
    p = _optional(args, doc, "point", ser.parse_rat)
    if p is not None:
        out["point"] = ser.rat(p)
        out["density_class"] = str(density_class(E, p))
        out["i_d_limit_point"] = is_i_d_limit_point(E, p, I)
        out["member"] = E.contains(p)
    return _emit(args, out)


def cmd_theta(args) -> str:
    doc = _inputs(args)
    E = _need(args, doc, "set", ser.set_from_json)
    out = ser.set_to_json(theta(E, Ideal.parse(args.ideal)))
    rows = [("lo", "hi", "lo_open", "hi_open", "class")]
    rows += [(c["lo"], c["hi"], c["lo_open"], c["hi_open"], c["class"]) for c in out["components"]]
    rows += [(p, p, False, False, "plus") for p in out["plus"]]
    rows += [(p, p, False, False, "minus") for p in out["minus"]]
    return _emit(args, out, _write_csv(rows))


def cmd_iac(args) -> str:
    doc = _inputs(args)
    f = _need(args, doc, "function", ser.piecewise_from_json)
    I = Ideal.parse(args.ideal)
    p = _optional(args, doc, "point", ser.parse_rat)
    if p is not None:
        verdict = is_iac_at(f, p, I)
        upper, lower = semicontinuity_at(f, p, I)
        out = {
            "point": ser.rat(p),
            "value": ser.rat(f(p)),
            "iac": verdict.holds,
            "upper_semicontinuous": upper,
            "lower_semicontinuous": lower,
            "witness": None if verdict.witness is None else ser.set_to_json(verdict.witness),
        }
        return _emit(args, out)
    failures = iac_failures(f, I)
    pointwise = is_iac_pointwise(f, I)
    out = {
        "pointwise": pointwise,
        "failures": [ser.rat(x) for x in failures],
    }
    if f.is_affine:
        level = is_iac_global(f, I)
        out["level_sets"] = level
        out["critical_values"] = [ser.rat(c) for c in critical_values(f)]
        if level != pointwise:
            raise InvariantViolation("level-set and pointwise verdicts disagree")
    return _emit(args, out)


def _parse_grid(spec: Optional[str], lo_default: Fraction, hi_default: Fraction) -> list[Fraction]:
    if spec:
        try:
            lo_s, hi_s, count_s = spec.split(":")
            lo, hi, count = ser.parse_rat(lo_s), ser.parse_rat(hi_s), int(count_s)
        except (ValueError, PreconditionError):
            raise UsageError(f"--grid expects lo:hi:count, got {spec!r}") from None
    else:
        lo, hi, count = lo_default, hi_default, 1001
    if count < 2 or hi <= lo:
        raise UsageError("grid needs count >= 2 and lo < hi")
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def cmd_separate(args) -> str:
    from .continuity import is_iac_at as check

    doc = _inputs(args)
    F = _need(args, doc, "closed-set", ser.set_from_json)
    p0 = _optional(args, doc, "point", ser.parse_rat)
    if p0 is None:
        raise UsageError("missing input 'point'")
    sep = separating_function(F, p0, ser.parse_rat(args.r_max), ser.parse_rat(args.truncation))
    marks = [p for p in F.breakpoints] + [p0]
    grid = _parse_grid(args.grid, min(marks) - 1, max(marks) + 1)
    rows = sep.sample(grid)
    I = Ideal.parse(args.ideal)
    props = {
        "zero_on_closed_set": all(g == 0 for x, _, _, g in rows if F.contains(x)),
        "one_at_point": sep(p0) == 1,
        "range_within_unit_interval": all(0 <= g <= 1 for *_, g in rows),
        "matches_piecewise_form": all(sep.piecewise(x) == g for x, _, _, g in rows),
    }
    if args.check_iac:
        props["iac_at_grid_points"] = all(check(sep.piecewise, x, I).holds for x in grid)
    out = {
        "point": ser.rat(p0),
        "closed_set": ser.set_to_json(F),
        "properties": props,
        "samples": [{"x": ser.rat(x), "g1": ser.rat(a), "g2": ser.rat(b), "g": ser.rat(g)} for x, a, b, g in rows],
    }
    table = [("x", "g1", "g2", "g")] + [tuple(ser.rat(v) for v in r) for r in rows]
    summary = "".join(f"{k}: {str(v).lower()}\n" for k, v in props.items())
    return _emit(args, out, _write_csv(table) + summary)


def cmd_oracle(args) -> str:
    doc = _inputs(args)
    x = _need(args, doc, "sequence", ser.sequence_from_json)
    step = ser.parse_rat(args.step)
    results = []
    for I in _ideals(args.ideal):
        eng_sup, eng_inf = i_limsup(x, I), i_liminf(x, I)
        orc_sup = horizon_oracle_limsup(x, I, args.N, delta=args.delta, step=step)
        orc_inf = horizon_oracle_liminf(x, I, args.N, delta=args.delta, step=step)
        agree = abs(float(eng_sup - orc_sup)) <= args.tolerance and abs(float(eng_inf - orc_inf)) <= args.tolerance
        results.append(
            {
                "ideal": I.kind,
                "engine_limsup": ser.rat(eng_sup),
                "oracle_limsup": ser.rat(orc_sup),
                "engine_liminf": ser.rat(eng_inf),
                "oracle_liminf": ser.rat(orc_inf),
                "agree": agree,
            }
        )
    out = {"N": args.N, "delta": args.delta, "step": ser.rat(step), "tolerance": args.tolerance, "results": results}
    keys = ["ideal", "engine_limsup", "oracle_limsup", "engine_liminf", "oracle_liminf", "agree"]
    table = [keys] + [[str(r[k]).lower() if isinstance(r[k], bool) else r[k] for k in keys] for r in results]
    return _emit(args, out, _write_csv(table))


def _squares_output(args) -> str:
    ex = example_squares(args.rows)
    if args.format == "json":
        return ser.dumps(
            {
                "example": "squares-generator",
                "set": ser.set_to_json(ex.E),
                "generator": ser.generator_to_json(ex.generator),
                "natdens": ser.density_report_to_json(ex.natdens),
                "fin": ser.density_report_to_json(ex.fin),
            }
        ) + "\n"
    lines = [
        "S-set: complement of the squares",
        f"S in F(I_d): {str(ex.natdens.admissible).lower()}",
        f"S in F(Fin): {str(ex.fin.admissible).lower()}",
        f"I_d-density: {_show(ex.natdens.two_sided)}",
        f"Fin: lower {ex.fin.lower}, upper {ex.fin.upper}, limit {_show(ex.fin.two_sided)}",
    ]
    return _quotient_csv(ex.natdens.quotient_table) + "\n".join(lines) + "\n"


def _punctured_output(args) -> str:
    ex = example_punctured(ser.parse_rat(args.x1), ser.parse_rat(args.x2), args.rows)
    if args.format == "json":
        return ser.dumps(
            {
                "example": "punctured-interval",
                "x1": ser.rat(ex.x1),
                "x2": ser.rat(ex.x2),
                "b": ser.rat(ex.b),
                "I_prime": ser.set_to_json(ex.I_prime),
                "i_d_open": ex.open_,
                "i_d_closed": ex.closed,
                "center_class": ex.center_class,
                "center_density": ser.density_report_to_json(ex.center_density),
                "edge_density": ser.density_report_to_json(ex.edge_density),
            }
        ) + "\n"
    lines = [
        f"i_d_open: {str(ex.open_).lower()}",
        f"i_d_closed: {str(ex.closed).lower()}",
        f"upper density of I' at b={ex.b}: {ex.center_density.upper}",
        f"density of the complement at x1={ex.x1}: {_show(ex.edge_density.two_sided)}",
    ]
    return _quotient_csv(ex.edge_density.quotient_table, label="k") + "\n".join(lines) + "\n"


def cmd_examples(args) -> str:
    if args.action == "list":
        return "".join(f"{k}\t{v}\n" for k, v in EXAMPLES.items())
    if args.name is None:
        raise UsageError("examples run needs a name: " + ", ".join(EXAMPLES))
    if args.name == "squares-generator":
        return _squares_output(args)
    return _punctured_output(args)


# -- parser ------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, ideal: bool = True) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--file", help="JSON document holding the named inputs")
    src.add_argument("--inline", help="the same document given inline")
    if ideal:
        p.add_argument("--ideal", default="natdens", help="fin or natdens (default natdens)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="idensity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    json_help = "inline JSON, or @path to a JSON file"

    p = sub.add_parser("density", help="I-density of a set along a generator")
    _common(p)
    p.add_argument("--set", help=json_help)
    p.add_argument("--generator", help=json_help)
    p.add_argument("--rows", type=int, default=10, help="quotient table rows (default 10)")
    p.set_defaults(run=cmd_density)

    p = sub.add_parser("limsup", help="I-limsup, I-liminf and I-limit of a described sequence")
    _common(p, ideal=False)
    p.add_argument("--ideal", default="natdens", help="fin, natdens or both")
    p.add_argument("--sequence", help=json_help)
    p.set_defaults(run=cmd_limsup)

    p = sub.add_parser("classify", help="I-d open / closed verdicts and the density interior")
    _common(p)
    p.add_argument("--set", help=json_help)
    p.add_argument("--point", help="optional point for a local report")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("theta", help="the set of I-density points")
    _common(p)
    p.add_argument("--set", help=json_help)
    p.set_defaults(run=cmd_theta)

    p = sub.add_parser("iac", help="I-approximate continuity at a point or everywhere")
    _common(p)
    p.add_argument("--function", help=json_help)
    p.add_argument("--point")
    p.set_defaults(run=cmd_iac)

    p = sub.add_parser("separate", help="separating function for a closed set and a point")
    _common(p)
    p.add_argument("--closed-set", dest="closed_set", help=json_help)
    p.add_argument("--point")
    p.add_argument("--grid", help="lo:hi:count sample grid, written --grid=lo:hi:count when lo is negative (default: 1001 points around the data)")
    p.add_argument("--r-max", dest="r_max", default="1")
    p.add_argument("--truncation", default="1")
    p.add_argument("--check-iac", dest="check_iac", action="store_true", help="also run the I-AC checker on the grid")
    p.set_defaults(run=cmd_separate)

    p = sub.add_parser("oracle", help="cross-check engine limits against the brute-force horizon oracle")
    _common(p, ideal=False)
    p.add_argument("--ideal", default="both", help="fin, natdens or both (default both)")
    p.add_argument("--sequence", help=json_help)
    p.add_argument("--N", type=int, default=100_000, help="horizon (default 100000)")
    p.add_argument("--delta", type=float, default=1e-2, help="density proxy for natdens (default 0.01)")
    p.add_argument("--step", default="1/1000", help="threshold grid step (default 1/1000)")
    p.add_argument("--tolerance", type=float, default=1e-2)
    p.set_defaults(run=cmd_oracle)

    p = sub.add_parser("examples", help="reproduce the worked examples")
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("name", nargs="?", choices=tuple(EXAMPLES))
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--rows", type=int, default=16)
    p.add_argument("--x1", default="0")
    p.add_argument("--x2", default="1")
    p.set_defaults(run=cmd_examples)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.run(args)
    except (PreconditionError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 2
    except (InvariantViolation, AssertionError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=stderr)
        return 3
    except Exception as exc:  # anything else is a bug, not bad input
        print(f"internal error: {type(exc).__name__}: {exc}", file=stderr)
        return 3
    stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
