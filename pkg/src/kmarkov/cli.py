"""``kmarkov`` command-line front end.

Every subcommand builds an :class:`OutputRecord` (rows plus an optional
summary) and hands it to one of three emitters.  Exit codes: 0 on success,
1 when a verification suite reports failures, 2 on bad usage.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import markov, monotonicity
from .errors import ConsistencyError, KMarkovError
from .ideal_count import count_ideals
from .lattice_poset import relation_word, word_to_shape
from .suites import SUITES, run_suite


@dataclass
class OutputRecord:
    command: str
    rows: list[dict] = field(default_factory=list)
    summary: dict | None = None
    float_digits: int | None = None  # fixed decimals for plain and csv

    def to_jsonable(self) -> dict:
        out = {"command": self.command, "rows": self.rows}
        if self.summary is not None:
            out["summary"] = self.summary
        return out


class UsageError(Exception):
    pass


def _point(text: str) -> tuple[int, int]:
    try:
        x, y = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a point like 3,2, got {text!r}") from None
    return x, y


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers like 0,1,2, got {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected NUM/DEN, got {text!r}") from None


# commands -------------------------------------------------------------------

def cmd_number(args) -> OutputRecord:
    p, q = args.point
    value = markov.markov_number(p, q, args.k)
    word = relation_word((p, q), args.k)
    return OutputRecord("number", [{
        "p": p,
        "q": q,
        "k": args.k,
        "value": value,
        "shape": str(word_to_shape(word)),
        "element_count": word.element_count,
        "coprime": math.gcd(p, q) == 1,
    }])


def cmd_shape(args) -> OutputRecord:
    p, q = args.point
    if (p, q) == (0, 0):
        raise UsageError("the zero vector has no fence poset")
    word = relation_word((p, q), args.k)
    shape = word_to_shape(word)
    return OutputRecord("shape", [{
        "p": p,
        "q": q,
        "k": args.k,
        "word": str(word),
        "shape": str(shape),
        "element_count": word.element_count,
        "ideals": count_ideals(shape),
    }])


def cmd_distance(args) -> OutputRecord:
    a, b = args.start, args.end
    return OutputRecord("distance", [{
        "a": f"{a[0]},{a[1]}",
        "b": f"{b[0]},{b[1]}",
        "k": args.k,
        "distance": markov.distance(a, b, args.k),
    }])


def cmd_line(args) -> OutputRecord:
    line = monotonicity.LineSpec(args.slope, args.intercept)
    if line.a >= 0 and args.x_range is None:
        raise UsageError("non-negative slopes need --x-range LO,HI")
    x_range = tuple(args.x_range) if args.x_range else None
    if args.interior:
        points = monotonicity.enumerate_line(line, x_range, interior=True)
        values = [markov.markov_number(pt.x, pt.y, args.k) for pt in points]
        empirical = monotonicity.empirical_class(values)
        predicted = monotonicity.predicted_class(line.a, args.k)
    else:
        rep = monotonicity.classify_line(line, args.k, x_range)
        points, values = rep.points, rep.values
        empirical, predicted = rep.empirical_class, rep.predicted_class
    rows = []
    for i, (pt, value) in enumerate(zip(points, values)):
        if args.plot:
            rows.append({"x": pt.x, "digits": len(str(value)), "log10_value": round(math.log10(value), 9)})
            continue
        step = "" if i == 0 else (">" if value > values[i - 1] else "<" if value < values[i - 1] else "=")
        ratio_cmp = ""
        if 0 < i < len(values) - 1:
            # compare value[i]/value[i-1] with value[i+1]/value[i]
            left, right = value * value, values[i - 1] * values[i + 1]
            ratio_cmp = "<" if left < right else ">" if left > right else "="
        rows.append({"x": pt.x, "p": pt.x, "q": pt.y, "value": value, "step": step, "ratio_cmp": ratio_cmp})
    summary = {
        "line": str(line),
        "k": args.k,
        "points": len(points),
        "empirical_class": empirical.value,
        "predicted_class": predicted.value,
        "ratios_increasing": monotonicity.ratios_strictly_increase(values),
    }
    return OutputRecord("line", rows, summary)


def cmd_thresholds(args) -> OutputRecord:
    rows = []
    for k in args.k:
        t = monotonicity.thresholds(k)
        rows.append({
            "k": k,
            "upper": round(t.U, args.precision),
            "lower": round(t.L, args.precision),
            "gray_width": round(t.gray_width, args.precision),
        })
    return OutputRecord("thresholds", rows, float_digits=args.precision)


def cmd_tree(args) -> OutputRecord:
    rows = [
        {"x": t.x, "y": t.y, "z": t.z, "labels": " ".join(map(str, t.label)), "middle_label": str(t.label[1])}
        for t in markov.vieta_tree(args.k, args.depth)
    ]
    return OutputRecord("tree", rows, {"k": args.k, "depth": args.depth, "triples": len(rows)})


def _jsonable_slope(s):
    return str(s) if isinstance(s, Fraction) else s


def cmd_wedge(args) -> OutputRecord:
    p, q = args.point
    if args.slopes:
        low, high = args.slopes
    else:
        t = monotonicity.thresholds(args.k)
        low, high = t.L, t.U
    res = monotonicity.wedge_count(p, q, low, high, coprime_only=args.coprime, collect_points=args.list)
    rows = [{"p": pt.x, "q": pt.y} for pt in res.points]
    summary = {"apex": f"{p},{q}", "k": args.k, "slope_low": _jsonable_slope(low), "slope_high": _jsonable_slope(high),
               "coprime_only": args.coprime, "count": res.count}
    return OutputRecord("wedge", rows, summary)


def cmd_compare(args) -> OutputRecord:
    a, b = args.points
    table = monotonicity.compare_orders(a, b, args.k)
    rows = [{"k": c.k, "value_a": c.value_a, "value_b": c.value_b, "relation": c.relation} for c in table]
    flips = [table[i].k for i in range(1, len(table)) if table[i].sign != table[i - 1].sign]
    summary = {"a": f"{a[0]},{a[1]}", "b": f"{b[0]},{b[1]}", "flip_at": flips}
    return OutputRecord("compare", rows, summary)


def cmd_verify(args) -> OutputRecord:
    res = run_suite(args.suite, args.seed, args.cases)
    repro = f"kmarkov --seed {args.seed} verify --suite {args.suite}"
    if args.cases is not None:
        repro += f" --cases {args.cases}"
    rows = [
        {"check": f["check"], "inputs": json.dumps({k: v for k, v in f.items() if k != "check"}, sort_keys=True)}
        for f in res.failures
    ]
    summary = {"suite": res.name, "seed": res.seed, "cases": res.cases, "skipped": res.skipped,
               "failures": len(res.failures), "repro": repro}
    return OutputRecord("verify", rows, summary)


# emitters -------------------------------------------------------------------

def _plain_value(v, digits: int | None = None) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return repr(v) if digits is None else f"{v:.{digits}f}"
    if isinstance(v, list):
        return ",".join(map(str, v)) or "-"
    return str(v) if v != "" else "-"


def emit(record: OutputRecord, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record.to_jsonable(), indent=2) + "\n"
    buf = io.StringIO()
    if fmt == "csv":
        rows = [{"row": "data", **r} for r in record.rows]
        if record.summary is not None:
            rows.append({"row": "summary", **record.summary})
        fields: list[str] = []
        for r in rows:
            fields.extend(key for key in r if key not in fields)
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({key: _csv_value(val, record.float_digits) for key, val in r.items()})
        return buf.getvalue()
    if record.rows:
        keys = list(record.rows[0])
        cells = [[_plain_value(r.get(key, ""), record.float_digits) for key in keys] for r in record.rows]
        widths = [max(len(key), *(len(row[i]) for row in cells)) for i, key in enumerate(keys)]
        buf.write("  ".join(key.ljust(w) for key, w in zip(keys, widths)).rstrip() + "\n")
        for row in cells:
            buf.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")
    if record.summary is not None:
        for key, val in record.summary.items():
            buf.write(f"{key}: {_plain_value(val)}\n")
    return buf.getvalue()


def _csv_value(v, digits: int | None = None):
    if isinstance(v, list):
        return " ".join(map(str, v))
    if isinstance(v, float) and digits is not None:
        return f"{v:.{digits}f}"
    return v


# parser ---------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let values such as -5/4 or -3,2 through as arguments
        self._negative_number_matcher = re.compile(r"^-\d")

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kmarkov", description="Generalized k-Markov numbers from lattice fence posets.")
    parser.add_argument("--format", choices=("csv", "json", "plain"), default="plain")
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("number", help="m^(k) at a lattice point")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--point", type=_point, required=True)
    p.set_defaults(func=cmd_number)

    p = sub.add_parser("shape", help="relation word and shape of the fence poset")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--point", type=_point, required=True)
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("distance", help="k-Markov distance between two lattice points")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--from", dest="start", type=_point, required=True)
    p.add_argument("--to", dest="end", type=_point, required=True)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("line", help="values along y = ax + b")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--slope", type=_rational, required=True)
    p.add_argument("--intercept", type=_rational, required=True)
    p.add_argument("--x-range", type=_int_list, default=None, help="LO,HI for non-negative slopes")
    p.add_argument("--interior", action="store_true", help="keep only points with p > q > 0")
    p.add_argument("--plot", action="store_true", help="emit x, digits, log10_value columns")
    p.set_defaults(func=cmd_line)

    p = sub.add_parser("thresholds", help="U(k), L(k) and the gray width")
    p.add_argument("--k", type=_int_list, default=[0, 1, 2, 3, 100, 1000, 10000])
    p.add_argument("--precision", type=int, default=6)
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("tree", help="k-Markov triples of the Vieta tree")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("wedge", help="points whose slope to the apex lies in the gray zone")
    p.add_argument("--point", type=_point, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--slopes", type=lambda s: [_rational(t) for t in s.split(",")], default=None,
                   help="LOW,HIGH instead of (L(k), U(k))")
    p.add_argument("--coprime", action="store_true")
    p.add_argument("--list", action="store_true", help="also list the points")
    p.set_defaults(func=cmd_wedge)

    p = sub.add_parser("compare", help="order of two values across several k")
    p.add_argument("--points", type=_point, nargs=2, required=True)
    p.add_argument("--k", type=_int_list, default=[0, 1])
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="run a seeded verification suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--cases", type=int, default=None)
    # also accepted after the subcommand; SUPPRESS keeps the global value otherwise
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None) -> tuple[int, OutputRecord | None, str]:
    """Parse, dispatch and render; returns ``(exit_code, record, text)``."""
    args = build_parser().parse_args(argv)
    try:
        record = args.func(args)
    except ConsistencyError:
        raise
    except (UsageError, KMarkovError) as exc:
        return 2, None, f"kmarkov: error: {exc}\n"
    text = emit(record, args.format)
    code = 1 if record.command == "verify" and record.summary["failures"] else 0
    return code, record, text


def main(argv: list[str] | None = None) -> int:
    code, record, text = run(argv)
    (sys.stdout if record is not None else sys.stderr).write(text)
    if code == 1:
        sys.stderr.write(f"reproduce with: {record.summary['repro']}\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
