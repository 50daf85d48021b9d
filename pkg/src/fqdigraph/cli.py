"""Command-line front end.

Exit status: 0 success, 2 input or schema error, 3 theorem/oracle mismatch
(or a failed lemma check), 4 resource cap exceeded.  Reports go to stdout or
``--output``; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import IO, Any, Iterator, Optional, Sequence

from .errors import InputError, SchemaError, TooLarge
from .field import GF
from .fplinalg import COSET_CAP
from .funcspec import FuncSpec, load_document, parse_field
from .monomial import analyze_monomial, lemma_checks
from .oracle import ARC_CAP, build_explicit, diameter, partition_to_json, scc, write_dot
from .theorem import analyze, component_of, materialize
from .verify import DEFAULT_LS, DEFAULT_QS, sweep, verify_case
from .vertices import Vertex, vertex_index

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_MISMATCH = 3
EXIT_CAP = 4


class _Mismatch(Exception):
    pass


def _env_cap(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


# -- report emission ------------------------------------------------------------


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        if all(not isinstance(v, (list, tuple, dict)) for v in value):
            return ";".join(_cell(v) for v in value)
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return "" if value is None else str(value)


def _csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "rows" in report:
        rows = report["rows"]
        header = list(rows[0]) if rows else []
        w.writerow(header)
        for r in rows:
            w.writerow([_cell(r.get(k)) for k in header])
    elif "count" in report and "orders" in report:
        w.writerow(["count", "orders"])
        w.writerow([report["count"], _cell(report["orders"])])
    else:
        keys = sorted(report)
        w.writerow(keys)
        w.writerow([_cell(report[k]) for k in keys])
    return buf.getvalue()


def _text(report: dict) -> str:
    lines = []
    if "strong" in report:
        lines.append(f"strong: {'yes' if report['strong'] else 'no'}")
    if "summary" in report:
        lines.append(str(report["summary"]))
    for k in sorted(report):
        if k in ("strong", "summary", "rows"):
            continue
        lines.append(f"{k}: {_cell(report[k])}")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _csv(report)
    if fmt == "text":
        return _text(report)
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(report: dict, fmt: str = "json", sink: Optional[IO[str]] = None) -> None:
    (sink or sys.stdout).write(render(report, fmt))


# -- input handling ---------------------------------------------------------------


def _read_document(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON in {path}: {exc}") from None


def _inline_field(args: argparse.Namespace) -> GF:
    if args.p is None:
        raise SchemaError("need --input or inline --p/--e")
    doc = {"p": args.p, "e": args.e if args.e is not None else 1}
    if args.modulus is not None:
        doc["modulus"] = args.modulus
    return parse_field(doc)


def _load(args: argparse.Namespace) -> tuple[GF, FuncSpec]:
    inline = any(getattr(args, k, None) is not None for k in ("p", "m", "n"))
    if args.input is not None and inline:
        raise SchemaError("give either --input or inline flags, not both")
    if args.input is not None:
        return load_document(_read_document(args.input))
    ctx = _inline_field(args)
    if args.m is None or args.n is None:
        raise SchemaError("inline input needs --m and --n (monomial)")
    return ctx, FuncSpec.monomial(ctx, args.m, args.n)


@contextmanager
def _sink(path: Optional[str]) -> Iterator[IO[str]]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        try:
            fh = open(path, "w")
        except OSError as exc:
            raise InputError(f"cannot write {path}: {exc}") from None
        with fh:
            yield fh


# -- subcommands --------------------------------------------------------------------


def _cmd_analyze(args) -> dict:
    ctx, f = _load(args)
    report = analyze(ctx, f).to_report()
    report["form"] = f.form
    if args.vertex is not None:
        v = Vertex(args.vertex[0], tuple(args.vertex[1:]))
        desc = component_of(ctx, f, v)
        verts = materialize(ctx, f, desc, cap=args.coset_cap)
        report["component"] = {
            "vertex": vertex_index(ctx.q, v),
            "half_a": list(desc.half_a),
            "half_b": None if desc.half_b is None else list(desc.half_b),
            "degenerate": desc.degenerate,
            "order": len(verts),
            "vertices": sorted(vertex_index(ctx.q, w) for w in verts),
        }
    return report


def _cmd_oracle(args) -> dict:
    ctx, f = _load(args)
    g = build_explicit(ctx, f, args.arc_cap)
    part = scc(g)
    if args.dot:
        write_dot(g, args.dot)
    return {
        "count": len(part),
        "orders": sorted(len(c) for c in part),
        "strong": len(part) == 1,
        "partition": partition_to_json(part),
    }


def _cmd_verify(args) -> dict:
    if args.sweep is not None:
        if args.input is not None:
            raise SchemaError("--sweep generates its own inputs; drop --input")
        results = sweep(
            args.sweep,
            args.seed,
            qs=args.q_list,
            ls=args.l_list,
            structured=args.structured,
            arc_cap=args.arc_cap,
            jobs=args.jobs,
        )
        bad = [r for r in results if not r.ok]
        report = {
            "seed": args.seed,
            "cases": len(results),
            "mismatches": len(bad),
            "agree": not bad,
            "summary": f"{len(results) - len(bad)}/{len(results)} cases agree (seed {args.seed})",
            "rows": [r.to_report() for r in results],
        }
        for r in bad:
            print(f"mismatch in case q={r.key[0]} l={r.key[1]} i={r.key[2]} seed={r.key[3]}: {r.detail}", file=sys.stderr)
        if bad:
            raise _Mismatch(report)
        return report
    ctx, f = _load(args)
    r = verify_case(ctx, f, arc_cap=args.arc_cap)
    report = r.to_report()
    report["strong"] = r.count == 1
    if r.ok:
        report["summary"] = f"partitions agree, {r.oracle_count} components"
        return report
    report["summary"] = f"theorem and oracle disagree: {r.detail}"
    print(report["summary"], file=sys.stderr)
    raise _Mismatch(report)


def _cmd_monomial(args) -> dict:
    if args.input is not None:
        ctx, f = _load(args)
        if f.form != "monomial":
            raise SchemaError("the monomial subcommand needs a monomial document")
        return analyze_monomial(ctx.p, ctx.e, f.m, f.n).to_report()
    if None in (args.p, args.m, args.n):
        raise SchemaError("monomial needs --p, --m, --n (and optionally --e)")
    return analyze_monomial(args.p, args.e or 1, args.m, args.n).to_report()


def _cmd_lemmas(args) -> dict:
    if args.input is not None:
        ctx, f = _load(args)
        if f.form != "monomial":
            raise SchemaError("the lemmas subcommand needs a monomial document")
        m, n = f.m, f.n
    else:
        ctx = _inline_field(args)
        if args.m is None or args.n is None:
            raise SchemaError("lemmas needs --m and --n")
        m, n = args.m, args.n
    report = lemma_checks(ctx, m, n).to_report()
    if not report["ok"]:
        raise _Mismatch(report)
    return report


def _cmd_diameter(args) -> dict:
    ctx, f = _load(args)
    g = build_explicit(ctx, f, args.arc_cap)
    return {"diameter": diameter(g), "vertices": g.n, "strong": True}


def _cmd_export_dot(args) -> Optional[dict]:
    ctx, f = _load(args)
    g = build_explicit(ctx, f, args.arc_cap)
    if args.output and args.output != "-":
        write_dot(g, args.output)
    else:
        write_dot(g, sys.stdout)
    return None


COMMANDS = {
    "analyze": _cmd_analyze,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
    "monomial": _cmd_monomial,
    "lemmas": _cmd_lemmas,
    "diameter": _cmd_diameter,
    "export-dot": _cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fqdigraph",
        description="Strong components of algebraically defined digraphs D(q; f) over finite fields.",
    )
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("--input", "-i", help="JSON document path ('-' for stdin)")
    src.add_argument("--p", type=int, help="characteristic")
    src.add_argument("--e", type=int, help="extension degree (default 1)")
    src.add_argument("--modulus", type=_int_list, help="irreducible modulus, constant term first")
    src.add_argument("--m", type=int, help="monomial x-exponent")
    src.add_argument("--n", type=int, help="monomial y-exponent")
    common.add_argument("--output", "-o", help="output path (default stdout)")
    common.add_argument("--format", "-f", choices=("json", "csv", "text"), default="json")
    common.add_argument(
        "--arc-cap", type=int, default=_env_cap("FQDIGRAPH_ARC_CAP", ARC_CAP),
        help="largest explicit digraph to build, in arcs",
    )
    common.add_argument(
        "--coset-cap", type=int, default=_env_cap("FQDIGRAPH_COSET_CAP", COSET_CAP),
        help="largest coset or component to materialise",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common], help="closed-form component structure")
    a.add_argument("--vertex", type=_int_list, help="also list the component of this vertex (x1,x2,...)")
    o = sub.add_parser("oracle", parents=[common], help="explicit Tarjan SCC partition")
    o.add_argument("--dot", help="also write the digraph in DOT format here")
    v = sub.add_parser("verify", parents=[common], help="compare closed form against the oracle")
    v.add_argument("--sweep", type=int, help="number of seeded tables per (q, l)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--q-list", type=_int_list, default=list(DEFAULT_QS))
    v.add_argument("--l-list", type=_int_list, default=list(DEFAULT_LS))
    v.add_argument("--structured", action="store_true", help="draw low-rank tables instead of uniform ones")
    v.add_argument("--jobs", type=int, default=1)
    sub.add_parser("monomial", parents=[common], help="integer-only structure of D(q; m, n)")
    sub.add_parser("lemmas", parents=[common], help="enumerative subgroup and subfield checks")
    sub.add_parser("diameter", parents=[common], help="diameter of a strong digraph by all-pairs BFS")
    sub.add_parser("export-dot", parents=[common], help="write the explicit digraph as DOT")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
        status = EXIT_OK
    except _Mismatch as exc:
        report = exc.args[0]
        status = EXIT_MISMATCH
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if report is not None:
        try:
            with _sink(args.output) as out:
                emit_report(report, args.format, out)
        except InputError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    return status


if __name__ == "__main__":
    sys.exit(main())
