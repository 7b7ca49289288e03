"""Command-line front end.

Every subcommand prints one report::

    {"command": [...], "result": {...}, "timing": null, "version": "..."}

Exit status: 0 on success, 1 on a domain error (the report then carries
``error`` instead of ``result``), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .diagram import count_colorings, eliminate_generators, fundamental_presentation, lens_diagram, parse_diagram
from .errors import RiskitError
from .groups import (
    FiniteGroup,
    describe_group,
    enumerate_group_homs,
    group_from_json,
    iter_group_homs,
    is_effective_hom,
    cyclic_group,
    l_of_faithful,
    make_group,
    permutation_group_to_group,
    r_of_group,
)
from .presentations import (
    DEFAULT_MAX_WORDS,
    DEFAULT_QUOTIENT_DEPTH,
    QuotientResult,
    check_pi1_conditions,
    finite_quotient,
)
from .quasigroup import (
    DEFAULT_ENUMERATION_BOUND,
    FiniteRightQuasigroup,
    check_axioms,
    count_homomorphisms,
    cycle_type,
    enumerate_risandles,
    find_isomorphism,
    is_faithful,
    rmult_group,
    table_from_json,
)
from .todd_coxeter import DEFAULT_MAX_COSETS
from .diagram import DEFAULT_LIST_BUDGET
from .groups import DEFAULT_HOM_BOUND
from .words import format_word

BUDGET_ENV = "RISKIT_BUDGET_SCALE"


class UsageError(Exception):
    pass


def budget_scale() -> float:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw == "":
        return 1.0
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be a positive number, got {raw!r}") from None
    if not value > 0:
        raise UsageError(f"{BUDGET_ENV} must be a positive number, got {raw!r}")
    return value


def scaled(value: int) -> int:
    return max(1, math.ceil(value * budget_scale()))


# -- inputs -------------------------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def load_table(path: str) -> FiniteRightQuasigroup:
    """A table JSON file, or a saved report whose result holds a table."""
    text = _read(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = None
    if isinstance(data, dict) and "table" not in data and isinstance(data.get("result"), dict):
        text = json.dumps(data["result"])
    return table_from_json(text)


def load_group(spec: str) -> FiniteGroup:
    """A group JSON file, or a spec such as ``Z6``, ``S3``, ``Z2xZ4``."""
    if Path(spec).is_file():
        return group_from_json(_read(spec))
    return make_group(spec)


def _table(X: FiniteRightQuasigroup) -> list[list[int]]:
    return [list(r) for r in X.table]


# -- subcommands ----------------------------------------------------------------------

def cmd_check(args) -> dict:
    X = load_table(args.table)
    return {"order": X.order, **check_axioms(X).as_dict()}


def cmd_rmult(args) -> dict:
    X = load_table(args.table)
    P = rmult_group(X, allow_empty=True)
    out: dict[str, Any] = {
        "degree": P.degree,
        "order": P.order,
        "generators": [list(p) for p in X.columns],
        "cycle_types": [list(cycle_type(p)) for p in X.columns],
    }
    out["description"] = describe_group(permutation_group_to_group(P)) if X.order else "Z1"
    return out


def cmd_functor(args) -> dict:
    if args.which == "r":
        G = load_group(args.input)
        X = r_of_group(G)
        return {"functor": "R", "group_order": G.order, "order": X.order, "table": _table(X)}
    X = load_table(args.input)
    G = l_of_faithful(X)
    return {
        "functor": "L",
        "order": G.order,
        "identity": G.identity,
        "mul": [list(r) for r in G.mul],
        "description": describe_group(G),
    }


def cmd_enumerate(args) -> dict:
    found = enumerate_risandles(args.n, up_to_iso=args.up_to_iso, bound=args.bound)
    if args.faithful:
        found = [X for X in found if is_faithful(X)]
    return {
        "n": args.n,
        "up_to_iso": args.up_to_iso,
        "faithful_only": args.faithful,
        "count": len(found),
        "structures": [_table(X) for X in found],
    }


def cmd_iso(args) -> dict:
    A, B = load_table(args.a), load_table(args.b)
    phi = find_isomorphism(A, B)
    return {"isomorphic": phi is not None, "map": list(phi) if phi is not None else None}


def cmd_color(args) -> dict:
    D = parse_diagram(_read(args.diagram))
    R = load_table(args.table)
    res = count_colorings(D, R, list_colorings=args.list, budget=scaled(args.budget))
    out: dict[str, Any] = {"arcs": D.arc_count, "crossings": len(D.crossings), "target_order": R.order, "count": res.count}
    if args.list:
        out["colorings"] = [list(c) for c in res.colorings]
    return out


def _quotient_payload(q: QuotientResult) -> dict:
    out: dict[str, Any] = {"status": q.status.value}
    if q.finite:
        rep = check_axioms(q.structure)
        out.update(
            order=q.order,
            method=q.method,
            faithful=rep.is_faithful,
            quandle=rep.is_quandle,
            rmult=describe_group(permutation_group_to_group(rmult_group(q.structure))),
            generator_images=list(q.generator_images),
            element_words=[format_word(w) for w in q.element_words],
            table=_table(q.structure),
        )
    else:
        out["reason"] = q.reason
    out["method_agreement"] = q.method_agreement.as_dict() if q.method_agreement else None
    return out


def _budgets(args) -> dict:
    return {"depth": scaled(args.depth), "max_words": scaled(args.max_words), "max_cosets": scaled(args.max_cosets)}


def cmd_fundamental(args) -> dict:
    D = parse_diagram(_read(args.diagram))
    P = fundamental_presentation(D)
    out: dict[str, Any] = {
        "generators": P.generator_count,
        "relations": [[format_word(a), format_word(b)] for a, b in P.relations],
    }
    if args.eliminate:
        small, words = eliminate_generators(P)
        out["reduced"] = {
            "generators": small.generator_count,
            "relations": [[format_word(a), format_word(b)] for a, b in small.relations],
            "arc_words": [format_word(w) for w in words],
        }
    if args.quotient:
        out["quotient"] = _quotient_payload(finite_quotient(P, **_budgets(args)))
    return out


def cmd_lens(args) -> dict:
    n = args.n
    if n < 1:
        raise UsageError("lens needs n >= 1")
    D = lens_diagram(n)
    P, _ = eliminate_generators(fundamental_presentation(D))
    q = finite_quotient(P, **_budgets(args))
    out: dict[str, Any] = {
        "n": n,
        "presentation": {
            "generators": P.generator_count,
            "relations": [[format_word(a), format_word(b)] for a, b in P.relations],
        },
        "quotient": _quotient_payload(q),
    }
    if args.all_checks:
        pi1 = load_group(args.pi1) if args.pi1 else cyclic_group(n)
        report = check_pi1_conditions(P, pi1, quotient=q, **_budgets(args))
        out["pi1"] = describe_group(pi1)
        out["conditions"] = report.as_dict()
    return out


def cmd_effective(args) -> dict:
    if args.m < 1 or args.n < 1:
        raise UsageError("effective needs m, n >= 1")
    G, H = cyclic_group(args.m), cyclic_group(args.n)
    effective = [phi.images[1 % args.m] for phi in iter_group_homs(G, H) if is_effective_hom(phi)]
    return {
        "m": args.m,
        "n": args.n,
        "exists": bool(effective),
        "effective_generator_images": sorted(effective),
        "divides": args.m % args.n == 0,
    }


def cmd_homcount(args) -> dict:
    G, H = load_group(args.g), load_group(args.h)
    homs = enumerate_group_homs(G, H, bound=scaled(args.bound))
    out: dict[str, Any] = {"source_order": G.order, "target_order": H.order, "group_homs": len(homs)}
    if args.cross_check_risandle:
        k = count_homomorphisms(r_of_group(G), r_of_group(H))
        out["risandle_homs"] = k
        out["agree"] = k == len(homs)
    return out


# -- parser -------------------------------------------------------------------------------

def _add_quotient_budgets(p: argparse.ArgumentParser) -> None:
    p.add_argument("--depth", type=int, default=DEFAULT_QUOTIENT_DEPTH, help="saturation rounds (default %(default)s)")
    p.add_argument("--max-words", type=int, default=DEFAULT_MAX_WORDS, help="word/point budget (default %(default)s)")
    p.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS, help="coset budget (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", default=argparse.SUPPRESS)
    fmt.add_argument("--text", dest="format", action="store_const", const="text", default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS, help="record wall-clock time")

    parser = argparse.ArgumentParser(prog="riskit", description="Finite risandles, presentations and colorings.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "axiom report for a table")
    p.add_argument("table")
    p = add("rmult", cmd_rmult, "right multiplication group of a table")
    p.add_argument("table")
    p = add("functor", cmd_functor, "R of a group or L of a faithful risandle")
    p.add_argument("which", choices=["r", "l"])
    p.add_argument("input", help="group JSON / group spec for r, table JSON for l")
    p = add("enumerate", cmd_enumerate, "all risandles of order n")
    p.add_argument("n", type=int)
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--faithful", action="store_true")
    p.add_argument("--bound", type=int, default=DEFAULT_ENUMERATION_BOUND, help="largest n allowed (default %(default)s)")
    p = add("iso", cmd_iso, "isomorphism between two tables")
    p.add_argument("a")
    p.add_argument("b")
    p = add("color", cmd_color, "count colorings of a diagram by a risandle")
    p.add_argument("diagram")
    p.add_argument("table")
    p.add_argument("--list", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_LIST_BUDGET, help="max colorings listed (default %(default)s)")
    p = add("fundamental", cmd_fundamental, "presentation of a diagram")
    p.add_argument("diagram")
    p.add_argument("--quotient", action="store_true")
    p.add_argument("--eliminate", action="store_true")
    _add_quotient_budgets(p)
    p = add("lens", cmd_lens, "lens-space pipeline")
    p.add_argument("n", type=int)
    p.add_argument("--all-checks", action="store_true")
    p.add_argument("--pi1", help="group to compare against (default Zn)")
    _add_quotient_budgets(p)
    p = add("effective", cmd_effective, "effective homomorphisms Z/m -> Z/n")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p = add("homcount", cmd_homcount, "count group homomorphisms")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--cross-check-risandle", action="store_true")
    p.add_argument("--bound", type=int, default=DEFAULT_HOM_BOUND, help="max |G|*|H| (default %(default)s)")
    return parser


# -- output -------------------------------------------------------------------------------

def render_text(value: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(value, list):
        return "\n".join(f"{pad}- {_scalar(v)}" if _flat(v) or not isinstance(v, (dict, list)) else render_text(v, indent + 1) for v in value)
    return pad + _scalar(value)


def _flat(v: Any) -> bool:
    return isinstance(v, list) and all(not isinstance(u, (dict, list)) for u in v)


def _scalar(v: Any) -> str:
    if isinstance(v, list):
        return " ".join(_scalar(u) for u in v) if _flat(v) else json.dumps(v)
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def run(argv: Sequence[str] | None = None) -> tuple[int, dict | None, str]:
    """Parse and execute; returns ``(exit code, report, rendered output)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None, ""
    fmt = getattr(args, "format", "json")
    timing = getattr(args, "timing", False)
    report: dict[str, Any] = {"command": argv, "version": __version__}
    start = time.perf_counter()
    try:
        report["result"] = args.func(args)
        code = 0
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"riskit: error: {exc}", file=sys.stderr)
        return 2, None, ""
    except RiskitError as exc:
        report["error"] = {"code": exc.code, "message": str(exc)}
        print(f"riskit: {exc.code}: {exc}", file=sys.stderr)
        code = 1
    report["timing"] = round(time.perf_counter() - start, 6) if timing else None
    if fmt == "text":
        body = {"command": " ".join(argv), **{k: v for k, v in report.items() if k != "command"}}
        rendered = render_text(body) + "\n"
    else:
        rendered = json.dumps(report, sort_keys=True, indent=2) + "\n"
    return code, report, rendered


def main(argv: Sequence[str] | None = None) -> int:
    code, _, rendered = run(argv)
    sys.stdout.write(rendered)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
