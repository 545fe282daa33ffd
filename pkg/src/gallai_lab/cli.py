"""Command-line entry point: ``gallai-lab <command> ...``.

Exit status: 0 on success, 1 on a precondition or validation error (or a
failed ``reproduce``), 2 when a search budget ran out before completion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import checks, formulas
from .coloring import EdgeColoring
from .constructions import CONSTRUCTIONS, ConstructionClaimError, build_construction
from .patterns import TheoremContradiction, count_monochromatic, count_rainbow, parse_pattern
from .search import SearchTask, run_task
from .structure import (classify_rainbow_k13_free, classify_rainbow_p5_free, gallai_partition,
                        local_partition, observation_checks)

EXIT_OK, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2

# constructions run by ``verify constructions``
VERIFY_CASES = checks.LOWER_BOUND_CASES + (
    ("sequential-cones", {"k": 6}), ("stripes-multiplicity", {"n_list": (2, 2)}),
    ("stripes-multiplicity", {"n_list": (3, 2)}), ("gm-k3-matching", {"k": 6, "n": 2}),
    ("GM3-K13", {"n": 2}), ("prop-k2n", {"k": 5, "n": 4}), ("thm-k3n1", {"k": 5, "n": 6}),
    ("lemcount", {"k": 4}),
)


class CliError(Exception):
    pass


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _cell(v):
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(v, sort_keys=True)
    return "" if v is None else str(v)


def _as_rows(data):
    if isinstance(data, list) and all(isinstance(r, dict) for r in data):
        return data
    if isinstance(data, dict):
        return [{"field": k, "value": v} for k, v in data.items()]
    return [{"value": data}]


def render(data, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    rows = _as_rows(data)
    fields = []
    for r in rows:
        fields.extend(k for k in r if k not in fields)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(r.get(k)) for k in fields})
        return buf.getvalue()
    if fmt == "table":
        cells = [[_cell(r.get(k)) for k in fields] for r in rows]
        widths = [max([len(f)] + [len(c[i]) for c in cells]) for i, f in enumerate(fields)]
        lines = ["  ".join(f.ljust(w) for f, w in zip(fields, widths)).rstrip()]
        lines.append("  ".join("-" * w for w in widths))
        lines.extend("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells)
        return "\n".join(lines) + "\n"
    raise CliError(f"unknown format {fmt!r}")


def emit(data, args, default_format: str = "json"):
    text = render(data, args.format or default_format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _param_value(text: str):
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    if "," in text:
        return _int_list(text)
    try:
        return int(text)
    except ValueError:
        return text


def _params(pairs) -> dict:
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise CliError(f"parameter {item!r} is not of the form name=value")
        name, value = item.split("=", 1)
        out[name.strip().replace("-", "_")] = _param_value(value.strip())
    return out


def _read_coloring(path: str) -> EdgeColoring:
    if path == "-":
        return EdgeColoring.from_json(sys.stdin.read())
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read coloring: {exc}") from exc
    return EdgeColoring.from_json(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_construct(args) -> int:
    if args.list:
        emit([{"id": cid, "params": list(d.params), "role": d.role} for cid, d in CONSTRUCTIONS.items()], args)
        return EXIT_OK
    if not args.id:
        raise CliError("construct needs an id (or --list)")
    params = _params(args.param)
    for name in ("n", "k", "base", "mixed_seed"):
        if getattr(args, name) is not None:
            params[name] = getattr(args, name)
    if args.sizes is not None:
        params["sizes"] = args.sizes
    if args.n_list is not None:
        params["n_list"] = args.n_list
    rep = build_construction(args.id, params, verify=not args.no_verify, strict=args.strict)
    emit(rep.to_dict(), args)
    return EXIT_OK


def cmd_count(args) -> int:
    c = _read_coloring(args.coloring)
    out = {"n": c.n, "k": c.k}
    if args.rainbow:
        p = parse_pattern(args.rainbow)
        out["rainbow"] = {"pattern": str(p), "count": count_rainbow(c, p)}
    if args.mono:
        p = parse_pattern(args.mono)
        colors = [args.color] if args.color else list(range(1, c.k + 1))
        per = {str(col): count_monochromatic(c, p, col) for col in colors}
        out["mono"] = {"pattern": str(p), "per_color": per, "total": sum(per.values())}
    if len(out) == 2:
        raise CliError("count needs --rainbow and/or --mono")
    emit(out, args)
    return EXIT_OK


def cmd_classify(args) -> int:
    c = _read_coloring(args.coloring)
    kind = args.kind
    if kind == "gallai":
        out = gallai_partition(c).to_dict()
    elif kind == "p5":
        out = {"cases": [{"case": s.case, "renumbering": {str(a): b for a, b in s.renumbering.items()},
                          "witness": s.witness} for s in classify_rainbow_p5_free(c)]}
    elif kind == "k13":
        s = classify_rainbow_k13_free(c)
        out = {"case": s.case, "renumbering": {str(a): b for a, b in s.renumbering.items()}, "witness": s.witness}
    elif kind == "local":
        if args.k is None:
            raise CliError("classify local needs --k")
        out = local_partition(c, args.k).to_dict()
    else:
        out = observation_checks(c)
    emit(out, args)
    return EXIT_OK


def cmd_formula(args) -> int:
    if args.list or not args.id:
        emit([{"id": fid, "params": list(names)} for fid, (_, names) in formulas.FORMULAS.items()], args)
        return EXIT_OK
    res = formulas.evaluate(args.id, _params(args.param))
    emit(res.to_dict(), args)
    return EXIT_OK


_SEARCH_KINDS = {"ramsey": "ramsey", "gr": "gallai_ramsey", "gm": "multiplicity_GM", "m": "multiplicity_M",
                 "local": "local_ramsey", "realizations": "realizations"}


def build_task(args) -> SearchTask:
    kind = _SEARCH_KINDS[args.kind]
    Hs = [parse_pattern(h) for h in args.H or []]
    G = parse_pattern(args.G) if args.G else None
    per_color: tuple = ()
    if kind in ("ramsey", "multiplicity_M") or (kind == "realizations" and args.of == "M"):
        if not Hs:
            raise CliError(f"search {args.kind} needs one --H per color")
        per_color = tuple(Hs)
        H = None
    else:
        if len(Hs) != 1:
            raise CliError(f"search {args.kind} needs exactly one --H")
        H = Hs[0]
        if kind != "local_ramsey" and G is None:
            raise CliError(f"search {args.kind} needs --G")
        if args.k is None:
            raise CliError(f"search {args.kind} needs --k")
    exact = None
    if args.exact:
        exact = True
    elif args.at_most:
        exact = False
    return SearchTask(kind, G=G, H=H, per_color=per_color, k=args.k, n=args.n, n_max=args.n_max, mode=args.mode,
                      symmetry=args.symmetry, exact=exact, jobs=args.jobs, checkpoint=args.checkpoint,
                      seed=args.seed, restarts=args.restarts, steps=args.steps, max_nodes=args.max_nodes,
                      max_seconds=args.max_seconds, of=args.of)


def cmd_search(args) -> int:
    rep = run_task(build_task(args))
    emit(rep.to_dict(deterministic=args.deterministic), args)
    if args.mode == "exhaustive" and not rep.complete:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.what == "formulas":
        rows = checks.formula_ledger()
        emit(rows, args, default_format="csv")
        return EXIT_OK
    rows = []
    for cid, params in VERIFY_CASES:
        rep = build_construction(cid, params)
        rows.append({"id": cid, "params": rep.to_dict()["params"], "order": rep.coloring.n,
                     "claims": "; ".join(f"{r.claim.describe()}: {r.observed}" for r in rep.claims),
                     "holds": rep.all_hold, "notes": "; ".join(rep.notes)})
    emit(rows, args, default_format="csv")
    return EXIT_OK


def _check_row(res: checks.CheckResult, deterministic: bool) -> dict:
    d = res.to_dict(deterministic)
    d.pop("details")
    return d


def cmd_reproduce(args) -> int:
    if args.list or not args.id:
        emit([{"id": cid} for cid in checks.SCENARIOS],
             args, default_format="table")
        return EXIT_OK
    try:
        res = checks.run_scenario(args.id)
    except KeyError as exc:
        raise CliError(str(exc.args[0])) from exc
    emit(res.to_dict(args.deterministic), args)
    return EXIT_OK if res.ok else EXIT_INVALID


def cmd_report(args) -> int:
    ids = args.only or list(checks.SCENARIOS)
    unknown = [i for i in ids if i not in checks.SCENARIOS]
    if unknown:
        raise CliError(f"unknown scenarios: {', '.join(unknown)}")
    rows = []
    for cid in ids:
        if cid in (args.skip or []):
            continue
        rows.append(_check_row(checks.run_scenario(cid), args.deterministic))
    emit(rows, args, default_format="table")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default=None)
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--deterministic", action="store_true", help="omit timing fields")

    parser = argparse.ArgumentParser(prog="gallai-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a named coloring and check its claims")
    p.add_argument("id", nargs="?")
    p.add_argument("--list", action="store_true")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--base", type=int)
    p.add_argument("--sizes", type=_int_list)
    p.add_argument("--n-list", type=_int_list)
    p.add_argument("--mixed-seed", type=int)
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--strict", action="store_true", help="fail when a claim does not hold")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("count", parents=[common], help="count rainbow / monochromatic copies in a coloring")
    p.add_argument("--coloring", required=True, help="coloring JSON file, or - for stdin")
    p.add_argument("--rainbow")
    p.add_argument("--mono")
    p.add_argument("--color", type=int)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("classify", parents=[common], help="structural decomposition of a coloring")
    p.add_argument("kind", choices=("gallai", "p5", "k13", "local", "obs"))
    p.add_argument("--coloring", required=True)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("formula", parents=[common], help="evaluate a closed-form value")
    p.add_argument("id", nargs="?")
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("search", parents=[common], help="exhaustive or heuristic search")
    p.add_argument("kind", choices=tuple(_SEARCH_KINDS))
    p.add_argument("--G", help="rainbow pattern")
    p.add_argument("--H", action="append", help="monochromatic pattern (repeat per color for ramsey/m)")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int, help="host order for gm/m/realizations")
    p.add_argument("--n-max", type=int)
    p.add_argument("--mode", choices=("exhaustive", "heuristic"), default="exhaustive")
    p.add_argument("--symmetry", choices=("full-canonical", "color-canonical", "labeled"), default="full-canonical")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--exact", action="store_true", help="only colorings using every color")
    grp.add_argument("--at-most", action="store_true", help="colorings with at most k colors")
    p.add_argument("--of", choices=("GM", "M"), default="GM", help="what realizations counts")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--checkpoint")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--steps", type=int)
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--max-seconds", type=float)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", parents=[common], help="formula ledger or construction claims")
    p.add_argument("what", choices=("formulas", "constructions"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", parents=[common], help="run one named scenario")
    p.add_argument("id", nargs="?")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("report", parents=[common], help="run scenarios and summarize")
    p.add_argument("--only", nargs="+")
    p.add_argument("--skip", nargs="+")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, CliError, ConstructionClaimError, TheoremContradiction) as exc:
        print(f"error: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness is not None:
            print(f"witness: {json.dumps(witness, default=str)}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
