"""``odolab`` command line.

    odolab analyze --workspace w.json --target NAME --analysis quasifactors
    odolab analyze --target d4-s,d4-rs --analysis disjoint
    odolab verify-paper [--filter SUBSTR] [--fixtures f.json]

Exit codes: 0 success, 1 input error, 2 a criterion disagreed with its oracle
(or a verification check failed).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import groups as gr
from .actions import eigenset_of, g_tiles_at, is_settled, settle, stabilizer_of
from .disjointness import common_factor_search, disjoint_action, no_common_factor_finite
from .errors import InputError, OdolabError, OracleDisagreement
from .hyperspace import classify_measure_quasifactors, find_nonfactor_witness, hyperspace_decomposition, members
from .scales import build_truncated, odometer_criteria
from .verify import run_checks
from .workspace import Workspace, builtin_fixtures, load, load_path

ANALYSES = ("quasifactors", "measures", "disjoint", "common-factor", "odometer", "tiles", "settled", "scale")


def _pair(ws: Workspace, target: str):
    names = [t.strip() for t in target.split(",")]
    if len(names) != 2:
        raise InputError(f"analysis needs two comma-separated targets, got {target!r}")
    return [ws.action(n) for n in names]


def _points(bits_or_set) -> list[int]:
    pts = members(bits_or_set) if isinstance(bits_or_set, int) else sorted(bits_or_set)
    return [x + 1 for x in pts]


def analyze(ws: Workspace, target: str, analysis: str, bound: int = 6) -> dict:
    """Run one analysis and return a JSON-ready report."""
    report: dict = {"target": target, "analysis": analysis}
    if analysis == "quasifactors":
        X = ws.action(target)
        qs = hyperspace_decomposition(X)
        report["points"] = X.points
        report["quasifactors"] = [dict(q.to_json(), representative=_points(q.representative)) for q in qs]
        w = find_nonfactor_witness(X)
        report["non_factor_witness"] = None if w is None else w.to_json()
    elif analysis == "measures":
        report.update(classify_measure_quasifactors(ws.action(target), bound).to_json())
    elif analysis == "disjoint":
        X, Y = _pair(ws, target)
        report["disjointness"] = disjoint_action(X, Y).to_json()
        report["common_factor"] = no_common_factor_finite(stabilizer_of(X, 0), stabilizer_of(Y, 0)).to_json()
    elif analysis == "common-factor":
        X, Y = _pair(ws, target)
        found = common_factor_search(X, Y)
        report["common_factor"] = None if found is None else found.to_json()
        report["criterion"] = no_common_factor_finite(stabilizer_of(X, 0), stabilizer_of(Y, 0)).to_json()
    elif analysis == "odometer":
        X = ws.action(target)
        report.update(odometer_criteria(X.group, stabilizer_of(X, 0)))
    elif analysis == "tiles":
        X = ws.action(target)
        report["tiles"] = [_points(A) for A in g_tiles_at(X, 0)]
    elif analysis == "settled":
        X = ws.action(target)
        E = eigenset_of(X)
        rows = []
        for L in gr.all_subgroups(X.group):
            if not E.contains(L):
                continue
            I, LI = settle(X, L, E)
            rows.append({
                "eigenvalue": L.describe(),
                "normal": gr.is_normal(X.group, L),
                "settled": is_settled(X, L, E),
                "settle_I": [str(g) for g in I],
                "settled_subgroup": LI.describe(),
            })
        report["eigenvalues"] = rows
    elif analysis == "scale":
        if target not in ws.scales:
            raise InputError(f"{target!r} is not a scale")
        T = build_truncated(ws.scales[target])
        report["members"] = [M.describe() for M in T.scale.members]
        report["least_member"] = T.base_subgroup.describe()
        report["limit_points"] = T.limit.points
        report["bonding_maps"] = {f"{i}->{j}": [p + 1 for p in f] for (i, j), f in sorted(T.bonding_maps.items())}
        report["settledness"] = T.settled_members()
    else:
        raise InputError(f"unknown analysis {analysis!r}")
    return report


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                         (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(obj, list):
        for item in obj:
            sub = _render_text(item, indent + 1)
            lines.append(f"{pad}-" + (" " + sub[0].strip() if sub else ""))
            lines.extend(sub[1:])
    else:
        lines.append(f"{pad}{json.dumps(obj)}")
    return lines


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _workspace(path: str | None) -> Workspace:
    return load_path(path) if path else load(builtin_fixtures())


def cmd_analyze(args) -> int:
    ws = _workspace(args.workspace)
    report = analyze(ws, args.target, args.analysis, args.bound)
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(_render_text(report)) + "\n"
    _emit(text, args.output)
    return 0


def cmd_verify_paper(args) -> int:
    ws = _workspace(args.fixtures)
    results = run_checks(ws, args.filter)
    failed = sum(not r.ok for _, r in results)
    if args.format == "json":
        text = json.dumps([
            {"check": c.name, "claim": c.claim, "status": "PASS" if r.ok else "FAIL", "detail": r.detail}
            for c, r in results
        ], indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"{'PASS' if r.ok else 'FAIL'}  {c.name}: {r.detail}" for c, r in results]
        lines.append(f"{len(results) - failed}/{len(results)} checks passed")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 2 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="odolab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run one analysis on a workspace object")
    p.add_argument("--workspace", help="workspace JSON (default: built-in fixtures)")
    p.add_argument("--target", required=True, help="object name, or 'a,b' for pairwise analyses")
    p.add_argument("--analysis", required=True, choices=ANALYSES)
    p.add_argument("--bound", type=int, default=6, help="denominator bound for 'measures'")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify-paper", help="reproduce the worked examples and finite-level theorems")
    v.add_argument("--filter", help="only run checks whose name contains this substring")
    v.add_argument("--fixtures", help="fixture workspace JSON (default: built-in fixtures)")
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--output", help="write the report here instead of stdout")
    v.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OracleDisagreement as exc:
        print(f"odolab: oracle disagreement: {exc}", file=sys.stderr)
        return 2
    except OdolabError as exc:
        print(f"odolab: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
