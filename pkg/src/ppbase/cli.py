"""ppbase command line: analyze, bpp, zsig, spread and catalog.

Exit codes: 0 success, 1 error (including a brute-force/structural
disagreement), 2 time budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from . import catalog
from .exceptions import BudgetExceeded, PPBaseError
from .group import PermGroup, is_solvable

CACHE_SCHEMA = 1
DEFAULT_TIME_BUDGET = 600.0


def _load(spec: str) -> PermGroup:
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        G = catalog.load_group(path)
        G.name = G.name or path.stem
        return G
    G = catalog.get(spec)
    G.name = G.name or spec
    return G


def _cache_dir() -> Path:
    return Path(os.environ.get("PPBASE_CACHE", ".ppbase-cache"))


def _cache_key(command: str, groups: List[PermGroup], options: Dict[str, Any]) -> str:
    payload = json.dumps({
        "schema": CACHE_SCHEMA,
        "command": command,
        "groups": [hashlib.sha256(catalog.dumps_group(G).encode()).hexdigest() for G in groups],
        "options": options,
    }, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def _cache_read(key: str) -> Optional[str]:
    p = _cache_dir() / f"{key}.json"
    return p.read_text(encoding="utf-8") if p.exists() else None


def _cache_write(key: str, text: str) -> None:
    d = _cache_dir()
    d.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, d / f"{key}.json")


def _dump(obj: Any, compact: bool) -> str:
    if compact:
        return json.dumps(obj, separators=(",", ":"))
    return json.dumps(obj, indent=2)


class _Budget:
    def __init__(self, seconds: float):
        self.end = time.monotonic() + seconds

    def left(self) -> float:
        rest = self.end - time.monotonic()
        if rest <= 0:
            raise BudgetExceeded("time budget exceeded")
        return rest


def _structural(G: PermGroup, order_cap: int):
    """Descriptor for G, or for G/Phi(G) when the Frattini subgroup is nontrivial."""
    from .classify import is_bpp_structural
    from .group import quotient
    from .structure import frattini_bits

    T = G.table(max(order_cap, G.order()))
    phi = frattini_bits(G, order_cap)
    if phi == 1:
        return "G", is_bpp_structural(G, order_cap)
    Q, _ = quotient(G, T.as_group(phi), order_cap=order_cap)
    return "G/Phi", is_bpp_structural(Q, order_cap)


def build_analysis(G: PermGroup, time_budget: float, order_cap: int, timings: bool = False):
    """The analysis report as an ordered dict, and whether the budget ran out."""
    from .genset import (
        chief_delta, max_independent_generating, max_pp_independent_generating, min_pp_generating,
    )
    from .structure import chief_series, frattini_bits

    budget = _Budget(time_budget)
    clock: Dict[str, str] = {}
    report: Dict[str, Any] = {"name": G.name, "degree": G.degree, "order": G.order(),
                              "solvable": is_solvable(G)}
    t0 = time.monotonic()
    report["frattini_order"] = frattini_bits(G, order_cap).bit_count()
    cs = chief_series(G, order_cap)
    report["chief_factors"] = [{"order": f.order, "abelian": f.is_abelian, "frattini": f.is_frattini}
                               for f in cs.factor_info]
    report["a"], report["b"] = cs.a, cs.b
    clock["structure"] = f"{time.monotonic() - t0:.3f}"
    exceeded = False
    for key, fn in (("m", max_independent_generating), ("m_pp", max_pp_independent_generating),
                    ("min_pp", min_pp_generating)):
        t0 = time.monotonic()
        try:
            value, witness = fn(G, budget.left(), order_cap)
            report[key] = value
            report[f"{key}_witness"] = [str(w) for w in witness]
        except BudgetExceeded:
            report[key] = "budget exceeded"
            exceeded = True
        clock[key] = f"{time.monotonic() - t0:.3f}"
    t0 = time.monotonic()
    try:
        deltas = chief_delta(G, budget.left(), order_cap, series=cs)
    except BudgetExceeded:
        deltas = ["budget exceeded"] * len(cs.factor_info)
        exceeded = True
    for row, d in zip(report["chief_factors"], deltas):
        row["delta"] = d
    clock["chief_delta"] = f"{time.monotonic() - t0:.3f}"
    if isinstance(report["min_pp"], int) and isinstance(report["m_pp"], int):
        report["is_bpp"] = report["min_pp"] == report["m_pp"]
    else:
        report["is_bpp"] = "budget exceeded"
    on, desc = _structural(G, order_cap)
    report["structural_on"] = on
    report["structural"] = desc.to_dict()
    if timings:
        report["timings"] = clock
    return report, exceeded


def cmd_analyze(args) -> int:
    G = _load(args.group)
    return _cached_run("analyze", [G], args, lambda: build_analysis(G, args.time_budget, args.order_cap,
                                                                     args.timings))


def build_bpp(G: PermGroup, time_budget: float, order_cap: int):
    from .genset import genset_report

    on, desc = _structural(G, order_cap)
    brute = genset_report(G, time_budget, order_cap, with_m=False).is_bpp
    structural_bpp = desc.verdict != "NotBpp"
    return {"name": G.name, "order": G.order(), "brute": brute, "structural_on": on,
            "structural": desc.to_dict(), "agree": brute == structural_bpp}, False


def cmd_bpp(args) -> int:
    G = _load(args.group)
    code = _cached_run("bpp", [G], args, lambda: build_bpp(G, args.time_budget, args.order_cap))
    return code


def build_spread(H: PermGroup, S: Optional[PermGroup], order_cap: int):
    from .spread import spread_reports

    return [r.to_dict() for r in spread_reports(H, S, order_cap)], False


def cmd_spread(args) -> int:
    H = _load(args.group)
    S = _load(args.socle) if args.socle else None
    groups = [H] + ([S] if S is not None else [])
    return _cached_run("spread", groups, args, lambda: build_spread(H, S, args.order_cap), lines=True)


def _cached_run(command: str, groups: List[PermGroup], args, build: Callable, lines: bool = False) -> int:
    options = {"time_budget": args.time_budget, "order_cap": args.order_cap,
               "compact": args.json, "timings": getattr(args, "timings", False),
               "socle": getattr(args, "socle", None)}
    key = _cache_key(command, groups, options)
    text = None if args.no_cache else _cache_read(key)
    code = 0
    if text is None:
        try:
            result, exceeded = build()
        except BudgetExceeded:
            print("time budget exceeded", file=sys.stderr)
            return 2
        if lines:
            text = "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in result)
        else:
            text = _dump(result, args.json) + "\n"
        if exceeded:
            code = 2
        elif not args.no_cache and not options["timings"]:
            _cache_write(key, text)
    sys.stdout.write(text)
    if command == "bpp" and not json.loads(text)["agree"]:
        print("brute-force and structural verdicts disagree", file=sys.stderr)
        return 1
    return code


def cmd_zsig(args) -> int:
    from .zsigmondy import feit_case, feit_scan, ppd_report, zsigmondy_exception, zsigmondy_scan

    if args.scan:
        x_max, n_max = args.values
        no_large = [{"x": x, "n": n, "case": f"Feit-{feit_case(x, n)}" if feit_case(x, n) else None}
                    for x, n in feit_scan(x_max, n_max)]
        no_ppd = [{"x": x, "n": n, "exception": zsigmondy_exception(x, n)}
                  for x, n in zsigmondy_scan(x_max, n_max)]
        out = {"x_max": x_max, "n_max": n_max, "no_large_ppd": no_large, "no_ppd": no_ppd}
    else:
        x, n = args.values
        out = ppd_report(x, n).to_dict()
    print(_dump(out, args.json))
    return 0


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog.catalog_names():
            print(name)
    elif args.action == "show":
        if not args.target:
            raise PPBaseError("catalog show needs a group name")
        sys.stdout.write(catalog.dumps_group(_load(args.target)))
    elif args.action == "export":
        if not args.target:
            raise PPBaseError("catalog export needs a directory")
        for p in catalog.export_catalog(args.target):
            print(p)
    return 0


def _positive(kind):
    def parse(text):
        v = kind(text)
        if v <= 0:
            raise argparse.ArgumentTypeError("must be positive")
        return v
    return parse


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print compact single-line JSON")
    common.add_argument("--time-budget", type=_positive(float), default=DEFAULT_TIME_BUDGET,
                        help="seconds allowed for the generating-set searches")
    common.add_argument("--order-cap", type=_positive(int), default=2016,
                        help="largest group order for which the subgroup lattice is built")
    common.add_argument("--no-cache", action="store_true", help="ignore and do not write the result cache")

    parser = argparse.ArgumentParser(prog="ppbase", description="pp-bases of finite permutation groups")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report for one group")
    p.add_argument("group", help="catalog name or group file")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (not byte-stable)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bpp", parents=[common], help="brute-force and structural B_pp verdicts")
    p.add_argument("group")
    p.set_defaults(func=cmd_bpp)

    p = sub.add_parser("zsig", parents=[common], help="primitive prime divisors of x^n - 1")
    p.add_argument("--scan", action="store_true", help="treat the two numbers as x_max n_max")
    p.add_argument("values", nargs=2, type=int, metavar="N")
    p.set_defaults(func=cmd_zsig)

    p = sub.add_parser("spread", parents=[common], help="P(g,s) against its fixed point ratio bound")
    p.add_argument("group")
    p.add_argument("--socle", help="catalog name or group file for the socle (default: computed)")
    p.set_defaults(func=cmd_spread)

    p = sub.add_parser("catalog", parents=[common], help="list, show or export catalog groups")
    p.add_argument("action", choices=["list", "show", "export"], nargs="?", default="list")
    p.add_argument("target", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PPBaseError, KeyError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
