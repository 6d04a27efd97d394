"""Command-line front end.

Exit codes: 0 ok, 2 parse or input error, 3 inadmissible level,
4 selfcheck failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .center import CenterCharacter
from .checks import l0_rows
from .formulas import (
    InadmissibleLevelError,
    VerlindeResult,
    min_level,
    verlinde_conjclass,
    verlinde_ns,
    verlinde_sc,
    verlinde_sc_product,
)
from .registry import (
    GroupSpecError,
    levels_for,
    parse_group,
    parse_int_list,
    parse_markings,
    parse_phi,
)
from .rootdata import LieTypeError

EXIT_OK, EXIT_PARSE, EXIT_INADMISSIBLE, EXIT_SELFCHECK = 0, 2, 3, 4
MODES = ("sc", "ns", "conjclass", "closed")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


# -- computations ----------------------------------------------------------


def compute(group: str, levels, genus: int, mode: str = "sc", markings: str | None = None,
            center: str | None = None, phi: str | None = None, breakdown: bool = False,
            threads: int | None = None, variant: str = "2c", unsafe: bool = False) -> VerlindeResult:
    """Evaluate one query; raises GroupSpecError, InadmissibleLevelError, ValueError."""
    if mode not in MODES:
        raise UsageError(f"mode must be one of {', '.join(MODES)}")
    spec = parse_group(group, center)
    if isinstance(levels, str):
        levels = parse_int_list(levels)
    levels = levels_for(spec, levels)
    marks = parse_markings(markings, spec)
    single = len(spec.factors) == 1
    if mode in ("sc", "closed"):
        if mode == "closed" and marks:
            raise UsageError("closed mode takes no markings")
        if single:
            return verlinde_sc(spec.factors[0], levels[0], genus, [m[0] for m in marks], breakdown)
        return verlinde_sc_product(spec.factors, levels, genus, marks)
    if len(marks) > 1:
        raise UsageError(f"{mode} mode takes at most one marking")
    mu = marks[0] if marks else tuple((0,) * d.rank for d in spec.factors)
    character = None
    if phi:
        character = CenterCharacter.from_generator_exponents(spec.gamma, parse_phi(phi), genus)
    if mode == "ns":
        return verlinde_ns(spec.gamma, levels, genus, mu, character, breakdown=breakdown,
                           threads=threads, variant=variant, unsafe=unsafe)
    return verlinde_conjclass(spec.gamma, levels, genus, mu, character, variant=variant, unsafe=unsafe)


def format_result(res: VerlindeResult, fmt: str, query: dict) -> str:
    if fmt == "json":
        payload = {"query": query, "result": res.to_dict()}
        return json.dumps(payload, indent=2, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["group", "level", "genus", "mode", "value"])
        w.writerow([query["group"], " ".join(map(str, query["level"])), query["genus"], query["mode"], str(res.exact)])
        if res.per_lambda:
            w.writerow([])
            w.writerow(["lambda", "term_real"])
            for lam, t in res.per_lambda:
                w.writerow([";".join(",".join(map(str, l)) for l in lam), f"{t.to_complex().real:.12g}"])
        return buf.getvalue().rstrip("\n")
    lines = [str(res.exact)]
    for lam, t in res.per_lambda:
        label = " ".join("(" + ",".join(map(str, l)) + ")" for l in lam)
        lines.append(f"  {label}  {t.to_complex().real:.12g}")
    return "\n".join(lines)


def levels_table(groups=None, variant: str = "2c") -> list[tuple[str, int, int | None]]:
    """(name, smallest admissible level, published value or None)."""
    if not groups:
        return [(name, got, expected) for name, got, expected in l0_rows()]
    out = []
    for g in groups:
        spec = parse_group(g)
        for j, d in enumerate(spec.factors):
            order = spec.gamma.projection(j).order
            out.append((f"{g}[{d.lie_type}]" if len(spec.factors) > 1 else g, min_level(d, order, variant), None))
    return out


# -- sweeps ------------------------------------------------------------------


def load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def run_sweep(cfg: dict) -> list[dict]:
    group = cfg.get("group", "SU(2)")
    mode = cfg.get("mode", "closed")
    rows = []
    for h in cfg.get("genera", [0, 1, 2]):
        for k in cfg.get("levels", list(range(1, 9))):
            try:
                res = compute(group, [k], h, mode, cfg.get("markings"), cfg.get("center"),
                              cfg.get("phi"), variant=cfg.get("variant", "2c"))
            except InadmissibleLevelError:
                continue
            rows.append({"group": group, "mode": mode, "genus": h, "level": k, "value": str(res.exact)})
    return rows


def write_csv(rows: list[dict], path: str):
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=["group", "mode", "genus", "level", "value"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


# -- argument handling ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="verlinde", description="Exact Verlinde-type indices for compact Lie groups and their quotients.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="evaluate one index")
    c.add_argument("--group", required=True, help='e.g. A2, "SU(3)", "SO(3)", "E6\'", "A1xA1"')
    c.add_argument("--level", required=True, help="level, or comma-separated levels for products")
    c.add_argument("--genus", type=int, default=1)
    c.add_argument("--mode", choices=MODES, default="sc")
    c.add_argument("--markings", help="flat weight coordinates, cut into chunks of the rank")
    c.add_argument("--center", help="explicit center generators: '1,0;0,1'")
    c.add_argument("--phi", help="character exponents per slot, slots separated by '/'")
    c.add_argument("--breakdown", action="store_true", help="print the per-lambda terms")
    c.add_argument("--variant", choices=("2c", "c"), default="2c", help="admissibility predicate")
    c.add_argument("--unsafe", action="store_true", help="evaluate at inadmissible levels anyway")
    c.add_argument("--threads", type=int)
    fmt = c.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")

    lv = sub.add_parser("levels", help="smallest admissible levels")
    lv.add_argument("groups", nargs="*")
    lv.add_argument("--variant", choices=("2c", "c"), default="2c")
    lv.add_argument("--json", action="store_true")

    s = sub.add_parser("selfcheck", help="run the property suites")
    s.add_argument("--suite", choices=("fast", "full"), default="fast")
    s.add_argument("--variant", choices=("2c", "c"), default="2c")
    s.add_argument("--samples", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--report", default="selfcheck_report.json")

    w = sub.add_parser("sweep", help="tabulate and plot an index over levels and genera")
    w.add_argument("--config", help="TOML file with group, mode, levels, genera, markings, center, phi, out")
    w.add_argument("--group")
    w.add_argument("--mode", choices=MODES)
    w.add_argument("--levels")
    w.add_argument("--genera")
    w.add_argument("--out", help="output prefix for .csv and .png")
    return p


def _cmd_compute(a) -> int:
    res = compute(a.group, a.level, a.genus, a.mode, a.markings, a.center, a.phi, a.breakdown,
                  a.threads, a.variant, a.unsafe)
    query = {"group": a.group, "level": parse_int_list(a.level), "genus": a.genus, "mode": a.mode,
             "markings": a.markings, "center": a.center, "phi": a.phi}
    fmt = "json" if a.json else "csv" if a.csv else "text"
    print(format_result(res, fmt, query))
    return EXIT_OK


def _cmd_levels(a) -> int:
    rows = levels_table(a.groups, a.variant)
    if a.json:
        print(json.dumps([{"group": n, "l0": v, "published": e} for n, v, e in rows], indent=2, sort_keys=True))
    else:
        for n, v, e in rows:
            note = "" if e is None else ("  ok" if e == v else f"  MISMATCH (published {e})")
            print(f"{n:<12} {v}{note}")
    return EXIT_OK


def _cmd_selfcheck(a) -> int:
    from .selfcheck import dumps, run_suite

    rep = run_suite(a.suite, a.variant, a.samples, a.seed, log=print)
    with open(a.report, "w") as fh:
        fh.write(dumps(rep) + "\n")
    print(f"{'all checks passed' if rep['all_ok'] else 'FAILURES'}; report written to {a.report}")
    return EXIT_OK if rep["all_ok"] else EXIT_SELFCHECK


def _cmd_sweep(a) -> int:
    from .plotting import plot_sweep

    cfg = load_config(a.config)
    if a.group:
        cfg["group"] = a.group
    if a.mode:
        cfg["mode"] = a.mode
    if a.levels:
        cfg["levels"] = parse_int_list(a.levels)
    if a.genera:
        cfg["genera"] = parse_int_list(a.genera)
    if a.out:
        cfg["out"] = a.out
    out = cfg.get("out", "sweep")
    rows = run_sweep(cfg)
    write_csv(rows, out + ".csv")
    plot_sweep(rows, out + ".png", f"{cfg.get('group', 'SU(2)')} ({cfg.get('mode', 'closed')})")
    print(f"{len(rows)} rows written to {out}.csv and {out}.png")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"compute": _cmd_compute, "levels": _cmd_levels, "selfcheck": _cmd_selfcheck, "sweep": _cmd_sweep}
    try:
        return handler[args.command](args)
    except InadmissibleLevelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except (GroupSpecError, LieTypeError, UsageError, ValueError, OSError, tomllib.TOMLDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
