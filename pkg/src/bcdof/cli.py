"""Command line front end.

Subcommands: ``region`` (halfspaces, vertices, corner table), ``check``
(membership plus a time-share witness), ``simulate`` (exact decodability
trials for a corner or point), ``verify`` (property suites), ``plot-data``
(CSV slice polygons and a JSON facet file).  All rationals serialize as
num/den pairs; ``--float`` adds decimal approximations alongside.  Output on
stdout is bit-reproducible for a fixed seed; wall time goes to stderr.

Exit codes: 0 success, 1 property or trial failure, 2 usage error,
3 unsupported corner (scheme lives in cited prior work), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

from .catalog import (
    ALL_CSIT, Corner, SchemeKind, bc_cm_region, bc_dm_region, bc_pm_region,
    catalog_region, corner_catalog, devolve_outer,
)
from .core import (
    COORD_NAMES, D0, D1, D2, AntennaConfig, CsitModel, DofPoint, Halfspace,
    MessageSet, Region, as_fraction, region_equals, sorted_points,
)
from .rankbounds import (
    BLOCK_PRESETS, block_rank_check, converse_chain_check, rank_ratio_check,
)
from .schemes import (
    CornerTask, InfeasiblePointError, UnsupportedSchemeError, achieve_point,
    simulate_corner, simulate_plan,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_IO = 4


class UsageError(ValueError):
    pass


# -- serialization helpers ----------------------------------------------------


def _rat(x: Fraction, with_float: bool) -> dict:
    out = {"num": x.numerator, "den": x.denominator}
    if with_float:
        out["approx"] = x.numerator / x.denominator
    return out


def _point(p: DofPoint, with_float: bool) -> list[dict]:
    return [_rat(c, with_float) for c in p]


def _halfspace(h: Halfspace, with_float: bool) -> dict:
    return {"a1": _rat(h.a1, with_float), "a2": _rat(h.a2, with_float),
            "a0": _rat(h.a0, with_float), "b": _rat(h.b, with_float),
            "text": str(h)}


def parse_rational_json(obj: dict) -> Fraction:
    return Fraction(obj["num"], obj["den"])


def region_to_json(region: Region, with_float: bool = False) -> dict:
    return {
        "pinned": [[COORD_NAMES[c], _rat(v, with_float)] for c, v in region.pinned],
        "halfspaces": [_halfspace(h, with_float) for h in region.halfspaces],
        "vertices": [_point(v, with_float) for v in sorted_points(region.vertices())],
    }


def parse_region_json(obj: dict) -> Region:
    name_to_coord = {n: i for i, n in enumerate(COORD_NAMES)}
    hs = tuple(Halfspace(parse_rational_json(h["a1"]), parse_rational_json(h["a2"]),
                         parse_rational_json(h["a0"]), parse_rational_json(h["b"]))
               for h in obj["halfspaces"])
    pinned = tuple((name_to_coord[n], parse_rational_json(v))
                   for n, v in obj["pinned"])
    return Region(hs, pinned)


def _corner_json(c: Corner, with_float: bool) -> dict:
    return {"name": c.name, "point": _point(c.point, with_float),
            "kind": c.kind.value, "simulatable": c.kind.simulatable,
            "note": c.note}


def _report_json(rep, with_float: bool) -> dict:
    out = {"kind": rep.kind, "scenario": rep.scenario, "trials": rep.trials,
           "passes": rep.passes, "seed": rep.seed, "all_passed": rep.all_passed,
           "achieved": None if rep.achieved is None else _point(rep.achieved, with_float)}
    if rep.ledger_sample is not None:
        out["ledger_sample"] = rep.ledger_sample
    if rep.first_failure is not None:
        out["first_failure"] = rep.first_failure
    if rep.components:
        out["components"] = [_report_json(c, with_float) for c in rep.components]
    return out


# -- argument parsing ---------------------------------------------------------


def _scenario_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("M", type=int)
    sub.add_argument("N1", type=int)
    sub.add_argument("N2", type=int)
    sub.add_argument("csit", type=str)
    sub.add_argument("message_set", type=str, choices=["pm", "dm", "cm"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcdof",
        description="Exact DoF regions and precoding-scheme verification for the "
                    "two-user MIMO broadcast channel under hybrid CSIT.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_region = sub.add_parser("region", help="emit a catalog region")
    _scenario_args(p_region)
    p_region.add_argument("--format", choices=["json", "csv"], default="json")
    p_region.add_argument("--float", action="store_true", dest="with_float")

    p_check = sub.add_parser("check", help="membership test with witness")
    p_check.add_argument("d1")
    p_check.add_argument("d2")
    p_check.add_argument("d0")
    _scenario_args(p_check)
    p_check.add_argument("--float", action="store_true", dest="with_float")

    p_sim = sub.add_parser("simulate", help="exact decodability trials")
    _scenario_args(p_sim)
    p_sim.add_argument("--corner", type=str, default=None)
    p_sim.add_argument("--point", nargs=3, default=None, metavar=("D1", "D2", "D0"))
    p_sim.add_argument("--trials", type=int, default=100)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--float", action="store_true", dest="with_float")

    p_verify = sub.add_parser("verify", help="run a property suite")
    p_verify.add_argument("suite", choices=["lemma1", "lemma2", "converse",
                                            "devolution", "catalog-sweep"])
    p_verify.add_argument("antennas", type=int, nargs="*",
                          help="M N1 N2 for lemma1 and converse")
    p_verify.add_argument("--T", type=int, default=3)
    p_verify.add_argument("--trials", type=int, default=200)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--max-antennas", type=int, default=6)
    p_verify.add_argument("--preset", type=str, default="all",
                          choices=["all"] + sorted(BLOCK_PRESETS))

    p_plot = sub.add_parser("plot-data", help="slice polygon CSV and 3-D facets")
    _scenario_args(p_plot)
    p_plot.add_argument("--slice-coord", type=str, default=None,
                        choices=list(COORD_NAMES))
    p_plot.add_argument("--slice-value", type=str, default="0")
    p_plot.add_argument("--out", type=str, required=True)
    p_plot.add_argument("--facets", type=str, default=None)
    p_plot.add_argument("--float", action="store_true", dest="with_float")
    return parser


def _parse_scenario(ns) -> tuple[AntennaConfig, CsitModel, MessageSet]:
    try:
        cfg = AntennaConfig(ns.M, ns.N1, ns.N2)
        csit = CsitModel.parse(ns.csit)
        ms = MessageSet.parse(ns.message_set)
    except ValueError as e:
        raise UsageError(str(e)) from None
    return cfg, csit, ms


def _parse_point(parts) -> DofPoint:
    try:
        return DofPoint.of(*[as_fraction(str(x)) for x in parts])
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad rational point: {e}") from None


# -- commands -----------------------------------------------------------------


def cmd_region(ns) -> int:
    cfg, csit, ms = _parse_scenario(ns)
    region, label = catalog_region(cfg, ms, csit)
    corners = corner_catalog(cfg, ms, csit)
    if ns.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(COORD_NAMES)
        for v in sorted_points(region.vertices()):
            w.writerow([str(c) for c in v])
        return EXIT_OK
    payload = {
        "command": "region",
        "config": {"M": cfg.M, "N1": cfg.N1, "N2": cfg.N2},
        "csit": csit.name, "message_set": ms.value,
        "label": {"status": label.status, "star": label.is_ldof_only,
                  "csit_type": "II" if csit.csit_type == 2 else "I",
                  "derived": label.derived},
        "region": region_to_json(region, ns.with_float),
        "corners": [_corner_json(c, ns.with_float) for c in corners],
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_check(ns) -> int:
    cfg, csit, ms = _parse_scenario(ns)
    p = _parse_point((ns.d1, ns.d2, ns.d0))
    region, _ = catalog_region(cfg, ms, csit)
    base = {"command": "check",
            "config": {"M": cfg.M, "N1": cfg.N1, "N2": cfg.N2},
            "csit": csit.name, "message_set": ms.value,
            "point": _point(p, ns.with_float)}
    if region.contains(p):
        plan = achieve_point(cfg, ms, csit, p)
        base["inside"] = True
        base["plan"] = [{"corner": comp.name, "point": _point(comp.point, ns.with_float),
                         "weight": _rat(comp.weight, ns.with_float),
                         "kind": comp.kind.value, "simulatable": comp.simulatable}
                        for comp in plan.components]
        print(json.dumps(base, indent=2))
        return EXIT_OK
    violated = None
    if any(c < 0 for c in p):
        violated = {"text": "d1, d2, d0 >= 0"}
    else:
        for c, v in region.pinned:
            if p[c] != v:
                violated = {"text": f"{COORD_NAMES[c]} = {v}"}
                break
        if violated is None:
            for h in region.halfspaces:
                if not h.holds(p):
                    violated = _halfspace(h, ns.with_float)
                    break
    base["inside"] = False
    base["violated"] = violated
    print(json.dumps(base, indent=2))
    return EXIT_FAIL


def cmd_simulate(ns) -> int:
    cfg, csit, ms = _parse_scenario(ns)
    if ns.trials < 1:
        raise UsageError("--trials must be at least 1")
    if (ns.corner is None) == (ns.point is None):
        raise UsageError("give exactly one of --corner or --point")
    if ns.corner is not None:
        corners = {c.name.upper(): c for c in corner_catalog(cfg, ms, csit)}
        corner = corners.get(ns.corner.upper())
        if corner is None:
            raise UsageError(f"unknown corner {ns.corner!r}; available: "
                             + ", ".join(sorted(corners)))
        if not corner.kind.simulatable:
            print(f"corner {corner.name} requires scheme of cited prior work: "
                  f"{corner.note}", file=sys.stderr)
            return EXIT_UNSUPPORTED
        task = CornerTask(cfg, ms, csit, corner.point, corner.kind, corner.name)
        report = simulate_corner(task, ns.trials, ns.seed)
    else:
        target = _parse_point(ns.point)
        try:
            plan = achieve_point(cfg, ms, csit, target)
        except InfeasiblePointError as e:
            raise UsageError(str(e)) from None
        if any(not comp.simulatable for comp in plan.components):
            names = [comp.name for comp in plan.components if not comp.simulatable]
            print(f"plan components {names} require scheme of cited prior work",
                  file=sys.stderr)
            return EXIT_UNSUPPORTED
        report = simulate_plan(plan, ns.trials, ns.seed)
    payload = {"command": "simulate", "report": _report_json(report, ns.with_float)}
    print(json.dumps(payload, indent=2))
    return EXIT_OK if report.all_passed else EXIT_FAIL


def _grid(max_antennas: int):
    for m in range(1, max_antennas + 1):
        for n1 in range(1, max_antennas + 1):
            for n2 in range(1, n1 + 1):
                yield AntennaConfig(m, n1, n2)


def cmd_verify(ns) -> int:
    suite = ns.suite
    payload: dict = {"command": "verify", "suite": suite, "seed": ns.seed}
    ok = True
    if suite in ("lemma1", "converse"):
        if len(ns.antennas) != 3:
            raise UsageError(f"{suite} needs M N1 N2")
        cfg = AntennaConfig(*ns.antennas)
        if suite == "lemma1":
            report = rank_ratio_check(cfg, ns.T, ns.trials, ns.seed)
        else:
            report = converse_chain_check(cfg, ns.T, ns.trials, ns.seed)
        payload["report"] = report.to_dict()
        ok = report.passed
    elif suite == "lemma2":
        names = sorted(BLOCK_PRESETS) if ns.preset == "all" else [ns.preset]
        reports = [block_rank_check(name, ns.trials, ns.seed) for name in names]
        payload["reports"] = [r.to_dict() for r in reports]
        ok = all(r.passed for r in reports)
    elif suite == "devolution":
        cases = []
        for cfg in _grid(ns.max_antennas):
            for csit in ALL_CSIT:
                outer = devolve_outer(cfg, csit)
                cm, _ = bc_cm_region(cfg, csit)
                equal = region_equals(outer, cm)
                ok = ok and equal
                if not equal:
                    cases.append({"M": cfg.M, "N1": cfg.N1, "N2": cfg.N2,
                                  "csit": csit.name, "equal": False})
        payload["cases_checked"] = sum(1 for _ in _grid(ns.max_antennas)) * len(ALL_CSIT)
        payload["mismatches"] = cases
    elif suite == "catalog-sweep":
        mismatches = []
        n_checked = 0
        for cfg in _grid(ns.max_antennas):
            pn, _ = bc_pm_region(cfg, CsitModel.parse("PN"))
            dn, _ = bc_pm_region(cfg, CsitModel.parse("DN"))
            nn, _ = bc_pm_region(cfg, CsitModel.parse("NN"))
            if not (region_equals(pn, dn) and region_equals(dn, nn)):
                mismatches.append({"M": cfg.M, "N1": cfg.N1, "N2": cfg.N2,
                                   "check": "one-sided-unknown equality"})
            for csit in ALL_CSIT:
                cm, _ = bc_cm_region(cfg, csit)
                pm, _ = bc_pm_region(cfg, csit)
                dm, _ = bc_dm_region(cfg, csit)
                if not region_equals(cm.slice(D0, 0), pm):
                    mismatches.append({"M": cfg.M, "N1": cfg.N1, "N2": cfg.N2,
                                       "csit": csit.name, "check": "d0 slice"})
                if cfg.is_normalized and not region_equals(cm.slice(D2, 0), dm):
                    mismatches.append({"M": cfg.M, "N1": cfg.N1, "N2": cfg.N2,
                                       "csit": csit.name, "check": "d2 slice"})
                n_checked += 1
        payload["cases_checked"] = n_checked
        payload["mismatches"] = mismatches
        ok = not mismatches
    payload["passed"] = ok
    print(json.dumps(payload, indent=2))
    return EXIT_OK if ok else EXIT_FAIL


def _boundary_order(points: list[DofPoint], coords: tuple[int, int]) -> list[DofPoint]:
    if len(points) <= 2:
        return points
    xs = [float(p[coords[0]]) for p in points]
    ys = [float(p[coords[1]]) for p in points]
    cx, cy = sum(xs) / len(xs), sum(ys) / len(ys)
    return [p for _, p in sorted(
        zip((math.atan2(y - cy, x - cx) for x, y in zip(xs, ys)), points),
        key=lambda t: t[0])]


def cmd_plot_data(ns) -> int:
    cfg, csit, ms = _parse_scenario(ns)
    region, _ = catalog_region(cfg, ms, csit)
    coord_idx = {n: i for i, n in enumerate(COORD_NAMES)}
    if ns.slice_coord is not None:
        sliced = region.slice(coord_idx[ns.slice_coord], as_fraction(ns.slice_value))
    else:
        if region.dim > 2:
            raise UsageError("a 3-D region needs --slice-coord to produce 2-D data")
        sliced = region
    free = sliced.free_coords
    if len(free) != 2:
        raise UsageError("slice must leave exactly two free coordinates")
    points = _boundary_order(sorted_points(sliced.vertices()), (free[0], free[1]))
    facet_path = ns.facets or str(Path(ns.out).with_suffix(".facets.json"))
    try:
        with open(ns.out, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            header = [COORD_NAMES[free[0]], COORD_NAMES[free[1]]]
            if ns.with_float:
                header += [f"{COORD_NAMES[c]}_float" for c in free]
            w.writerow(header)
            for p in points:
                row = [str(p[free[0]]), str(p[free[1]])]
                if ns.with_float:
                    row += [repr(float(p[free[0]])), repr(float(p[free[1]]))]
                w.writerow(row)
        with open(facet_path, "w") as fh:
            json.dump(_facet_data(region, ns.with_float), fh, indent=2)
            fh.write("\n")
    except OSError as e:
        print(f"I/O failure: {e}", file=sys.stderr)
        return EXIT_IO
    print(json.dumps({"command": "plot-data", "csv": ns.out, "facets": facet_path,
                      "boundary_points": len(points)}, indent=2))
    return EXIT_OK


def _facet_data(region: Region, with_float: bool) -> dict:
    verts = sorted_points(region.vertices())
    index = {v: i for i, v in enumerate(verts)}
    facets = []
    planes = [(h, str(h)) for h in region.halfspaces]
    for c in region.free_coords:
        coeffs = [Fraction(0)] * 3
        coeffs[c] = Fraction(-1)
        planes.append((Halfspace(*coeffs, Fraction(0)), f"{COORD_NAMES[c]} >= 0"))
    for h, text in planes:
        active = [v for v in verts if h.is_active(v)]
        if len(active) < region.dim:
            continue
        if region.dim == 3 and len(active) >= 3:
            normal = [abs(float(x)) for x in h.coeffs()]
            drop = normal.index(max(normal))
            keep = tuple(c for c in (D1, D2, D0) if c != drop)
            cycle = _boundary_order(active, keep)  # type: ignore[arg-type]
        else:
            cycle = sorted_points(active)
        facets.append({"plane": text, "vertex_ids": [index[v] for v in cycle]})
    return {"vertices": [_point(v, with_float) for v in verts], "facets": facets}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) if e.code != 2 else EXIT_USAGE
    start = time.monotonic()
    try:
        handler = {"region": cmd_region, "check": cmd_check,
                   "simulate": cmd_simulate, "verify": cmd_verify,
                   "plot-data": cmd_plot_data}[ns.command]
        code = handler(ns)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        code = EXIT_USAGE
    except UnsupportedSchemeError as e:
        print(str(e), file=sys.stderr)
        code = EXIT_UNSUPPORTED
    print(f"elapsed: {time.monotonic() - start:.3f}s", file=sys.stderr)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
