"""Batch experiment runner.

``denjoy-lab run <config> --out <dir> [--seed N]`` executes one of the
analysis pipelines described by an INI config and writes a JSON report
(plus optional CSV series).  ``denjoy-lab catalog list`` prints the
built-in maps and example functions.

Config layout::

    [experiment]
    pipeline = rotation | variation | crossratio | conjugacy |
               combinatorics | full-criterion
    n = 1000              ; orbit budget where applicable
    depth = 8             ; estimator depth where applicable
    emit_series = true    ; write series_<stage>.csv
    max_seconds = 120     ; optional wall budget, report flagged
                          ; incomplete when exceeded

    [map]
    kind = rigid | arnold | denjoy
    alpha = 0.618
    amplitude = 0.0       ; arnold only
    N = 50                ; denjoy truncation
    mass = 0.5            ; denjoy inserted mass

    [sweep]               ; optional: fan out over one map key
    alpha = 0.59, 0.61, 0.63

Reports are deterministic for a fixed config and seed except for the
``timings`` block.
"""
from __future__ import annotations

import argparse
import configparser
import io
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .catalog import (CATALOG_ENTRIES, example_function, make_denjoy,
                      make_map)
from .combinatorics import (PULLBACK_MULTIPLICITY_BOUND,
                            intersection_multiplicity, natural_neighborhood,
                            predecessor_successor_table, pullback_arcs)
from .crossratio import crd_variation_estimate, term_b_constant
from .dynamics import (build_semiconjugacy, conjugacy_verdict, interval_orbit,
                       omega_gap_profile)
from .errors import DenjoyLabError, PeriodicOrbitError
from .maps import Arc, orbit_lift
from .rotation import birkhoff_estimate
from .util import frac
from .variation import classify_regularity, log_derivative_function

SCHEMA_VERSION = 1
PIPELINES = ("rotation", "variation", "crossratio", "conjugacy",
             "combinatorics", "full-criterion")

#: start point used when a map carries no distinguished anchor
DEFAULT_ANCHOR = 0.1234567891


class ConfigError(DenjoyLabError):
    """Raised for unusable experiment configs, with section/key context."""


@dataclass
class ExperimentReport:
    """Everything one pipeline run produced.

    ``per_stage`` maps stage names to plain-value metric dicts and
    ``verdicts`` collects labeled judgments, each carrying the budget
    or scale it was made at.  Identical config and seed reproduce every
    field except ``timings`` bit for bit.
    """

    config_echo: dict
    seed: int
    per_stage: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    incomplete: bool = False
    series: dict = field(default_factory=dict)

    def to_dict(self, with_timings: bool = True) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "config_echo": self.config_echo,
            "seed": self.seed,
            "per_stage": self.per_stage,
            "verdicts": self.verdicts,
            "incomplete": self.incomplete,
        }
        if with_timings:
            out["timings"] = self.timings
        return out

    def to_json(self, with_timings: bool = True) -> str:
        return json.dumps(self.to_dict(with_timings), sort_keys=True,
                          indent=2) + "\n"


def _parse_config(text: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as err:
        raise ConfigError(f"config parse error: {err}") from err
    if not parser.has_section("experiment"):
        raise ConfigError("config error: missing [experiment] section")
    if not parser.has_option("experiment", "pipeline"):
        raise ConfigError("config error: [experiment] needs a pipeline key")
    pipeline = parser.get("experiment", "pipeline")
    if pipeline not in PIPELINES:
        raise ConfigError(
            f"config error: unknown pipeline {pipeline!r}; expected one of "
            + ", ".join(PIPELINES))
    function_only = (pipeline == "variation"
                     and parser.has_option("experiment", "function"))
    if not parser.has_section("map") and not function_only:
        raise ConfigError("config error: missing [map] section")
    return parser


def _build_target(cfg: configparser.ConfigParser):
    """Returns (map object, plain diffeo, anchor point, echo dict)."""
    kind = cfg.get("map", "kind", fallback=None)
    if kind is None:
        raise ConfigError("config error: [map] needs a kind key")
    echo = dict(cfg.items("map"))
    try:
        if kind == "denjoy":
            target = make_denjoy(cfg.getfloat("map", "alpha"),
                                 N=cfg.getint("map", "N", fallback=50),
                                 mass=cfg.getfloat("map", "mass",
                                                   fallback=0.5))
            return target, target.base, float(target.cantor_anchor), echo
        if kind in ("rigid", "arnold"):
            recipe = {"kind": kind, "alpha": cfg.getfloat("map", "alpha")}
            if kind == "arnold":
                recipe["amplitude"] = cfg.getfloat("map", "amplitude",
                                                   fallback=0.0)
            target = make_map(recipe)
            return target, target, DEFAULT_ANCHOR, echo
    except (ValueError, KeyError, configparser.Error) as err:
        raise ConfigError(f"config error in [map]: {err}") from err
    raise ConfigError(f"config error: unknown map kind {kind!r}")


def _qualifier(**kv) -> str:
    return ", ".join(f"{k}={v}" for k, v in kv.items())


def _stage_rotation(report, diffeo, anchor, cfg):
    n = cfg.getint("experiment", "n", fallback=1000)
    est = birkhoff_estimate(diffeo, anchor, n)
    report.per_stage["rotation"] = {
        "value": est.value, "error_bound": est.error_bound,
        "n": n, "x0": anchor,
    }
    report.verdicts.append({
        "label": "rotation-number",
        "verdict": f"{est.value:.10f}",
        "qualifier": _qualifier(n=n, error_bound=f"{est.error_bound:.3e}"),
    })
    lift = orbit_lift(diffeo, anchor, n)
    step = max(1, n // 64)
    rows = [(k, float(frac((lift[k] - lift[0]) / k)), 2.0 / k)
            for k in range(step, n + 1, step)]
    report.series["rotation"] = rows


def _variation_input(diffeo, cfg):
    name = cfg.get("experiment", "function", fallback=None)
    if name is not None:
        depth = cfg.getint("experiment", "function_depth", fallback=12)
        return example_function(name, depth)
    return log_derivative_function(diffeo)


def _stage_variation(report, diffeo, anchor, cfg):
    depth = cfg.getint("experiment", "depth", fallback=8)
    f = _variation_input(diffeo, cfg)
    rep = classify_regularity(f, depth)
    report.per_stage["variation"] = {
        "label": f.label,
        "depth": depth,
        "tv": rep.tv, "zv": rep.zv, "qv": rep.qv,
        "zyg_norm": rep.zyg_norm,
        "diverging": dict(rep.diverging),
        "converged": dict(rep.converged),
        "checks": dict(rep.checks),
        "holder": list(rep.holder) if rep.holder is not None else None,
    }
    for name in ("tv", "zv", "qv", "zyg_norm"):
        report.verdicts.append({
            "label": f"variation-{name}",
            "verdict": rep.describe(name),
            "qualifier": _qualifier(depth=depth, input=f.label),
        })
    probes = sorted({max(1, math.ceil(depth / 8)),
                     max(1, math.ceil(depth / 4)),
                     max(2, math.ceil(depth / 2)), depth})
    report.series["variation"] = [
        (d, rep.trends["zv"][i], rep.trends["tv"][i])
        for i, d in enumerate(probes)
    ]


def _stage_crossratio(report, diffeo, anchor, cfg):
    depth = cfg.getint("experiment", "depth", fallback=5)
    est = crd_variation_estimate(diffeo, partition_depth=depth)
    k3 = term_b_constant(diffeo, 0.1, 0.35)
    report.per_stage["crossratio"] = {
        "crd_variation": est, "partition_depth": depth,
        "term_b_constant_sample": k3,
    }
    report.verdicts.append({
        "label": "crd-variation",
        "verdict": f"{est:.6e}",
        "qualifier": _qualifier(partition_depth=depth),
    })


def _stage_conjugacy(report, target, diffeo, anchor, cfg):
    budget = cfg.getint("experiment", "budget",
                        fallback=cfg.getint("experiment", "n",
                                            fallback=1000))
    verdict = conjugacy_verdict(target, budget)
    prof = omega_gap_profile(diffeo, anchor, n=budget, resolution=30)
    metrics = {
        "kind": verdict.kind,
        "detail": verdict.detail,
        "period": verdict.period,
        "arc": [verdict.arc.start, verdict.arc.end] if verdict.arc else None,
        "orbit_verdict": prof.verdict,
        "max_gap": prof.max_gap,
    }
    if verdict.kind != "rational-rotation":
        semi = build_semiconjugacy(diffeo, anchor, budget)
        metrics["plateau_count"] = len(semi.plateaus)
        metrics["defect"] = semi.defect
        metrics["alpha"] = semi.alpha
    report.per_stage["conjugacy"] = metrics
    report.verdicts.append({
        "label": "conjugacy",
        "verdict": verdict.kind,
        "qualifier": _qualifier(budget=budget, detail=verdict.detail),
    })
    report.series["conjugacy"] = [
        (k, g, 8.0 / budget) for k, g in prof.gap_trend
    ]


def _stage_combinatorics(report, target, diffeo, anchor, cfg):
    count = cfg.getint("experiment", "count", fallback=60)
    base_arc = getattr(target, "wandering_arc", None)
    if base_arc is None:
        pts = frac(orbit_lift(diffeo, anchor, count))
        sorted_pts = np.sort(pts)
        gaps = np.diff(np.concatenate([sorted_pts, [sorted_pts[0] + 1.0]]))
        if float(gaps.min()) < 1e-12:
            raise ConfigError("config error: orbit revisits itself, no "
                              "disjoint arc family at count=%d" % count)
        half = 0.25 * float(gaps.min())
        arcs = [Arc(p - half, p + half) for p in pts]
    else:
        arcs = [base_arc] + interval_orbit(diffeo, base_arc, count)
    table = predecessor_successor_table(arcs)
    jumps = sorted({table.successor[n] - n for n in range(len(table))
                    if table.successor[n] is not None})
    valid = [n for n in range(len(table))
             if table.natural_nbhd[n] is not None]
    samples = valid[:: max(1, len(valid) // 8)] if valid else []
    worst = 0
    for n in samples:
        fam = pullback_arcs(diffeo, natural_neighborhood(table, n), n)
        worst = max(worst, intersection_multiplicity(fam))
    report.per_stage["combinatorics"] = {
        "arc_count": len(table),
        "successor_jumps": jumps,
        "sampled_indices": list(samples),
        "max_pullback_multiplicity": worst,
        "multiplicity_bound": PULLBACK_MULTIPLICITY_BOUND,
    }
    report.verdicts.append({
        "label": "pullback-multiplicity",
        "verdict": ("within-bound"
                    if worst <= PULLBACK_MULTIPLICITY_BOUND else "exceeded"),
        "qualifier": _qualifier(max_observed=worst,
                                bound=PULLBACK_MULTIPLICITY_BOUND,
                                arcs=len(table)),
    })


def _stage_full(report, target, diffeo, anchor, cfg):
    _stage_crossratio(report, diffeo, anchor, cfg)
    _stage_variation(report, diffeo, anchor, cfg)
    _stage_conjugacy(report, target, diffeo, anchor, cfg)
    var = report.per_stage["variation"]
    finite_evidence = (not var["diverging"].get("zv", True)
                       and var["qv"] is not None)
    no_wandering = report.per_stage["conjugacy"]["kind"] == "conjugate-evidence"
    consistent = finite_evidence == no_wandering
    report.per_stage["criterion"] = {
        "finite_distortion_evidence": finite_evidence,
        "no_wandering_interval": no_wandering,
        "consistent": consistent,
    }
    report.verdicts.append({
        "label": "criterion-consistency",
        "verdict": "consistent" if consistent else "inconsistent",
        "qualifier": _qualifier(
            finite_zv_qv_evidence=finite_evidence,
            no_wandering_interval=no_wandering),
    })


def run_experiment(text: str, seed: int = 0) -> ExperimentReport:
    """Parse the config text, run its pipeline, and return the report."""
    cfg = _parse_config(text)
    pipeline = cfg.get("experiment", "pipeline")
    echo = {s: dict(cfg.items(s)) for s in cfg.sections()}
    report = ExperimentReport(config_echo=echo, seed=seed)
    if cfg.has_section("map"):
        target, diffeo, anchor, _ = _build_target(cfg)
    else:
        target, diffeo, anchor = None, None, DEFAULT_ANCHOR
    if cfg.has_option("experiment", "x0"):
        anchor = cfg.getfloat("experiment", "x0")

    deadline = None
    if cfg.has_option("experiment", "max_seconds"):
        deadline = time.monotonic() + cfg.getfloat("experiment",
                                                   "max_seconds")

    stages = {
        "rotation": lambda: _stage_rotation(report, diffeo, anchor, cfg),
        "variation": lambda: _stage_variation(report, diffeo, anchor, cfg),
        "crossratio": lambda: _stage_crossratio(report, diffeo, anchor, cfg),
        "conjugacy": lambda: _stage_conjugacy(report, target, diffeo,
                                              anchor, cfg),
        "combinatorics": lambda: _stage_combinatorics(report, target,
                                                      diffeo, anchor, cfg),
        "full-criterion": lambda: _stage_full(report, target, diffeo,
                                              anchor, cfg),
    }
    if deadline is not None and time.monotonic() > deadline:
        report.incomplete = True
    else:
        t0 = time.monotonic()
        stages[pipeline]()
        report.timings[pipeline] = time.monotonic() - t0
        if deadline is not None and time.monotonic() > deadline:
            report.incomplete = True
    report.per_stage = _plain(report.per_stage)
    report.verdicts = _plain(report.verdicts)
    return report


def _plain(obj):
    """Recursively convert numpy scalars and tuples for JSON output."""
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _write_outputs(report: ExperimentReport, out_dir: Path,
                   tag: str = "") -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    name = f"report{tag}.json"
    path = out_dir / name
    path.write_text(report.to_json())
    emit = report.config_echo.get("experiment", {}).get("emit_series",
                                                        "false")
    if str(emit).lower() in ("1", "true", "yes", "on"):
        for stage, rows in report.series.items():
            csv_path = out_dir / f"series_{stage}{tag}.csv"
            lines = ["n,value,bound"]
            lines += [f"{int(n)},{v!r},{b!r}" for n, v, b in rows]
            csv_path.write_text("\n".join(lines) + "\n")
    return path


def _sweep_configs(text: str) -> list[tuple[str, str]]:
    """Expand a [sweep] section into (tag, config text) pairs."""
    cfg = _parse_config(text)
    if not cfg.has_section("sweep"):
        return [("", text)]
    items = cfg.items("sweep")
    if len(items) != 1:
        raise ConfigError("config error: [sweep] supports exactly one key")
    key, raw = items[0]
    values = [v.strip() for v in raw.split(",") if v.strip()]
    if not values:
        raise ConfigError(f"config error: [sweep] {key} lists no values")
    out = []
    for i, value in enumerate(values):
        variant = configparser.ConfigParser()
        variant.read_string(text)
        variant.remove_section("sweep")
        variant.set("map", key, value)
        buf = io.StringIO()
        variant.write(buf)
        out.append((f"_{i:03d}", buf.getvalue()))
    return out


def _cmd_run(args) -> int:
    path = Path(args.config)
    try:
        text = path.read_text()
    except OSError as err:
        print(f"cannot read config {path}: {err}", file=sys.stderr)
        return 2
    try:
        variants = _sweep_configs(text)
        out_dir = Path(args.out)
        if len(variants) == 1:
            tag, body = variants[0]
            report = run_experiment(body, seed=args.seed)
            written = [_write_outputs(report, out_dir, tag)]
            flagged = report.incomplete
        else:
            with ThreadPoolExecutor(max_workers=min(4, len(variants))) as ex:
                reports = list(ex.map(
                    lambda pair: (pair[0],
                                  run_experiment(pair[1], seed=args.seed)),
                    variants))
            written = [_write_outputs(rep, out_dir, tag)
                       for tag, rep in reports]
            flagged = any(rep.incomplete for _, rep in reports)
    except ConfigError as err:
        print(str(err), file=sys.stderr)
        return 2
    except PeriodicOrbitError as err:
        print(f"experiment aborted: {err}", file=sys.stderr)
        return 1
    except DenjoyLabError as err:
        print(f"experiment failed: {err}", file=sys.stderr)
        return 1
    for p in written:
        print(p)
    if flagged:
        print("warning: budget exceeded, report incomplete", file=sys.stderr)
    return 0


def _cmd_catalog(args) -> int:
    if args.action != "list":
        print(f"unknown catalog action {args.action!r}", file=sys.stderr)
        return 2
    width = max(len(name) for name, _ in CATALOG_ENTRIES)
    for name, blurb in CATALOG_ENTRIES:
        print(f"{name:<{width}}  {blurb}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="denjoy-lab",
        description="circle-diffeomorphism conjugacy experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment config")
    p_run.add_argument("config", help="path to an INI experiment config")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.set_defaults(func=_cmd_run)

    p_cat = sub.add_parser("catalog", help="inspect built-in targets")
    p_cat.add_argument("action", choices=["list"])
    p_cat.set_defaults(func=_cmd_catalog)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
