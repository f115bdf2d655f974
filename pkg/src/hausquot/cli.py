"""Command-line front end: run one operation of one scenario, emit a table.

Output is deterministic for a fixed configuration (including --seed): reals
are printed with 17 significant digits, CSV rows use LF endings, JSON is an
array of objects with fixed key order.  Exit status: 0 on success, 1 when a
tolerance check failed (the table is still emitted), 2 on configuration
errors.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import groups
from .finsler import (agreement_bound, estimate_all, max_pairwise_gap,
                      norm_axiom_check, invariant_norm_check,
                      biinvariant_bound_check)
from .hausdorff import induced_metric, metric_axiom_check, invariance_suite
from .kernels import BACKEND
from .ladder import StepLadder
from .paths import (IterationBudgetExceeded, QuotientPath, intrinsic_distance,
                    path_length)
from .scenarios import (SCENARIO_NAMES, build_scenario, expected_table,
                        registry, replay)

__all__ = ["RunConfig", "ConfigError", "run", "emit_table", "parse_table",
           "main"]

OPERATIONS = ("distance", "finsler-norm", "finsler-sweep", "intrinsic",
              "length", "checks")

_DEFAULT_STEPS = {"finsler-sweep": 16, "length": 6, "intrinsic": 3}


class ConfigError(ValueError):
    """Invalid run configuration (unknown names, bad vectors, bad files)."""


@dataclass
class RunConfig:
    scenario: str
    op: str
    steps: int = None
    a: float = None
    b: float = None
    grid_n: int = None
    ladder_t0: float = None
    ladder_ratio: float = None
    ladder_depth: int = None
    frm: tuple = None
    to: tuple = None
    v: tuple = None
    out: str = None
    fmt: str = "csv"
    seed: int = 0
    extra: dict = field(default_factory=dict)


def _parse_vector(text, what):
    try:
        return tuple(float(p) for p in str(text).split(","))
    except ValueError:
        raise ConfigError("could not parse %s vector %r" % (what, text))


def _fmt_real(x):
    return "%.17g" % float(x)


def _fmt_cell(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return _fmt_real(x)
    return str(x)


def emit_table(rows, fmt="csv"):
    """Render rows (list of same-keyed dicts) to CSV or JSON text."""
    if fmt not in ("csv", "json"):
        raise ConfigError("format must be csv or json, got %r" % fmt)
    columns = list(rows[0].keys()) if rows else []
    for r in rows[1:]:
        if list(r.keys()) != columns:
            raise ValueError("rows are not homogeneous")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_fmt_cell(r[c]) for c in columns])
        return buf.getvalue()
    parts = []
    for r in rows:
        fields = []
        for c in columns:
            val = r[c]
            if isinstance(val, bool):
                rendered = "true" if val else "false"
            elif isinstance(val, (int, np.integer)):
                rendered = str(int(val))
            elif isinstance(val, (float, np.floating)):
                rendered = _fmt_real(val)
            else:
                rendered = json.dumps(str(val))
            fields.append("%s: %s" % (json.dumps(c), rendered))
        parts.append("  {" + ", ".join(fields) + "}")
    return "[\n" + ",\n".join(parts) + "\n]\n" if parts else "[]\n"


def _parse_cell(text):
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def parse_table(text, fmt="csv"):
    """Inverse of emit_table (modulo int/float unification of whole reals)."""
    if fmt == "json":
        return json.loads(text)
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        return []
    header = rows[0]
    return [{k: _parse_cell(v) for k, v in zip(header, r)} for r in rows[1:]]


def _scenario_overrides(config):
    spec = registry()[config.scenario]
    overrides = {}
    if config.grid_n is not None:
        if "grid_n" not in spec.defaults:
            raise ConfigError("--grid-n does not apply to scenario %s"
                              % config.scenario)
        overrides["grid_n"] = config.grid_n
    if config.a is not None or config.b is not None:
        if "a" not in spec.defaults:
            raise ConfigError("--a/--b only apply to hyperbolic-two-points")
        if config.a is not None:
            overrides["a"] = config.a
        if config.b is not None:
            overrides["b"] = config.b
    return overrides


def _ladder_override(config, S):
    if (config.ladder_t0 is None and config.ladder_ratio is None
            and config.ladder_depth is None):
        return None
    base = S.default_ladder
    try:
        return StepLadder(
            config.ladder_t0 if config.ladder_t0 is not None else base.t0,
            config.ladder_ratio if config.ladder_ratio is not None
            else base.ratio,
            config.ladder_depth if config.ladder_depth is not None
            else base.depth)
    except ValueError as exc:
        raise ConfigError(str(exc))


def _element(S, params, what):
    if params is None:
        raise ConfigError("this operation needs --%s" % what)
    try:
        return groups.element(S.group, params)
    except ValueError as exc:
        raise ConfigError("bad --%s for scenario %s: %s" % (what, S.name, exc))


def _algebra(S, comps):
    if comps is None:
        raise ConfigError("this operation needs --v")
    try:
        return groups.algebra_vector(S.group, comps)
    except ValueError as exc:
        raise ConfigError("bad --v: %s" % exc)


def _vec_text(t):
    # single-component vectors stay numeric so CSV re-parsing keeps the type
    if len(t) == 1:
        return float(t[0])
    return ",".join(_fmt_real(x) for x in t)


def sweep_directions(S, steps):
    """Deterministic unit direction grid in the algebra frame."""
    dim = S.group.algebra_dim
    if dim == 1:
        return [((-1.0) ** k,) for k in range(steps)]
    if dim == 2:
        return [(math.cos(2.0 * math.pi * k / steps),
                 math.sin(2.0 * math.pi * k / steps)) for k in range(steps)]
    golden = math.pi * (3.0 - math.sqrt(5.0))
    out = []
    for k in range(steps):
        z = 1.0 - 2.0 * (k + 0.5) / steps
        r = math.sqrt(max(0.0, 1.0 - z * z))
        out.append((r * math.cos(golden * k), r * math.sin(golden * k), z))
    return out


def _finsler_row(S, v, ladder):
    est = estimate_all(S, v, ladder=ladder)
    gap = max_pairwise_gap(est)
    row = {
        "direction": _vec_text(v.components),
        "limit_value": est["limit"].value,
        "limit_err": est["limit"].error_estimate,
        "sup_killing": est["sup_killing"].value,
        "sup_continuous": est["sup_continuous"].value,
        "closed_form": est["closed_form"].value if "closed_form" in est
        else float("nan"),
        "max_pairwise_gap": gap,
    }
    keys = list(est)
    ok = True
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            x, y = est[keys[i]], est[keys[j]]
            if abs(x.value - y.value) > agreement_bound(x, y):
                ok = False
    return row, ok


def _run_distance(S, config, ladder):
    g1 = _element(S, config.frm, "from")
    g2 = _element(S, config.to, "to")
    d = induced_metric(S, g1, g2)
    return 0, [{"scenario": S.name, "from": _vec_text(config.frm),
                "to": _vec_text(config.to), "distance": d}]


def _run_finsler_norm(S, config, ladder):
    v = _algebra(S, config.v)
    row, ok = _finsler_row(S, v, ladder)
    return (0 if ok else 1), [row]


def _run_finsler_sweep(S, config, ladder):
    steps = config.steps or _DEFAULT_STEPS["finsler-sweep"]
    rows = []
    status = 0
    for v in sweep_directions(S, steps):
        row, ok = _finsler_row(S, groups.algebra_vector(S.group, v), ladder)
        rows.append(row)
        if not ok:
            status = 1
    return status, rows


def _run_intrinsic(S, config, ladder):
    g1 = _element(S, config.frm, "from")
    g2 = _element(S, config.to, "to")
    knots = config.steps or _DEFAULT_STEPS["intrinsic"]
    direct = induced_metric(S, g1, g2)
    status = 0
    try:
        value = intrinsic_distance(S, g1, g2, knots=knots, seed=config.seed)
    except IterationBudgetExceeded as exc:
        value = exc.best_value
        status = 1
    if value < direct - 1e-9:
        status = 1
    return status, [{"scenario": S.name, "from": _vec_text(config.frm),
                     "to": _vec_text(config.to), "induced": direct,
                     "intrinsic": value, "gap": value - direct}]


def _run_length(S, config, ladder):
    g1 = _element(S, config.frm, "from")
    g2 = _element(S, config.to, "to")
    refinements = config.steps or _DEFAULT_STEPS["length"]
    values = path_length(S, QuotientPath([g1, g2]), refinements)
    rows = []
    status = 0
    prev = None
    for level, val in enumerate(values):
        gap = 0.0 if prev is None else val - prev
        if prev is not None and val < prev - 1e-12:
            status = 1
        rows.append({"level": level, "segments": 2 ** level, "length": val,
                     "cauchy_gap": gap})
        prev = val
    return status, rows


def _check_row(report):
    return {"check": report.name, "residual": report.worst(),
            "tolerance": report.tolerance, "passed": report.ok}


def _run_checks(S, config, ladder):
    rows = []
    status = 0
    for entry in expected_table(S.name):
        observed, ok = replay(S, entry)
        tol = entry.tol if entry.tol is not None else 2.0 * S.X.fill_radius
        rows.append({
            "check": "expected[%s]" % entry.label,
            "residual": (0.0 if isinstance(observed, bool)
                         else abs(observed - entry.expected)),
            "tolerance": tol,
            "passed": bool(ok),
        })
        if not ok:
            status = 1
    seed = config.seed
    reports = [
        metric_axiom_check(S, trials=100, seed=seed),
        invariance_suite(S, trials=50, seed=seed + 1),
        norm_axiom_check(S, trials=100, seed=seed + 2),
        invariant_norm_check(S, trials=10, seed=seed + 3),
    ]
    if S.group.kind == groups.KIND_TRANSLATION_RN:
        rng = np.random.default_rng(seed + 4)
        reports.append(biinvariant_bound_check(
            S, groups.algebra_vector(S.group,
                                     rng.standard_normal(
                                         S.group.algebra_dim))))
    for rep in reports:
        rows.append(_check_row(rep))
        if not rep.ok:
            status = 1
    return status, rows


_RUNNERS = {
    "distance": _run_distance,
    "finsler-norm": _run_finsler_norm,
    "finsler-sweep": _run_finsler_sweep,
    "intrinsic": _run_intrinsic,
    "length": _run_length,
    "checks": _run_checks,
}


def run(config):
    """Execute a validated RunConfig; returns (exit status, rows)."""
    if config.scenario not in SCENARIO_NAMES:
        raise ConfigError("unknown scenario %r; known: %s"
                          % (config.scenario, ", ".join(SCENARIO_NAMES)))
    if config.op not in OPERATIONS:
        raise ConfigError("unknown operation %r; known: %s"
                          % (config.op, ", ".join(OPERATIONS)))
    if config.fmt not in ("csv", "json"):
        raise ConfigError("format must be csv or json, got %r" % config.fmt)
    try:
        S = build_scenario(config.scenario, **_scenario_overrides(config))
    except (ValueError, KeyError) as exc:
        raise ConfigError(str(exc))
    ladder = _ladder_override(config, S)
    return _RUNNERS[config.op](S, config, ladder)


def _load_config_file(path):
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError("%s:%d: expected key=value" %
                                      (path, lineno))
                key, _, val = line.partition("=")
                values[key.strip().replace("-", "_")] = val.strip()
    except OSError as exc:
        raise ConfigError("cannot read config file: %s" % exc)
    return values


_FILE_KEYS = {
    "scenario": str, "op": str, "steps": int, "a": float, "b": float,
    "grid_n": int, "ladder_t0": float, "ladder_ratio": float,
    "ladder_depth": int, "out": str, "format": str, "seed": int,
}


def build_parser():
    p = argparse.ArgumentParser(
        prog="hausquot",
        description="Induced Hausdorff quotient metrics, intrinsic lengths, "
                    "and Finsler norm estimation on worked scenarios.")
    p.add_argument("--scenario", help="one of: %s" % ", ".join(SCENARIO_NAMES))
    p.add_argument("--op", help="one of: %s" % ", ".join(OPERATIONS))
    p.add_argument("--steps", type=int,
                   help="sweep directions / refinement levels / interior "
                        "knots, depending on --op")
    p.add_argument("--a", type=float, help="hyperbolic scenario: half "
                                           "horizontal separation")
    p.add_argument("--b", type=float, help="hyperbolic scenario: height")
    p.add_argument("--grid-n", type=int, dest="grid_n",
                   help="sample density override (torus grid / sphere rings)")
    p.add_argument("--ladder-t0", type=float, dest="ladder_t0")
    p.add_argument("--ladder-ratio", type=float, dest="ladder_ratio")
    p.add_argument("--ladder-depth", type=int, dest="ladder_depth")
    p.add_argument("--from", dest="frm", help="group parameters, comma-"
                                              "separated")
    p.add_argument("--to", dest="to", help="group parameters, comma-separated")
    p.add_argument("--v", dest="v", help="algebra components, comma-separated")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"),
                   help="output format (default csv)")
    p.add_argument("--seed", type=int, help="seed for randomized checks")
    p.add_argument("--config", help="flat key=value config file; flags "
                                    "override file values")
    p.add_argument("--backend", action="store_true",
                   help="print the selected scan backend and exit")
    return p


def make_run_config(args):
    file_values = _load_config_file(args.config) if args.config else {}
    merged = {}
    for key, cast in _FILE_KEYS.items():
        if key in file_values:
            try:
                merged[key] = cast(file_values[key])
            except ValueError:
                raise ConfigError("config file: bad value for %s: %r"
                                  % (key, file_values[key]))
    for key in ("from", "to", "v"):
        if key in file_values:
            merged[key] = file_values[key]
    unknown = set(file_values) - set(_FILE_KEYS) - {"from", "to", "v"}
    if unknown:
        raise ConfigError("config file: unknown keys %s"
                          % ", ".join(sorted(unknown)))

    def pick(flag, key, default=None):
        if flag is not None:
            return flag
        return merged.get(key, default)

    scenario = pick(args.scenario, "scenario")
    op = pick(args.op, "op")
    if not scenario or not op:
        raise ConfigError("--scenario and --op are required (via flags or "
                          "config file)")
    frm = pick(args.frm, "from")
    to = pick(args.to, "to")
    v = pick(args.v, "v")
    return RunConfig(
        scenario=scenario, op=op,
        steps=pick(args.steps, "steps"),
        a=pick(args.a, "a"), b=pick(args.b, "b"),
        grid_n=pick(args.grid_n, "grid_n"),
        ladder_t0=pick(args.ladder_t0, "ladder_t0"),
        ladder_ratio=pick(args.ladder_ratio, "ladder_ratio"),
        ladder_depth=pick(args.ladder_depth, "ladder_depth"),
        frm=_parse_vector(frm, "--from") if frm is not None else None,
        to=_parse_vector(to, "--to") if to is not None else None,
        v=_parse_vector(v, "--v") if v is not None else None,
        out=pick(args.out, "out"),
        fmt=pick(args.fmt, "format", "csv"),
        seed=pick(args.seed, "seed", 0))


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.backend:
        print(BACKEND)
        return 0
    try:
        config = make_run_config(args)
        status, rows = run(config)
        text = emit_table(rows, config.fmt)
    except ConfigError as exc:
        print("configuration error: %s" % exc, file=sys.stderr)
        return 2
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
