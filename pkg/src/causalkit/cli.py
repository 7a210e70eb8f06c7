"""Command-line interface: ``causal-kit {gen,test,matrix,scan,reproduce}``.

Settings come from flags or from an INI file given with ``--config``; keys in
the ``[causalkit]`` section (and in a section named after the subcommand)
mirror the long flag names. Flags override the file.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical
failure. Messages go to stderr; stdout and output files carry data only.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import dataclasses
import io
import json
import logging
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .embedding import LagSpec, ModelVariant, build_design
from .errors import CausalKitError, ConfigError, DataError
from .infotheory import HistogramSpec
from .kernels import KernelKind, KernelSpec
from .measures import (
    GEWEKE_KERNEL,
    GEWEKE_LINEAR,
    HSNCIC,
    MEASURES,
    MUTUAL_INFORMATION,
    TRANSFER_ENTROPY,
    CausalityQuery,
    compute,
)
from .modelselect import CvGrid, cross_validate, dyadic
from .panel import PREPROCESSORS, TimeSeriesPanel, load_csv, preprocess, window
from .significance import (
    THREADS_ENV,
    PermutationPlan,
    WindowPlan,
    derive_seed,
    permutation_test,
    pvalue_matrix,
    rolling_scan,
)
from .synthetic import (
    LINEAR_NAMES,
    LinearBenchmarkSpec,
    NonlinearBenchmarkSpec,
    generate_linear_benchmark,
    generate_nonlinear_benchmark,
)

SCHEMA_VERSION = 1
CONFIG_SECTION = "causalkit"
logger = logging.getLogger("causalkit")

# lag sets used by the linear benchmark experiment
BENCH_SINGLE_LAGS = ("0", "1", "2", "3", "4")
BENCH_RANGE_SETS = (
    ("1-10",),
    ("1-20",),
    ("1-5", "6-10", "11-15"),
    ("1-3", "4-6", "7-9"),
)
BENCH_MEASURES = (GEWEKE_LINEAR, GEWEKE_KERNEL, TRANSFER_ENTROPY, HSNCIC)


# -- argument parsing ---------------------------------------------------------

def _csv_list(text):
    return [s.strip() for s in str(text).split(",") if s.strip()]


def _dyadic_range(text):
    lo, hi = str(text).split(":")
    return dyadic(int(lo), int(hi))


def _common(p):
    p.add_argument("--config", help="INI file with default settings")
    p.add_argument("--seed", type=int, help="master seed (default: fresh entropy)")
    p.add_argument("--threads", type=int, help=f"worker threads (env {THREADS_ENV})")
    p.add_argument("-v", "--verbose", action="store_true")


def _data(p):
    p.add_argument("--input", "-i", help="input CSV panel")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--index-col", action="store_true", help="first CSV column holds row labels")
    p.add_argument("--preprocess", type=_csv_list, default=[],
                   help=f"comma list of steps: {', '.join(sorted(PREPROCESSORS))}")


def _query(p, pair=True):
    p.add_argument("--measure", default=GEWEKE_LINEAR, help=f"one of {', '.join(MEASURES)}")
    if pair:
        p.add_argument("--target")
        p.add_argument("--cause", type=_csv_list)
    p.add_argument("--side", type=_csv_list, default=[])
    p.add_argument("--lags", default="1", help='e.g. "1", "1-3,7"; "0" adds the present cause value')
    p.add_argument("--present-z", action="store_true", help="also condition on side values at time t")
    p.add_argument("--kernel", choices=("linear", "gaussian", "cv"),
                   help="kernel for the Geweke measures; cv selects gamma and sigma by cross-validation")
    p.add_argument("--sigma", type=float, help="Gaussian width (default: median heuristic)")
    p.add_argument("--gamma", type=float, help="ridge regulariser")
    p.add_argument("--lam", type=float, default=1e-3, help="HSNCIC regulariser")
    p.add_argument("--bins", type=int, default=4, help="histogram bins per dimension")
    p.add_argument("--permutations", type=int, default=200)
    p.add_argument("--cv-folds", type=int, default=5)
    p.add_argument("--cv-gammas", type=_dyadic_range, default="-40:-26", help="log2 range lo:hi")
    p.add_argument("--cv-sigmas", type=_dyadic_range, default="7:13", help="log2 range lo:hi")


def _output(p, fmt=True):
    p.add_argument("--output", "-o", help="output path (default: stdout)")
    if fmt:
        p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="causal-kit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a benchmark panel as CSV")
    p.add_argument("kind", choices=("linear-bench", "nonlinear-bench"))
    p.add_argument("--length", type=int)
    _common(p)
    _output(p, fmt=False)

    p = sub.add_parser("test", help="one permutation test")
    _common(p)
    _data(p)
    _query(p)
    _output(p)

    p = sub.add_parser("matrix", help="p-value matrix over all ordered column pairs")
    _common(p)
    _data(p)
    _query(p, pair=False)
    p.add_argument("--columns", type=_csv_list, help="columns to include (default: all)")
    p.set_defaults(measure=None)
    p.add_argument("--measures", type=_csv_list, help="several measures, one matrix each")
    _output(p, fmt=False)

    p = sub.add_parser("scan", help="rolling-window tests in both directions")
    _common(p)
    _data(p)
    _query(p)
    p.add_argument("--window", type=int, help="window length (default: whole panel)")
    p.add_argument("--step", type=int, help="window step (default: window length)")
    _output(p)

    p = sub.add_parser("reproduce", help="run a benchmark experiment end to end")
    p.add_argument("experiment", choices=("linear-bench", "nonlinear-bench"))
    _common(p)
    p.add_argument("--outdir", "-o", required=False)
    p.add_argument("--permutations", type=int, default=200)
    p.add_argument("--realisations", type=int, default=500)
    p.add_argument("--length", type=int)
    p.add_argument("--measures", type=_csv_list, help="restrict the measures that are run")
    p.add_argument("--skip-ranges", action="store_true", help="linear-bench: single lags only")
    return parser


def _apply_config_file(parser, argv):
    """Re-parse with defaults taken from the INI file named by ``--config``."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return parser.parse_args(argv)
    ini = configparser.ConfigParser()
    try:
        with open(known.config) as fh:
            ini.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file: {exc}") from exc
    first = parser.parse_args(argv)
    subparser = parser._subparsers._group_actions[0].choices[first.command]
    values = {}
    for section in (CONFIG_SECTION, first.command):
        if ini.has_section(section):
            values.update(ini.items(section))
    actions = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, raw in values.items():
        dest = key.replace("-", "_")
        if dest not in actions or dest in ("config", "help"):
            raise ConfigError(f"unknown key {key!r} in config file for {first.command!r}")
        action = actions[dest]
        if isinstance(action, argparse._StoreTrueAction):
            defaults[dest] = ini.BOOLEAN_STATES.get(raw.lower())
            if defaults[dest] is None:
                raise ConfigError(f"config key {key!r} needs a boolean, got {raw!r}")
        elif action.type is not None:
            try:
                defaults[dest] = action.type(raw)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"config key {key!r}: cannot parse {raw!r}") from exc
        else:
            defaults[dest] = raw
        if action.choices is not None and defaults[dest] not in action.choices:
            raise ConfigError(f"config key {key!r} must be one of {sorted(action.choices)}")
    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


# -- translating arguments into library objects --------------------------------

def lag_spec(text: str, present_z: bool = False) -> LagSpec:
    """``"0"`` stands for the present cause value; own past then defaults to lag 1."""
    parts = _csv_list(text)
    present = "0" in parts or any(p.startswith("0-") for p in parts)
    rest = []
    for p in parts:
        if p == "0":
            continue
        if p.startswith("0-"):
            p = "1-" + p[2:]
        rest.append(p)
    try:
        spec = LagSpec.parse(",".join(rest)) if rest else None
    except ValueError as exc:
        raise ConfigError(f"cannot parse lag list {text!r}") from exc
    if spec is None:
        if not present:
            raise ConfigError("empty lag list")
        spec = LagSpec((1,))
    return dataclasses.replace(spec, include_present_y=present, include_present_z=present_z)


def _kernel(args, measure):
    if measure not in (GEWEKE_LINEAR, GEWEKE_KERNEL):
        if measure == HSNCIC and args.sigma is not None:
            return KernelSpec.gaussian(args.sigma)
        return None
    kind = args.kernel
    if kind in (None, "cv"):
        kind = "linear" if measure == GEWEKE_LINEAR else "gaussian"
    if measure == GEWEKE_LINEAR and kind != "linear":
        raise ConfigError("geweke-linear uses the linear kernel; use geweke-kernel for a Gaussian kernel")
    if kind == "linear":
        return KernelSpec.linear()
    return KernelSpec.gaussian(args.sigma)


def make_query(args, measure, target, cause, side) -> CausalityQuery:
    spec = lag_spec(args.lags, args.present_z)
    if measure == TRANSFER_ENTROPY and spec.include_present_y:
        raise ConfigError("transfer-entropy has no lag 0; use mutual-information for instantaneous coupling")
    if args.kernel == "cv" and measure not in (GEWEKE_LINEAR, GEWEKE_KERNEL):
        raise ConfigError("--kernel cv applies to the Geweke measures only")
    return CausalityQuery(
        target, tuple(cause), tuple(side), spec, measure,
        kernel=_kernel(args, measure), gamma=args.gamma, lam=args.lam,
        bins=HistogramSpec(args.bins),
    )


def cv_resolve(query: CausalityQuery, panel: TimeSeriesPanel, args, seed: int) -> tuple:
    """Replace kernel width and gamma with the cross-validated choice."""
    variant = ModelVariant.X_Y_AND_Z if query.side else ModelVariant.X_AND_Y
    design = build_design(panel, query.target, query.cause, query.side, query.lags, variant)
    kind = query.resolved_kernel.kind
    grid = CvGrid(args.cv_gammas, args.cv_sigmas, args.cv_folds, seed)
    rep = cross_validate(design, kind, grid)
    q = dataclasses.replace(query, kernel=rep.kernel(kind), gamma=rep.best_gamma)
    info = {"cv_gamma": rep.best_gamma, "cv_sigma": None if kind is KernelKind.LINEAR else rep.best_sigma,
            "cv_folds": grid.folds, "cv_score": float(rep.score_surface.min())}
    return q, info


def _seed(args) -> int:
    if args.seed is not None:
        return int(args.seed)
    return int(np.random.SeedSequence().entropy % (2**63))


def _load(args) -> TimeSeriesPanel:
    if not args.input:
        raise ConfigError("--input is required")
    try:
        panel = load_csv(args.input, delimiter=args.delimiter, index_col=args.index_col)
    except FileNotFoundError as exc:
        raise DataError(str(exc)) from exc
    except OSError as exc:
        raise DataError(f"cannot read {args.input}: {exc}") from exc
    return preprocess(panel, args.preprocess)


def _run_config(args, seed, **extra) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("config", "verbose")}
    cfg["seed"] = seed
    for k in ("cv_gammas", "cv_sigmas"):
        if k in cfg:
            cfg[k] = [math.log2(v) for v in (cfg[k][0], cfg[k][-1])]
    cfg.update(extra)
    return cfg


# -- serialisation --------------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, Path):
        return str(obj)
    return obj


def dumps(payload: dict) -> str:
    body = {"schema_version": SCHEMA_VERSION}
    body.update(payload)
    return json.dumps(_jsonable(body), indent=2, sort_keys=False) + "\n"


def _write_text(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)


def _csv_text(rows, header, config=None) -> str:
    buf = io.StringIO()
    if config is not None:
        buf.write("# config: " + json.dumps(_jsonable(config), sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(v) for v in r])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return "" if not math.isfinite(float(v)) else repr(float(v))
    return v


def read_matrix_json(path):
    """Load a matrix JSON twin back into ``(columns, pvalues, values)`` arrays."""
    data = json.loads(Path(path).read_text())
    conv = lambda m: np.array([[np.nan if v is None else v for v in row] for row in m], dtype=float)
    return data["columns"], conv(data["pvalues"]), conv(data["values"])


def matrix_payload(columns, pvals, values, config) -> dict:
    return {"kind": "pvalue-matrix", "convention": "entry [target][cause]: column causes row",
            "config": config, "columns": list(columns), "pvalues": pvals, "values": values}


def write_matrix(stem: Path, columns, pvals, values, config):
    """CSV (row = target, column = cause) plus a JSON twin carrying metadata."""
    rows = [[c] + list(pvals[i]) for i, c in enumerate(columns)]
    _write_text(stem.with_suffix(".csv"), _csv_text(rows, ["target\\cause"] + list(columns), config))
    _write_text(stem.with_suffix(".json"), dumps(matrix_payload(columns, pvals, values, config)))


# -- commands ---------------------------------------------------------------------

def cmd_gen(args) -> int:
    seed = _seed(args)
    if args.kind == "linear-bench":
        spec = LinearBenchmarkSpec(length=args.length or 250, seed=seed)
        panel = generate_linear_benchmark(spec)
    else:
        spec = NonlinearBenchmarkSpec(length=args.length or 500, seed=seed)
        panel = generate_nonlinear_benchmark(spec)
    if args.output in (None, "-"):
        import tempfile

        with tempfile.TemporaryDirectory() as d:
            tmp = Path(d) / "panel.csv"
            panel.to_csv(tmp)
            sys.stdout.write(tmp.read_text())
    else:
        Path(args.output).parent.mkdir(parents=True, exist_ok=True)
        panel.to_csv(args.output)
    logger.info("generated %s with seed %d", args.kind, seed)
    return 0


def _single_test(args, panel, query, seed):
    extra = {}
    if args.kernel == "cv":
        query, extra = cv_resolve(query, panel, args, seed)
    res = permutation_test(query, panel, PermutationPlan(args.permutations, seed), args.threads)
    resolved = dict(res.resolved)
    resolved.update(extra)
    return res, resolved


def cmd_test(args) -> int:
    seed = _seed(args)
    if not args.target or not args.cause:
        raise ConfigError("--target and --cause are required")
    panel = _load(args)
    query = make_query(args, args.measure, args.target, args.cause, args.side)
    res, resolved = _single_test(args, panel, query, seed)
    config = _run_config(args, seed)
    if args.format == "json":
        text = dumps({"kind": "permutation-test", "config": config, "resolved": resolved,
                      "observed": res.observed, "p_value": res.p_value,
                      "n_permutations": res.plan.n_r, "surrogates": res.surrogates})
    else:
        rows = [["observed", res.observed], ["p_value", res.p_value]]
        rows += [[f"surrogate_{j}", s] for j, s in enumerate(res.surrogates, 1)]
        text = _csv_text(rows, ["field", "value"], {"config": config, "resolved": resolved})
    _write_text(args.output, text)
    logger.info("p = %.4f (observed %.6g)", res.p_value, res.observed)
    return 0


def cmd_matrix(args) -> int:
    seed = _seed(args)
    panel = _load(args)
    columns = args.columns or panel.names
    if len(columns) < 2:
        raise ConfigError("a p-value matrix needs at least two columns")
    for c in columns:
        panel.column(c)
    measures = args.measures or [args.measure or GEWEKE_LINEAR]
    if args.kernel == "cv":
        raise ConfigError("--kernel cv is not supported for matrices; run test with cv and pass --sigma/--gamma")
    results = {}
    for m in measures:
        # validate the measure and lag combination once up front
        query = make_query(args, m, columns[0], [columns[1]], args.side)
        opts = dict(kernel=query.kernel, gamma=query.gamma, lam=query.lam, bins=query.bins)
        pvals, values = pvalue_matrix(panel, columns, query.lags, m,
                                      PermutationPlan(args.permutations, seed), args.threads, **opts)
        results[m] = (pvals, values, query.describe())
    if args.output in (None, "-"):
        out = {m: matrix_payload(columns, p, v, _run_config(args, seed, measure=m, query=d))
               for m, (p, v, d) in results.items()}
        _write_text(None, dumps({"kind": "pvalue-matrices", "matrices": out}))
        return 0
    base = Path(args.output)
    stem = base.with_suffix("") if base.suffix in (".csv", ".json") else base
    for m, (p, v, d) in results.items():
        target = stem if len(results) == 1 else stem.with_name(f"{stem.name}_{m}")
        write_matrix(target, columns, p, v, _run_config(args, seed, measure=m, query=d))
    return 0


def scan_rows(args, panel, seed):
    """All windows for A->B, B->A and, with side columns, their conditional twins."""
    a, b = args.cause[0], args.target
    if len(args.cause) != 1:
        raise ConfigError("scan takes a single --cause column")
    directions = [(f"{a}->{b}", b, a, ()), (f"{b}->{a}", a, b, ())]
    if args.side:
        tag = ",".join(args.side)
        directions += [(f"{a}->{b}|{tag}", b, a, args.side), (f"{b}->{a}|{tag}", a, b, args.side)]
    length = args.window or len(panel)
    wplan = WindowPlan(length, args.step or length)
    rows, details = [], []
    for d, (name, tgt, cause, side) in enumerate(directions):
        query = make_query(args, args.measure, tgt, [cause], side)
        dir_seed = derive_seed(seed, name)
        if args.kernel == "cv":
            results = []
            for i, start in enumerate(wplan.starts(len(panel))):
                sub = window(panel, start, wplan.window_length)
                q, extra = cv_resolve(query, sub, args, derive_seed(dir_seed, i))
                r = permutation_test(q, sub, PermutationPlan(args.permutations, derive_seed(dir_seed, i)),
                                     args.threads)
                r.resolved.update(extra)
                results.append((start, r))
        else:
            results = rolling_scan(query, panel, wplan, PermutationPlan(args.permutations, dir_seed),
                                   args.threads)
        for start, r in results:
            end = start + wplan.window_length - 1
            rows.append([panel.label(start), panel.label(end), name, r.observed, r.p_value])
            details.append({"window_start": panel.label(start), "window_end": panel.label(end), "dir": name,
                            "value": r.observed, "p_value": r.p_value, "resolved": r.resolved})
    return rows, details


def cmd_scan(args) -> int:
    seed = _seed(args)
    if not args.target or not args.cause:
        raise ConfigError("--target and --cause are required")
    panel = _load(args)
    rows, details = scan_rows(args, panel, seed)
    config = _run_config(args, seed)
    if args.format == "json":
        text = dumps({"kind": "rolling-scan", "config": config, "windows": details})
    else:
        text = _csv_text(rows, ["window_start", "window_end", "dir", "value", "p_value"], config)
    _write_text(args.output, text)
    return 0


def reproduce_linear(args, seed, outdir: Path) -> dict:
    length = args.length or 250
    panel = generate_linear_benchmark(LinearBenchmarkSpec(length=length, seed=seed))
    measures = args.measures or list(BENCH_MEASURES)
    plan = PermutationPlan(args.permutations, seed)
    entries = []
    jobs = [(lag,) for lag in BENCH_SINGLE_LAGS]
    if not args.skip_ranges:
        jobs += list(BENCH_RANGE_SETS)
    for lagset in jobs:
        for lags in lagset:
            for m in measures:
                single = len(lagset) == 1 and "-" not in lags
                measure = m
                if lags == "0":
                    if m == HSNCIC:
                        continue
                    if m == TRANSFER_ENTROPY:
                        measure = MUTUAL_INFORMATION
                elif m == TRANSFER_ENTROPY and not single:
                    continue
                spec = lag_spec(lags)
                t0 = time.perf_counter()
                pvals, values = pvalue_matrix(panel, list(LINEAR_NAMES), spec, measure, plan, args.threads)
                name = f"{measure}_lag{lags}"
                cfg = {"experiment": "linear-bench", "seed": seed, "length": length,
                       "permutations": args.permutations, "measure": measure, "lags": lags,
                       "query": CausalityQuery("ts1", "ts2", (), spec, measure).describe()}
                write_matrix(outdir / name, list(LINEAR_NAMES), pvals, values, cfg)
                entries.append({"file": name, "measure": measure, "lags": lags})
                logger.info("%s done in %.1fs", name, time.perf_counter() - t0)
    return {"matrices": entries}


NONLINEAR_CELLS = (
    (GEWEKE_LINEAR, False), (GEWEKE_LINEAR, True),
    (GEWEKE_KERNEL, False), (GEWEKE_KERNEL, True),
    (HSNCIC, False), (HSNCIC, True),
    (TRANSFER_ENTROPY, False),
)


def reproduce_nonlinear(args, seed, outdir: Path) -> dict:
    length = args.length or 500
    measures = set(args.measures or [m for m, _ in NONLINEAR_CELLS])
    cells = [(m, c) for m, c in NONLINEAR_CELLS if m in measures]
    values = {f"{m}{'|y' if c else ''}": [] for m, c in cells}
    for r in range(args.realisations):
        panel = generate_nonlinear_benchmark(
            NonlinearBenchmarkSpec(length=length, seed=derive_seed(seed, r)))
        for m, cond in cells:
            # x reaches z two steps later, so the single TE lag is 2
            lags = LagSpec((2,)) if m == TRANSFER_ENTROPY else LagSpec.upto(2)
            side = ("y",) if cond else ()
            q = CausalityQuery("z", ("x",), side, lags, m)
            values[f"{m}{'|y' if cond else ''}"].append(compute(q, panel))
    rows = [[r] + [values[k][r] for k in values] for r in range(args.realisations)]
    cfg = {"experiment": "nonlinear-bench", "seed": seed, "length": length,
           "realisations": args.realisations, "embedding": 2, "direction": "x->z",
           "cells": list(values)}
    _write_text(outdir / "nonlinear_values.csv", _csv_text(rows, ["realisation"] + list(values), cfg))
    summary = {k: {"median": float(np.median(v)), "mean": float(np.mean(v)), "n": len(v)}
               for k, v in values.items()}
    return {"values_file": "nonlinear_values.csv", "summary": summary}


def cmd_reproduce(args) -> int:
    if args.seed is None:
        raise ConfigError("reproduce requires --seed")
    outdir = Path(args.outdir or f"report-{args.experiment}-{args.seed}")
    outdir.mkdir(parents=True, exist_ok=True)
    if args.experiment == "linear-bench":
        report = reproduce_linear(args, args.seed, outdir)
    else:
        report = reproduce_nonlinear(args, args.seed, outdir)
    config = _run_config(args, args.seed, outdir=str(outdir))
    _write_text(outdir / "report.json", dumps({"kind": "reproduce", "config": config, **report}))
    return 0


COMMANDS = {"gen": cmd_gen, "test": cmd_test, "matrix": cmd_matrix, "scan": cmd_scan,
            "reproduce": cmd_reproduce}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = _apply_config_file(parser, argv)
    except CausalKitError as exc:
        print(f"causal-kit: error: {exc}", file=sys.stderr)
        return exc.exit_code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except CausalKitError as exc:
        print(f"causal-kit: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
