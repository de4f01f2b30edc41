"""Command-line frontend: generate, build, metrics, and sweep subcommands.

Every run writes a manifest JSON with the fully resolved configuration and
seeds; re-running a subcommand from its manifest reproduces the output
files byte for byte.

Exit codes: 0 success, 2 configuration error, 3 input parse error,
4 computation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import graphs, metrics, series, sweep
from .errors import Disconnected, InvalidParams, ParseError, PvgError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PARSE = 3
EXIT_COMPUTE = 4


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _write_json(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _load_config(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON config: {exc}")


def _resolve_threads(args) -> int:
    raw = args.threads if args.threads is not None \
        else os.environ.get("PVG_THREADS", str(os.cpu_count() or 1))
    try:
        n = int(raw)
    except ValueError:
        raise InvalidParams(f"bad thread count {raw!r}")
    if n < 1:
        raise InvalidParams("thread count must be >= 1")
    return n


# --- generate -------------------------------------------------------------

def cmd_generate(args) -> int:
    cfg = {}
    if args.config:
        cfg = _load_config(args.config).get("params", _load_config(args.config))
    overrides = {
        "a_c": args.ac, "f_c": args.fc, "f_m": args.fm, "m": args.depth,
        "noise_std": args.noise_std, "duration_s": args.duration,
        "dt": args.dt, "rng_seed": args.seed,
    }
    for key, val in overrides.items():
        if val is not None:
            cfg[key] = val
    params = series.AmSignalParams(**cfg)
    ts = series.generate_am(params)
    series.save_series_csv(ts, args.output)
    _write_json({"command": "generate", "params": vars(params),
                 "output": str(args.output)},
                str(args.output) + ".manifest.json")
    rms = float(np.sqrt(np.mean(ts.values ** 2)))
    print(f"N={ts.n} rms={_fmt(rms)}")
    return EXIT_OK


# --- build ----------------------------------------------------------------

def cmd_build(args) -> int:
    threads = _resolve_threads(args)
    if args.config:
        cfg = _load_config(args.config)
        in_path = cfg["input"]
        rho, p0 = cfg["rho"], cfg["p0"]
        dt = cfg.get("dt")
    else:
        in_path, rho, p0, dt = args.input, args.rho, args.p0, args.dt
    if in_path is None or rho is None or p0 is None:
        raise InvalidParams("build needs --input, --rho and --p0 (or --config)")
    params = graphs.PvgParams(rho=rho, p0=p0)

    ts = series.load_series_csv(in_path, dt=dt)
    norm = series.normalize(ts)
    t_start = time.perf_counter()
    pvg = graphs.build_pvg(norm, params)
    wall = time.perf_counter() - t_start

    os.makedirs(args.output_dir, exist_ok=True)

    def out(name):
        return os.path.join(args.output_dir, name)

    graphs.save_matrix_binary(pvg.prob, out("prob.pvgm"))
    graphs.save_matrix_binary(pvg.strength, out("strength.pvgm"))
    graphs.save_matrix_binary(pvg.weighted, out("weighted.pvgm"))
    graphs.save_edge_list(pvg.adjacency, out("adjacency.csv"))
    n_edges = int(graphs.degree_sequence(pvg.adjacency).sum() // 2)
    _write_json({"n_nodes": pvg.n, "n_edges": n_edges,
                 "wall_time_s": wall}, out("build_report.json"))
    _write_json({"command": "build", "input": str(in_path),
                 "rho": rho, "p0": p0, "dt": dt, "threads": threads},
                out("manifest.json"))
    print(f"N={pvg.n} edges={n_edges}")
    return EXIT_OK


# --- metrics ----------------------------------------------------------------

def cmd_metrics(args) -> int:
    if args.config:
        cfg = _load_config(args.config)
        graph_path = cfg.get("graph")
        in_path = cfg.get("input")
        rho, p0 = cfg.get("rho"), cfg.get("p0")
        dt = cfg.get("dt")
        n_real = cfg.get("baseline_realizations", args.baseline_realizations)
        seed = cfg.get("seed", args.seed if args.seed is not None else 0)
    else:
        graph_path, in_path = args.graph, args.input
        rho, p0, dt = args.rho, args.p0, args.dt
        n_real = args.baseline_realizations
        seed = args.seed if args.seed is not None else 0

    if graph_path is not None:
        adj = graphs.load_edge_list(graph_path)
    elif in_path is not None:
        if rho is None or p0 is None:
            raise InvalidParams("series input needs --rho and --p0")
        ts = series.load_series_csv(in_path, dt=dt)
        adj = graphs.pvg_adjacency(series.normalize(ts),
                                   graphs.PvgParams(rho=rho, p0=p0))
    else:
        raise InvalidParams("metrics needs --graph or --input")

    baseline = None
    if n_real:
        baseline = metrics.BaselineConfig(n_realizations=n_real, rng_seed=seed)
    try:
        metrics.avg_path_length(adj)  # connectivity gate
        gm = metrics.compute_all(adj, baseline)
    except Disconnected as exc:
        print(json.dumps({"error": "disconnected",
                          "n_components": exc.n_components}), file=sys.stderr)
        return EXIT_COMPUTE
    _write_json(gm.to_dict(), args.output)
    _write_json({"command": "metrics", "graph": graph_path, "input": in_path,
                 "rho": rho, "p0": p0, "dt": dt,
                 "baseline_realizations": n_real, "seed": seed},
                str(args.output) + ".manifest.json")
    print(f"metrics written to {args.output}")
    return EXIT_OK


# --- sweep ----------------------------------------------------------------

def _sweep_config(doc: dict) -> tuple[str, dict]:
    mode = doc.get("mode")
    if mode not in ("fig2", "fig3"):
        raise InvalidParams("sweep config needs mode 'fig2' or 'fig3'")
    sw = doc.get("sweep", {})
    rho_grid = sw.get("rho_grid") or sweep.default_rho_grid()
    default_p0 = list(sweep.DEFAULT_P0_GRID) if mode == "fig2" else [0.5]
    p0_grid = sw.get("p0_grid") or default_p0
    if mode == "fig2":
        default_metrics = ["L", "C", "density", "mean_degree", "k_max"]
    else:
        default_metrics = ["L", "C", "density", "mean_degree", "k_max",
                           "sigma", "gamma"]
    enabled = tuple(sw.get("metrics") or default_metrics)
    baseline = None
    if "baseline" in sw and sw["baseline"] is not None:
        baseline = metrics.BaselineConfig(**sw["baseline"])
    elif "sigma" in enabled:
        baseline = metrics.BaselineConfig()
    cfg = sweep.SweepConfig(rho_grid=[float(r) for r in rho_grid],
                            p0_grid=[float(p) for p in p0_grid],
                            baseline=baseline, metrics_enabled=enabled)
    resolved = {
        "mode": mode,
        "sweep": {
            "rho_grid": cfg.rho_grid,
            "p0_grid": cfg.p0_grid,
            "metrics": list(cfg.metrics_enabled),
            "baseline": None if baseline is None else vars(baseline),
        },
    }
    return mode, {"cfg": cfg, "resolved": resolved}


def cmd_sweep(args) -> int:
    threads = _resolve_threads(args)
    doc = _load_config(args.config)
    mode, bundle = _sweep_config(doc)
    cfg = bundle["cfg"]
    resolved = bundle["resolved"]

    if mode == "fig2":
        am = series.AmSignalParams(**doc.get("am", {}))
        resolved["am"] = vars(am)
        result = sweep.reproduce_fig2(am, cfg)
    else:
        in_path = doc.get("input")
        if not in_path:
            raise InvalidParams("fig3 sweep needs an 'input' recording path")
        pre = series.PreprocessConfig(**doc.get("preprocess", {}))
        resolved["input"] = str(in_path)
        resolved["preprocess"] = vars(pre)
        resolved["dt"] = doc.get("dt")
        recording = series.load_series_csv(in_path, dt=doc.get("dt"))
        result = sweep.reproduce_fig3(recording, pre, cfg)

    os.makedirs(args.output_dir, exist_ok=True)

    def out(name):
        return os.path.join(args.output_dir, name)

    sweep.write_cells_csv(result, out("cells.csv"))
    sweep.write_aggregates_csv(result, out("aggregates.csv"))
    sweep.write_result_json(result, out("result.json"))
    resolved["threads"] = threads
    _write_json(resolved, out("manifest.json"))
    n_err = len(result.errors)
    print(f"cells={len(result.cells)} errors={n_err}")
    return EXIT_OK if (result.cells or not n_err) else EXIT_COMPUTE


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pvg",
        description="Probabilistic visibility graphs for time series")
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="generate an AM test signal")
    p_gen.add_argument("--output", required=True)
    p_gen.add_argument("--config")
    p_gen.add_argument("--seed", type=int)
    p_gen.add_argument("--ac", type=float)
    p_gen.add_argument("--fc", type=float)
    p_gen.add_argument("--fm", type=float)
    p_gen.add_argument("--depth", type=float, help="modulation depth m")
    p_gen.add_argument("--noise-std", type=float)
    p_gen.add_argument("--duration", type=float)
    p_gen.add_argument("--dt", type=float)
    p_gen.set_defaults(func=cmd_generate)

    p_build = sub.add_parser("build", help="build a PVG from a series CSV")
    p_build.add_argument("--input")
    p_build.add_argument("--config")
    p_build.add_argument("--rho", type=float)
    p_build.add_argument("--p0", type=float)
    p_build.add_argument("--dt", type=float)
    p_build.add_argument("--output-dir", required=True)
    p_build.add_argument("--threads", type=int)
    p_build.set_defaults(func=cmd_build)

    p_met = sub.add_parser("metrics", help="network metrics of a graph")
    p_met.add_argument("--graph", help="edge-list CSV input")
    p_met.add_argument("--input", help="series CSV input (with --rho/--p0)")
    p_met.add_argument("--config")
    p_met.add_argument("--rho", type=float)
    p_met.add_argument("--p0", type=float)
    p_met.add_argument("--dt", type=float)
    p_met.add_argument("--baseline-realizations", type=int, default=0)
    p_met.add_argument("--seed", type=int)
    p_met.add_argument("--output", required=True)
    p_met.set_defaults(func=cmd_metrics)

    p_sweep = sub.add_parser("sweep", help="run a (rho, p0) parameter sweep")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--output-dir", required=True)
    p_sweep.add_argument("--threads", type=int)
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidParams, KeyError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PvgError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
