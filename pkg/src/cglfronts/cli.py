"""Command-line orchestration: predict | shoot | simulate | continue | compare.

Every command reads an optional TOML config, writes CSV data plus a JSON
run summary that echoes the fully resolved configuration (same config and
seed reproduce byte-identical output), and exits 0 on success, 2 on a
configuration error, 3 on a numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import blowup, continuation, dispersion, predict, scaling, simulate
from .dispersion import CGLParams
from .errors import CGLError, ConfigError, SpeedTooLarge

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _load_config(path):
    if path is None:
        return {}
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def _params_from(cfg) -> CGLParams:
    sec = cfg.get("params", {})
    try:
        return CGLParams(alpha=float(sec.get("alpha", -0.1)),
                         gamma=float(sec.get("gamma", -0.2)))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid [params]: {exc}") from exc


def _grid_from(cfg, paper_scale: bool) -> simulate.Grid:
    sec = cfg.get("grid", {})
    if paper_scale:
        defaults = {"length_left": 2200.0, "length_right": 200.0,
                    "n_points": 32768}
    else:
        defaults = {"length_left": 600.0, "length_right": 100.0,
                    "n_points": 8192}
    try:
        return simulate.Grid(
            length_left=float(sec.get("length_left", defaults["length_left"])),
            length_right=float(sec.get("length_right",
                                       defaults["length_right"])),
            n_points=int(sec.get("n_points", defaults["n_points"])))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid [grid]: {exc}") from exc


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([f"{v:.12g}" if isinstance(v, float) else v
                        for v in row])


def _write_summary(out_dir, name, payload):
    path = Path(out_dir) / f"{name}_summary.json"
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _shooting_dz(params: CGLParams, delta: float = 1e-3):
    scaled = scaling.scaled_at_linear_point(params)
    shot = blowup.shoot_free_front(scaled, params, delta=delta)
    return blowup.delta_Z(params, shot.z_star)


def cmd_predict(args, cfg):
    params = _params_from(cfg)
    sec = cfg.get("predict", {})
    c_lo = float(sec.get("c_min", 1.6))
    c_hi = float(sec.get("c_max", 0.9995 * dispersion.c_lin(params)))
    n = int(sec.get("n_points", 50))
    j = int(sec.get("j", 1))
    delta = float(sec.get("delta", 1e-3))
    lin = dispersion.linear_spreading(params)
    rows = []
    if n > 0:
        dz = _shooting_dz(params, delta=delta)
        for c in np.linspace(c_lo, c_hi, n):
            if c >= lin.c_lin:
                continue
            pred = predict.make_prediction(params, float(c), dz, j=j)
            # comparator: invert the dispersion relation at frozen omega_lin
            try:
                k_naive = dispersion.k_from_omega(params, lin.omega_lin,
                                                 float(c))
            except CGLError:
                k_naive = math.nan
            rows.append((pred.c, dispersion.omega_abs(params, pred.c),
                         pred.omega_tf, dispersion.k_lin(params),
                         pred.k_tf_expansion, pred.k_tf_exact, k_naive,
                         pred.xi_star))
    out = Path(args.out) / "predictions.csv"
    _write_csv(out, ["c", "omega_abs", "omega_tf", "k_lin", "k_tf_expansion",
                     "k_tf_exact", "k_naive_const_omega", "xi_star"], rows)
    _write_summary(args.out, "predict", {
        "figure": "wavenumber and frequency prediction curves",
        "config": {"params": {"alpha": params.alpha, "gamma": params.gamma},
                   "predict": {"c_min": c_lo, "c_max": c_hi, "n_points": n,
                               "j": j, "delta": delta}},
        "rows": len(rows), "output": str(out)})
    return 0


def cmd_shoot(args, cfg):
    params = _params_from(cfg)
    sec = cfg.get("shoot", {})
    g_lo = float(sec.get("gamma_hat_min", 0.0))
    g_hi = float(sec.get("gamma_hat_max", 10.0))
    step = float(sec.get("gamma_hat_step", 0.1))
    deltas = [float(d) for d in sec.get("deltas", [1e-3])]
    grid = np.arange(g_lo, g_hi + 0.5 * step, step)

    def one(gh):
        scaled = scaling.ScaledParams(
            c_hat=2.0, delta_c_hat=0.0, omega_hat=0.0, gamma_hat=float(gh),
            m=1.0, l=1.0, shift_rate=0.0, zeta_scale=1.0)
        out = []
        for d in deltas:
            shot = blowup.shoot_free_front(scaled, params, delta=d)
            dz = blowup.delta_Z(params, shot.z_star)
            out.append((float(gh), d, shot.z_star.real, shot.z_star.imag,
                        shot.genericity, dz.re, dz.im))
        return out

    with ThreadPoolExecutor(max_workers=args.threads) as ex:
        results = list(ex.map(one, grid))
    rows = [row for chunk in results for row in chunk]
    out = Path(args.out) / "shooting.csv"
    _write_csv(out, ["gamma_hat", "delta", "re_z_star", "im_z_star",
                     "genericity", "delta_z_r", "delta_z_i"], rows)
    _write_summary(args.out, "shoot", {
        "figure": "genericity |z_*+1| and correction coefficient sweep",
        "config": {"params": {"alpha": params.alpha, "gamma": params.gamma},
                   "shoot": {"gamma_hat_min": g_lo, "gamma_hat_max": g_hi,
                             "gamma_hat_step": step, "deltas": deltas}},
        "rows": len(rows), "output": str(out)})
    return 0


def cmd_simulate(args, cfg):
    params = _params_from(cfg)
    grid = _grid_from(cfg, args.paper_scale)
    tsec = cfg.get("time", {})
    t_end = float(tsec.get("t_end", 5000.0 if args.paper_scale else 1500.0))
    dt = float(tsec.get("dt", 5e-3))
    c = float(cfg.get("simulate", {}).get("c", 1.8))
    delta = float(cfg.get("measure", {}).get("delta", 1e-2))
    seed = args.seed if args.seed is not None else int(
        cfg.get("init", {}).get("seed", 0))
    if c > dispersion.c_lin(params):
        meas = simulate.free_front_run(params, c, dt=dt, delta=delta)
    else:
        meas = simulate.triggered_run(params, c, grid=grid, t_end=t_end,
                                      dt=dt, seed=seed, delta=delta)
    state = meas.final_state
    out = Path(args.out) / "field.csv"
    _write_csv(out, ["xi", "re_a", "im_a", "abs_a"],
               [(float(x), float(v.real), float(v.imag), float(abs(v)))
                for x, v in zip(state.grid.x, state.a)])
    _write_summary(args.out, "simulate", {
        "figure": "space-time wake of a triggered run (final profile)",
        "config": {"params": {"alpha": params.alpha, "gamma": params.gamma},
                   "grid": {"length_left": grid.length_left,
                            "length_right": grid.length_right,
                            "n_points": grid.n_points},
                   "time": {"t_end": t_end, "dt": dt},
                   "simulate": {"c": c}, "measure": {"delta": delta},
                   "init": {"seed": seed}},
        "k_mean": meas.k_mean, "k_std": meas.k_std, "xi_star": meas.xi_star,
        "omega_meas": meas.omega_meas, "leak_max": meas.leak_max,
        "seed": seed, "output": str(out)})
    return 0


def _branch_targets(params, sec):
    c_lin = dispersion.c_lin(params)
    if "delta_c_values" in sec:
        dcs = [float(v) for v in sec["delta_c_values"]]
    else:
        lo = float(sec.get("delta_c_min", 1e-3))
        hi = float(sec.get("delta_c_max", 1e-1))
        n = int(sec.get("n_points", 9))
        dcs = list(np.geomspace(hi, lo, n))
    return [c_lin - dc for dc in dcs]


def cmd_continue(args, cfg):
    params = _params_from(cfg)
    sec = cfg.get("continue", {})
    j = int(sec.get("j", 1))
    delta = float(sec.get("delta", 1e-3))
    cs = _branch_targets(params, sec)
    dz = _shooting_dz(params)
    a2 = 1.0 + params.alpha**2
    dc0 = dispersion.c_lin(params) - cs[0]
    w0 = 2.0 * abs(dz.im) / (math.pi * j) * (dc0 / math.sqrt(a2)) ** 1.5
    branch = continuation.continue_in_c(params, cs, w0, j=j, delta=delta)
    out = Path(args.out) / "branch.csv"
    branch.write_csv(out)
    for c_dump in sec.get("profile_dumps", []):
        pt = min(branch.points, key=lambda p: abs(p.c - float(c_dump)))
        zeta, z, R = pt.solution.profile()
        _write_csv(Path(args.out) / f"profile_c{pt.c:.4f}.csv",
                   ["zeta", "re_z", "im_z", "R"],
                   list(zip(map(float, zeta), map(float, z.real),
                            map(float, z.imag), map(float, R))))
    _write_summary(args.out, "continue", {
        "figure": "trigger-front branch: frequency, wavenumber, interface",
        "config": {"params": {"alpha": params.alpha, "gamma": params.gamma},
                   "continue": {"j": j, "delta": delta,
                                "c_values": [float(c) for c in cs]}},
        "points": len(branch.points), "output": str(out)})
    return 0


def cmd_compare(args, cfg):
    params = _params_from(cfg)
    sec = cfg.get("compare", {})
    cs = _branch_targets(params, sec)
    t_end = float(sec.get("t_end", 5000.0 if args.paper_scale else 1500.0))
    dt = float(sec.get("dt", 5e-3))
    grid = _grid_from(cfg, args.paper_scale)
    seed = args.seed if args.seed is not None else 0
    dz = _shooting_dz(params)
    a2 = 1.0 + params.alpha**2
    dc0 = dispersion.c_lin(params) - cs[0]
    w0 = 2.0 * abs(dz.im) / math.pi * (dc0 / math.sqrt(a2)) ** 1.5
    branch = continuation.continue_in_c(params, cs, w0, with_condition=False)

    def sim_one(c):
        return simulate.triggered_run(params, float(c), grid=grid,
                                      t_end=t_end, dt=dt, seed=seed)

    with ThreadPoolExecutor(max_workers=args.threads) as ex:
        sims = list(ex.map(sim_one, [pt.c for pt in branch.points]))

    rows = []
    for pt, meas in zip(branch.points, sims):
        pred = predict.make_prediction(params, pt.c, dz)
        rows.append((pt.c, pt.delta_c, meas.k_mean, pt.k_tf,
                     pred.k_tf_exact, pred.k_tf_expansion,
                     abs(meas.k_mean - pt.k_tf) / abs(pt.k_tf),
                     abs(pred.k_tf_exact - pt.k_tf) / abs(pt.k_tf)))
    out = Path(args.out) / "comparison.csv"
    _write_csv(out, ["c", "delta_c", "k_sim", "k_bvp", "k_pred_abs",
                     "k_pred_32", "rel_sim_bvp", "rel_pred_bvp"], rows)

    dcs = np.array([pt.delta_c for pt in branch.points])
    dws = np.array([pt.omega_tf - dispersion.omega_abs(params, pt.c)
                    for pt in branch.points])
    slope, logpref = np.polyfit(np.log(dcs), np.log(np.abs(dws)), 1)
    prefactor = math.exp(logpref)
    theory = 2.0 * abs(dz.im) / (math.pi * a2**0.75)
    _write_summary(args.out, "compare", {
        "figure": "two-pillar wavenumber comparison and 3/2-law fit",
        "config": {"params": {"alpha": params.alpha, "gamma": params.gamma},
                   "compare": {"c_values": [float(c) for c in cs],
                               "t_end": t_end, "dt": dt, "seed": seed}},
        "max_rel_sim_bvp": max(r[6] for r in rows),
        "fit_exponent": float(slope), "fit_prefactor": prefactor,
        "theory_prefactor": theory,
        "prefactor_rel_err": abs(prefactor - theory) / theory,
        "output": str(out)})
    return 0


_COMMANDS = {"predict": cmd_predict, "shoot": cmd_shoot,
             "simulate": cmd_simulate, "continue": cmd_continue,
             "compare": cmd_compare}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cglfronts",
        description="Pattern selection by moving triggers in the complex "
                    "Ginzburg-Landau equation")
    ap.add_argument("--config", type=Path, help="TOML configuration file")
    ap.add_argument("--out", type=Path, default=Path("."),
                    help="output directory")
    ap.add_argument("--seed", type=int, default=None,
                    help="override the RNG seed")
    ap.add_argument("--threads", type=int, default=1,
                    help="worker threads for parameter sweeps")
    ap.add_argument("--paper-scale", action="store_true",
                    help="use the large-domain long-time defaults")
    ap.add_argument("command", choices=sorted(_COMMANDS),
                    help="what to run")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(args.config)
        args.out.mkdir(parents=True, exist_ok=True)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _COMMANDS[args.command](args, cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CGLError as exc:
        diag = Path(args.out) / "failure.json"
        with open(diag, "w") as fh:
            json.dump({"error": type(exc).__name__, "message": str(exc)},
                      fh, indent=2)
        print(f"numerical failure: {exc} (see {diag})", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
