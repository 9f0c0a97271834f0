"""Command-line runner: ``mhtc analyze``, ``mhtc simulate`` and ``mhtc reproduce``.

Configs are flat ``section.key = value`` text.  Grids accept a comma list or
``start:stop:num`` (inclusive, evenly spaced).  Every CSV starts with ``#``
lines recording the version, seed and fully resolved config.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .analytics import (NetworkConfig, NumericalError, RetransPolicy, UnachievableOutageError,
                        capacity_bound, expected_sets_for_policy, max_density_for_outage,
                        outage_bound_for, predetermined_tc_bound, tc_upper_bound)
from .channel import FadingSpec, OutOfRegimeError, nakagami_coeffs, pathloss_coeff_bounds, rayleigh_coeffs
from .simulator import (MODE_ALIASES, NoFeasibleDensityError, max_density_sweep, run_outage_trials)

ANALYZE_COLUMNS = ("lambda", "m", "D_m", "policy", "expected_sets", "outage_bound", "tc_bound",
                   "valid_flag")
SIMULATE_COLUMNS = ("lambda", "m", "mode", "trials", "outage_mean", "outage_std", "seed")

EXIT_OK, EXIT_CONFIG, EXIT_UNACHIEVABLE, EXIT_NUMERIC = 0, 1, 2, 3

DEFAULTS = {
    "channel.model": "rayleigh",
    "channel.regime": "low_outage",
    "channel.alpha": "3",
    "channel.beta": "1",
    "channel.m0": "1",
    "network.lambda": "0.1",
    "network.gamma": "0.1",
    "network.R": "4",
    "route.m": "1",
    "route.D": "inf",
    "policy.kind": "single_attempt",
    "policy.k": "1",
    "policy.M": "2",
    "analysis.epsilon": "0.2",
    "sim.L": "auto",
    "sim.trials": "1000",
    "sim.mode": "dynamic",
    "sim.background": "routes",
}


class ConfigError(ValueError):
    def __init__(self, message, key=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(key)
        super().__init__(f"{': '.join(where)}: {message}" if where else message)


# -- config text ----------------------------------------------------------------

def parse_config(text: str) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment, blank lines are skipped."""
    out: dict[str, str] = {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'section.key = value'", line=no)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in DEFAULTS:
            raise ConfigError(f"unknown key (known: {', '.join(sorted(DEFAULTS))})", key, no)
        if key in out:
            raise ConfigError("duplicate key", key, no)
        out[key] = value
    return out


def serialize_config(cfg: dict[str, str]) -> str:
    return "".join(f"{k} = {v}\n" for k, v in sorted(cfg.items()))


def apply_overrides(cfg: dict[str, str], overrides) -> dict[str, str]:
    cfg = dict(cfg)
    for item in overrides or ():
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not key=value")
        key, value = (part.strip() for part in item.split("=", 1))
        if key not in DEFAULTS:
            raise ConfigError("unknown key", key)
        cfg[key] = value
    return cfg


@dataclass
class ExperimentSpec:
    command: str
    config: dict = field(default_factory=dict)
    output_path: str | None = None
    seed: int = 0
    overrides: tuple = ()

    def resolved(self) -> dict[str, str]:
        return {**DEFAULTS, **apply_overrides(self.config, self.overrides)}


def _number(cfg, key, kind=float):
    text = cfg[key]
    try:
        value = kind(float(text)) if kind is int else kind(text)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}", key) from None
    if kind is int and float(text) != value:
        raise ConfigError(f"not an integer: {text!r}", key)
    return value


def _grid(cfg, key, kind=float):
    text = cfg[key].strip()
    if not text:
        return []
    try:
        if ":" in text:
            start, stop, num = text.split(":")
            values = np.linspace(float(start), float(stop), int(num)).tolist()
        else:
            values = [float(v) for v in text.split(",")]
    except ValueError:
        raise ConfigError(f"expected a list 'a,b,c' or a range 'start:stop:num', got {text!r}",
                          key) from None
    if kind is int:
        if any(v != int(v) for v in values):
            raise ConfigError(f"expected integers, got {text!r}", key)
        values = [int(v) for v in values]
    return values


def _hop_model(cfg):
    fading = FadingSpec(_number(cfg, "channel.alpha"), _number(cfg, "channel.beta"),
                        _number(cfg, "channel.m0", int))
    model = cfg["channel.model"]
    if model == "rayleigh":
        return rayleigh_coeffs(FadingSpec(fading.alpha, fading.beta))
    if model == "nakagami":
        return nakagami_coeffs(fading, cfg["channel.regime"])
    if model in ("pathloss_lower", "pathloss_upper"):
        return pathloss_coeff_bounds(FadingSpec(fading.alpha, fading.beta))[model == "pathloss_upper"]
    raise ConfigError("expected rayleigh, nakagami, pathloss_lower or pathloss_upper", "channel.model")


def _policy(cfg, m):
    kind = cfg["policy.kind"]
    if kind == "single_attempt":
        return RetransPolicy()
    if kind == "best_effort":
        k = _grid(cfg, "policy.k", int)
        k = k * (m + 1) if len(k) == 1 else k
        return RetransPolicy.best_effort(k)
    if kind == "total_budget":
        return RetransPolicy.total_budget(_number(cfg, "policy.M", int))
    raise ConfigError("expected single_attempt, best_effort or total_budget", "policy.kind")


@dataclass
class Resolved:
    hop_model: object
    lambdas: list
    gamma: float
    R: float
    ms: list
    Ds: list
    epsilon: float
    raw: dict


def resolve(cfg: dict[str, str]) -> Resolved:
    """Type-check every field; raises :class:`ConfigError` naming the field."""
    cfg = {**DEFAULTS, **cfg}
    try:
        hm = _hop_model(cfg)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc), "channel") from None
    lambdas = _grid(cfg, "network.lambda")
    for lam in lambdas:
        if not lam > 0:
            raise ConfigError(f"densities must be positive, got {lam}", "network.lambda")
    gamma, R = _number(cfg, "network.gamma"), _number(cfg, "network.R")
    if not 0 < gamma < 1:
        raise ConfigError(f"must lie in (0, 1), got {gamma}", "network.gamma")
    if not R > 0:
        raise ConfigError(f"must be positive, got {R}", "network.R")
    ms = _grid(cfg, "route.m", int)
    if any(m < 0 for m in ms):
        raise ConfigError("relay counts must be non-negative", "route.m")
    Ds = _grid(cfg, "route.D")
    if any(not D > 0 for D in Ds):
        raise ConfigError("distance budgets must be positive", "route.D")
    eps = _number(cfg, "analysis.epsilon")
    if not 0 < eps < 1:
        raise ConfigError(f"must lie in (0, 1), got {eps}", "analysis.epsilon")
    return Resolved(hm, lambdas, gamma, R, ms, Ds, eps, cfg)


# -- output -------------------------------------------------------------------

def _fmt(v):
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        return "nan" if math.isnan(v) else "inf" if math.isinf(v) else f"{v:.10g}"
    return str(v)


def write_csv(path, columns, rows, seed, config: dict[str, str], extra=()):
    buf = io.StringIO()
    buf.write(f"# version: mhtc {__version__}\n")
    buf.write(f"# seed: {seed}\n")
    for k, v in sorted(config.items()):
        buf.write(f"# config: {k} = {v}\n")
    for line in extra:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in columns])
    text = buf.getvalue()
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)
    return text


# -- commands ---------------------------------------------------------------------

def analyze_rows(res: Resolved):
    rows = []
    for m in res.ms:
        try:
            policy = _policy(res.raw, m)
        except ValueError as exc:
            raise ConfigError(str(exc), "policy") from None
        for D in res.Ds:
            for lam in res.lambdas:
                row = {"lambda": lam, "m": m, "D_m": D, "policy": str(policy),
                       "expected_sets": math.nan, "outage_bound": math.nan, "tc_bound": math.nan,
                       "valid_flag": False}
                rows.append(row)
                try:
                    cfg = NetworkConfig(lam, res.gamma, res.R, m, res.hop_model, D, policy)
                except ValueError:
                    continue
                try:
                    row["outage_bound"] = outage_bound_for(cfg)
                    if m == 0:
                        row["tc_bound"] = predetermined_tc_bound(cfg, res.epsilon)
                        row["valid_flag"] = True
                        continue
                    row["expected_sets"] = expected_sets_for_policy(cfg)
                    cap = capacity_bound(cfg, res.epsilon)
                    row["tc_bound"], row["valid_flag"] = cap.value, cap.valid
                except (OutOfRegimeError, UnachievableOutageError, ValueError):
                    row["valid_flag"] = False
    return rows


def simulate_rows(res: Resolved, trials: int, mode: str, seed: int):
    if len(res.Ds) != 1:
        raise ConfigError("simulate takes a single distance budget", "route.D")
    L = None if res.raw["sim.L"] == "auto" else _number(res.raw, "sim.L")
    background = res.raw["sim.background"]
    rows = []
    for m in res.ms:
        for lam in res.lambdas:
            cfg = NetworkConfig(lam, res.gamma, res.R, m, res.hop_model, res.Ds[0])
            est = run_outage_trials(cfg, L, trials, mode, seed, background)
            rows.append({"lambda": lam, "m": m, "mode": mode, "trials": est.trials,
                         "outage_mean": est.mean, "outage_std": est.std, "seed": seed})
    return rows


# -- figure presets ----------------------------------------------------------------

FIG_CHANNEL = FadingSpec(alpha=3.0, beta=1.0)
FIG2_LAMBDAS = (0.1, 0.2, 0.35, 0.5, 0.7, 0.9, 1.2, 1.6)
FIG2_GAMMA, FIG3_GAMMA = 0.1, 0.05
FIG_D = 3600.0
FIG3_EPSILONS = (0.05, 0.1, 0.2)
FIG4_RATIOS = (10, 20, 40, 80, 160, 320)
FIG4_M = 2
SWEEP_FRACTIONS = (0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0)


def fig2_rows(trials: int, seed: int, ms=(1, 2, 3), lambdas=FIG2_LAMBDAS, R=4.0):
    hm = rayleigh_coeffs(FIG_CHANNEL)
    rows = []
    for m in ms:
        for lam in lambdas:
            cfg = NetworkConfig(lam, FIG2_GAMMA, R, m, hm, FIG_D)
            est = run_outage_trials(cfg, None, trials, "dynamic", seed)
            rows.append({"lambda": lam, "m": m, "outage_bound": outage_bound_for(cfg),
                         "sim_mean": est.mean, "sim_std": est.std, "trials": est.trials})
    return rows


def fig3_rows(trials: int, seed: int, ms=range(1, 6), R=4.0, simulate=True):
    hm = rayleigh_coeffs(FIG_CHANNEL)
    rows = []
    for eps in FIG3_EPSILONS:
        prev = None
        for m in ms:
            base = NetworkConfig(1.0, FIG3_GAMMA, R, m, hm)
            tc = tc_upper_bound(base, eps)
            row = {"epsilon": eps, "m": m, "tc_bound": tc.value,
                   "eff_density_bound": tc.density / (m + 1) if tc.valid else math.nan}
            for D in (FIG_D, 100.0):
                try:
                    lam = max_density_for_outage(base.with_(D=D), eps)
                    row[f"eff_density_D{int(D)}"] = lam / (m + 1)
                except UnachievableOutageError:
                    row[f"eff_density_D{int(D)}"] = math.nan
            kappa = base.kappa
            row["increment"] = tc.value - prev if prev is not None else math.nan
            row["increment_formula"] = ((math.log(kappa) + math.log(m / (m + 1)))
                                        * (1 - eps) / (hm.K * R**2) if prev is not None else math.nan)
            prev = tc.value
            row["sim_eff_density"] = math.nan
            if simulate and tc.valid:
                grid = [f * row[f"eff_density_D{int(FIG_D)}"] * (m + 1) for f in SWEEP_FRACTIONS]
                try:
                    sw = max_density_sweep(base.with_(D=FIG_D), eps, "dynamic", grid, trials, seed)
                    row["sim_eff_density"] = sw.effective_density
                except NoFeasibleDensityError:
                    pass
            rows.append(row)
    return rows


def fig4_rows(trials: int, seed: int, ratios=FIG4_RATIOS, m=FIG4_M, R=4.0, eps=0.05, simulate=True):
    hm = rayleigh_coeffs(FIG_CHANNEL)
    rows = []
    for ratio in ratios:
        gamma = 1.0 / (1.0 + ratio)
        cfg = NetworkConfig(1.0, gamma, R, m, hm, FIG_D)
        lam = max_density_for_outage(cfg, eps)
        # contention density of active transmitters; node density is lam itself
        row = {"ratio": ratio, "log_ratio": math.log(ratio), "gamma": gamma, "m": m,
               "node_density": lam, "max_density": lam * gamma, "sim_max_density": math.nan}
        if simulate:
            grid = [f * lam for f in SWEEP_FRACTIONS]
            try:
                row["sim_max_density"] = gamma * max_density_sweep(cfg, eps, "dynamic", grid,
                                                                   trials, seed).density
            except NoFeasibleDensityError:
                pass
        rows.append(row)
    return rows


FIG_COLUMNS = {
    "fig2": ("lambda", "m", "outage_bound", "sim_mean", "sim_std", "trials"),
    "fig3": ("epsilon", "m", "tc_bound", "eff_density_bound", "eff_density_D3600",
             "eff_density_D100", "increment", "increment_formula", "sim_eff_density"),
    "fig4": ("ratio", "log_ratio", "gamma", "m", "node_density", "max_density",
             "sim_max_density"),
}


def _plot_data(figure, rows):
    """Wide table: one x column, one column per curve."""
    if figure == "fig2":
        xs = sorted({r["lambda"] for r in rows})
        cols = ["lambda"]
        table = {x: {"lambda": x} for x in xs}
        for m in sorted({r["m"] for r in rows}):
            cols += [f"bound_m{m}", f"sim_m{m}", f"err_m{m}"]
            for r in rows:
                if r["m"] == m:
                    t = table[r["lambda"]]
                    t[f"bound_m{m}"], t[f"sim_m{m}"] = r["outage_bound"], r["sim_mean"]
                    t[f"err_m{m}"] = 2 * r["sim_std"]
        return cols, [table[x] for x in xs]
    if figure == "fig3":
        xs = sorted({r["m"] for r in rows})
        cols = ["m"]
        table = {x: {"m": x} for x in xs}
        for eps in FIG3_EPSILONS:
            for key in ("eff_density_bound", "eff_density_D3600", "eff_density_D100",
                        "sim_eff_density"):
                name = f"{key}_eps{eps:g}"
                cols.append(name)
                for r in rows:
                    if r["epsilon"] == eps:
                        table[r["m"]][name] = r[key]
        return cols, [table[x] for x in xs]
    cols = ["log_ratio", "max_density", "sim_max_density"]
    return cols, rows


def reproduce(figure: str, trials: int, seed: int, out_dir) -> list[Path]:
    builders = {"fig2": fig2_rows, "fig3": fig3_rows, "fig4": fig4_rows}
    if figure not in builders:
        raise ConfigError(f"unknown figure {figure!r}; choose fig2, fig3 or fig4")
    rows = builders[figure](trials, seed)
    out = Path(out_dir)
    meta = {"figure": figure, "trials": str(trials)}
    main_path, plot_path = out / f"{figure}.csv", out / f"{figure}_plot.csv"
    write_csv(main_path, FIG_COLUMNS[figure], rows, seed, meta)
    cols, prow = _plot_data(figure, rows)
    write_csv(plot_path, cols, prow, seed, meta)
    return [main_path, plot_path]


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mhtc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"mhtc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="closed-form outage and capacity bounds over a grid")
    a.add_argument("--config", help="key = value config file")
    a.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE")
    a.add_argument("--out", default="-", help="output CSV (default stdout)")

    s = sub.add_parser("simulate", help="Monte Carlo outage of the typical pair")
    s.add_argument("--config")
    s.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int)
    s.add_argument("--mode", choices=("dynamic", "predetermined", "independent"))
    s.add_argument("--out", default="-")

    r = sub.add_parser("reproduce", help="figure presets: analytic and simulated curves")
    r.add_argument("figure", choices=("fig2", "fig3", "fig4"))
    r.add_argument("--trials", type=int, default=200)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out-dir", default=".")
    return p


def _load(path):
    if path is None:
        return {}
    try:
        return parse_config(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "reproduce":
            if args.trials < 2:
                raise ConfigError("need at least two trials", "--trials")
            for path in reproduce(args.figure, args.trials, args.seed, args.out_dir):
                print(path)
            return EXIT_OK
        spec = ExperimentSpec(args.command, _load(args.config), args.out,
                              getattr(args, "seed", 0), tuple(args.overrides))
        cfg = spec.resolved()
        res = resolve(cfg)
        if args.command == "analyze":
            rows = analyze_rows(res)
            write_csv(spec.output_path, ANALYZE_COLUMNS, rows, spec.seed, cfg)
            if rows and not any(r["valid_flag"] for r in rows):
                print("mhtc: every row is outside the valid regime", file=sys.stderr)
                return EXIT_UNACHIEVABLE
            return EXIT_OK
        trials = args.trials if args.trials is not None else _number(cfg, "sim.trials", int)
        if trials < 2:
            raise ConfigError("need at least two trials", "sim.trials")
        mode = MODE_ALIASES.get(args.mode or cfg["sim.mode"], args.mode or cfg["sim.mode"])
        cfg = {**cfg, "sim.trials": str(trials), "sim.mode": mode}
        rows = simulate_rows(res, trials, mode, spec.seed)
        write_csv(spec.output_path, SIMULATE_COLUMNS, rows, spec.seed, cfg)
        return EXIT_OK
    except ConfigError as exc:
        print(f"mhtc: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"mhtc: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OutOfRegimeError) as exc:
        print(f"mhtc: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
