"""Experiment runner: presets, seeded repetitions and CSV/JSON/SVG output.

Subcommands ``train``, ``grid``, ``compare-optim`` and ``tomography``. Settings
are resolved in the order preset, then config file, then command-line flags.
Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 missing artifact.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import datetime as _dt
import json
import logging
import os
import platform
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__, kernels
from .adversarial import GameConfig, MetricsRow, StopConfig, TrainResult, train
from .circuits import LayerSpec, build_layered, layout_description, make_target, prepare
from .errors import ConfigError
from .optim import IRpropConfig
from .qstate import LN2, density_matrix
from .svg import heat_map, line_chart

log = logging.getLogger("qadv")

ENV_WORKERS = "QADV_WORKERS"
EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_MISSING = 0, 1, 2, 3
METRIC_COLUMNS = MetricsRow.header()[1:]

# values the implementation had to choose; recorded in every manifest
ASSUMED_VALUES = ("gdm_mu", "irprop.eta_plus", "irprop.eta_minus", "gen_steps_per_iter",
                    "disc_steps_per_iter", "stop.window", "stop.epsilon_ln2", "stop.min_iters")

# Shot noise at 100 shots needs a stronger discriminator turn and a gentler
# step-size decrease than the library defaults; the entropy band allows for
# the typical-state plateau of the ancilla plus estimator bias.
_TUNED = dict(disc_steps_per_iter=20, irprop_eta_minus=0.9, stop_epsilon_ln2=0.15)
_FOUR = dict(_TUNED, n=4, c_t=2, max_iters=300)
_SIX = dict(_TUNED, n=6, c_t=3, c_g=3, c_d=3, max_iters=600, stop_enabled=False)

PRESETS: dict[str, dict] = {
    "fig2-left": dict(_FOUR, c_g=2, c_d=1, repetitions=10),
    "fig2-center": dict(_FOUR, c_g=1, c_d=2, repetitions=10),
    "fig2-right": dict(_FOUR, c_g=2, c_d=2, repetitions=10),
    "fig3": dict(_FOUR, c_g=1, c_d=2, repetitions=1),
    "fig4": dict(_FOUR, c_g=2, c_d=2, repetitions=1),
    "fig5": dict(_SIX, repetitions=3, grid_c_g=(2, 3), grid_c_d=(2, 3)),
    "fig6": dict(_SIX, repetitions=5),
}
FULL_SCALE = {
    "fig5": dict(repetitions=5, grid_c_g=(2, 3, 4), grid_c_d=(2, 3, 4)),
    "fig6": dict(repetitions=5),
}


class MissingArtifact(Exception):
    pass


@dataclass
class ExperimentConfig:
    game: GameConfig = field(default_factory=GameConfig)
    repetitions: int = 1
    output_dir: Path = Path("runs")
    emit_svg: bool = False
    preset: str | None = None
    seed: int = 0
    grid_c_g: tuple = (2, 3)
    grid_c_d: tuple = (2, 3)
    full: bool = False

    def __post_init__(self):
        if self.repetitions < 1:
            raise ConfigError("repetitions must be >= 1")
        if self.preset is not None and self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}; choose from {sorted(PRESETS)}")

    def to_dict(self) -> dict:
        return {
            "game": self.game.to_dict(),
            "repetitions": self.repetitions,
            "output_dir": str(self.output_dir),
            "emit_svg": self.emit_svg,
            "preset": self.preset,
            "seed": self.seed,
            "grid_c_g": list(self.grid_c_g),
            "grid_c_d": list(self.grid_c_d),
            "full": self.full,
        }


# ---------------------------------------------------------------- config keys

def _flat_keys() -> dict[str, tuple[str, str, type]]:
    """Flat key -> (section, attribute, type); section is '' for GameConfig itself."""
    keys = {}
    for f in dataclasses.fields(GameConfig):
        if f.name in ("irprop", "stop"):
            continue
        keys[f.name] = ("", f.name, type(getattr(GameConfig(), f.name)))
    for f in dataclasses.fields(IRpropConfig):
        keys[f"irprop_{f.name}"] = ("irprop", f.name, type(f.default))
    for f in dataclasses.fields(StopConfig):
        keys[f"stop_{f.name}"] = ("stop", f.name, type(f.default))
    for name, typ in (("repetitions", int), ("seed", int), ("svg", bool), ("emit_svg", bool),
                      ("grid_c_g", tuple), ("grid_c_d", tuple), ("output_dir", str), ("full", bool)):
        keys[name] = ("experiment", name, typ)
    return keys


FLAT_KEYS = _flat_keys()


def _coerce(key: str, raw, typ: type):
    if not isinstance(raw, str):
        return tuple(raw) if typ is tuple else typ(raw)
    text = raw.strip()
    try:
        if typ is bool:
            low = text.lower()
            if low not in ("1", "0", "true", "false", "yes", "no", "on", "off"):
                raise ValueError(text)
            return low in ("1", "true", "yes", "on")
        if typ is tuple:
            return tuple(int(v) for v in text.replace(",", " ").split())
        if typ is int:
            return int(text)
        if typ is float:
            return float(text)
        return text
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r}") from exc


def parse_config_file(path: Path) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in FLAT_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def build_config(settings: dict, preset: str | None = None) -> ExperimentConfig:
    """Resolve flat settings (strings or typed values) on top of an optional preset."""
    merged: dict = {}
    full = False
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        merged.update(PRESETS[preset])
        full = bool(_coerce("full", settings.get("full", False), bool))
        if full:
            merged.update(FULL_SCALE.get(preset, {}))
    merged.update(settings)

    game, irprop, stop, exp = {}, {}, {}, {}
    for key, raw in merged.items():
        if key not in FLAT_KEYS:
            raise ConfigError(f"unknown key {key!r}")
        section, attr, typ = FLAT_KEYS[key]
        value = _coerce(key, raw, typ)
        {"": game, "irprop": irprop, "stop": stop, "experiment": exp}[section][attr] = value
    if "svg" in exp:
        exp["emit_svg"] = exp.pop("svg")
    if "output_dir" in exp:
        exp["output_dir"] = Path(exp["output_dir"])
    exp["full"] = full or exp.get("full", False)
    try:
        game_cfg = GameConfig(**game, irprop=IRpropConfig(**irprop), stop=StopConfig(**stop))
    except NotImplementedError as exc:
        raise ConfigError(str(exc)) from exc
    return ExperimentConfig(game=game_cfg, preset=preset, **exp)


def config_from_manifest(path: Path) -> ExperimentConfig:
    """Rebuild the exact experiment configuration recorded in a manifest."""
    data = json.loads(Path(path).read_text())
    c = data["config"]
    g = dict(c["game"])
    irprop = IRpropConfig(**g.pop("irprop"))
    stop = StopConfig(**g.pop("stop"))
    return ExperimentConfig(
        game=GameConfig(**g, irprop=irprop, stop=stop),
        repetitions=c["repetitions"],
        output_dir=Path(c["output_dir"]),
        emit_svg=c["emit_svg"],
        preset=c["preset"],
        seed=c["seed"],
        grid_c_g=tuple(c["grid_c_g"]),
        grid_c_d=tuple(c["grid_c_d"]),
        full=c["full"],
    )


# ---------------------------------------------------------------- execution

def rep_seeds(seed: int, rep: int) -> dict:
    """Target, initialization and shot seeds of repetition ``rep``."""
    t, i, s = np.random.SeedSequence(int(seed), spawn_key=(int(rep),)).generate_state(3)
    return {"target_seed": int(t), "init_seed": int(i), "shot_seed": int(s)}


def num_workers() -> int:
    raw = os.environ.get(ENV_WORKERS, "1")
    try:
        return max(1, int(raw))
    except ValueError as exc:
        raise ConfigError(f"{ENV_WORKERS} must be an integer, got {raw!r}") from exc


def _train_job(game: GameConfig) -> TrainResult:
    return train(game)


def _run_all(games: Sequence[GameConfig]) -> list[TrainResult]:
    workers = min(num_workers(), len(games))
    if workers <= 1:
        return [_train_job(g) for g in games]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_train_job, games))


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _prepare_dir(path: Path) -> Path:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    if not os.access(path, os.W_OK):
        raise PermissionError(f"output directory {path} is not writable")
    return path


def _fmt(x) -> str:
    return str(x) if isinstance(x, (int, np.integer)) else repr(float(x))


def write_metrics(path: Path, rows: Sequence[MetricsRow]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(MetricsRow.header())
        for r in rows:
            w.writerow([_fmt(getattr(r, k)) for k in MetricsRow.header()])


def read_metrics(path: Path) -> list[dict]:
    with open(path, newline="") as fh:
        return [{k: float(v) for k, v in row.items()} for row in csv.DictReader(fh)]


def carry_forward(runs: Sequence[Sequence[MetricsRow]], length: int | None = None) -> np.ndarray:
    """Stack metrics as ``(reps, iters, columns)``, repeating each run's last row after it stopped."""
    length = length or max(len(r) for r in runs)
    out = np.empty((len(runs), length, len(METRIC_COLUMNS)))
    for k, rows in enumerate(runs):
        vals = np.array([[getattr(r, c) for c in METRIC_COLUMNS] for r in rows], dtype=float)
        out[k, : len(rows)] = vals
        out[k, len(rows):] = vals[-1]
    return out


def write_aggregate(path: Path, runs: Sequence[Sequence[MetricsRow]]) -> np.ndarray:
    stack = carry_forward(runs)
    mean, std = stack.mean(axis=0), stack.std(axis=0)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["iter"] + [f"{c}_{s}" for c in METRIC_COLUMNS for s in ("mean", "std")])
        for t in range(stack.shape[1]):
            w.writerow([t] + [_fmt(v) for j in range(len(METRIC_COLUMNS)) for v in (mean[t, j], std[t, j])])
    return stack


def _game_for_rep(cfg: ExperimentConfig, rep: int, **overrides) -> GameConfig:
    return replace(cfg.game, **rep_seeds(cfg.seed, rep), **overrides)


def _assumed_values(game: GameConfig) -> dict:
    d = game.to_dict()
    out = {}
    for key in ASSUMED_VALUES:
        node = d
        for part in key.split("."):
            node = node[part]
        out[key] = node
    return out


def _write_rep_artifacts(out: Path, rep: int, game: GameConfig, res: TrainResult) -> dict:
    write_metrics(out / f"metrics_rep{rep:03d}.csv", res.metrics)
    record = {
        "rep": rep,
        "seeds": {k: getattr(game, k) for k in ("target_seed", "init_seed", "shot_seed")},
        "n": game.n,
        "c_t": game.c_t,
        "c_g": game.c_g,
        "c_d": game.c_d,
        "stop_reason": res.stop_reason,
        "iterations": len(res.metrics),
        "final_trace_dist": res.final_trace_dist,
        "executions": res.counter.executions,
        "gen_params": res.gen_params.tolist(),
        "disc_params": res.disc_params.tolist(),
    }
    (out / f"params_rep{rep:03d}.json").write_text(json.dumps(record, indent=1) + "\n")
    return {k: v for k, v in record.items() if k not in ("gen_params", "disc_params")}


def _manifest(kind: str, cfg: ExperimentConfig, started: str, extra: dict) -> dict:
    g = cfg.game
    return {
        "kind": kind,
        "version": __version__,
        "kernel_backend": kernels.BACKEND,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "started": started,
        "finished": _now(),
        "config": cfg.to_dict(),
        "assumed_values": _assumed_values(g),
        "layouts": {
            "target": layout_description("target", LayerSpec(g.n, g.c_t)),
            "generator": layout_description("generator", LayerSpec(g.n, g.c_g)),
            "discriminator": layout_description("discriminator", LayerSpec(g.n + 1, g.c_d)),
        },
        **extra,
    }


def _write_json(path: Path, data: dict) -> None:
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def _curve_svg(stack: np.ndarray, title: str) -> str:
    it = np.arange(stack.shape[1])
    col = {c: j for j, c in enumerate(METRIC_COLUMNS)}
    mean = stack.mean(axis=0)
    return line_chart(
        {"trace distance": (it, mean[:, col["trace_dist"]]), "BEE (estimated)": (it, mean[:, col["bee_est"]])},
        title=title, y_range=(0.0, 1.0), hline=LN2,
    )


def _train_block(cfg: ExperimentConfig, out: Path, games: Sequence[GameConfig]) -> tuple[list, np.ndarray]:
    results = _run_all(games)
    reps = [_write_rep_artifacts(out, k, g, r) for k, (g, r) in enumerate(zip(games, results))]
    stack = write_aggregate(out / "aggregate.csv", [r.metrics for r in results])
    return reps, stack


def run_experiment(cfg: ExperimentConfig) -> int:
    """Independent repetitions of one setting; writes per-rep and aggregate CSVs plus a manifest."""
    started = _now()
    out = _prepare_dir(cfg.output_dir)
    if cfg.game.max_iters == 0:
        raise ConfigError("max_iters must be >= 1 for an experiment run")
    games = [_game_for_rep(cfg, k) for k in range(cfg.repetitions)]
    reps, stack = _train_block(cfg, out, games)
    final = stack[:, -1, METRIC_COLUMNS.index("trace_dist")]
    summary = {"final_trace_dist_mean": float(final.mean()), "final_trace_dist_std": float(final.std())}
    _write_json(out / "manifest.json", _manifest("train", cfg, started, {"repetitions": reps, "summary": summary}))
    if cfg.emit_svg:
        (out / "learning_curve.svg").write_text(_curve_svg(stack, f"n={cfg.game.n} c_g={cfg.game.c_g} c_d={cfg.game.c_d}"))
    log.info("final trace distance %.4f +- %.4f", summary["final_trace_dist_mean"], summary["final_trace_dist_std"])
    return EXIT_OK


def run_complexity_grid(cfg: ExperimentConfig, c_g_list: Sequence[int] | None = None,
                        c_d_list: Sequence[int] | None = None) -> int:
    """One cell per ``(c_g, c_d)``; mean and std of the final trace distance per cell."""
    started = _now()
    c_g_list = tuple(c_g_list or cfg.grid_c_g)
    c_d_list = tuple(c_d_list or cfg.grid_c_d)
    if not c_g_list or not c_d_list:
        raise ConfigError("grid lists must be non-empty")
    out = _prepare_dir(cfg.output_dir)
    cells = [(cg, cd) for cg in c_g_list for cd in c_d_list]
    games = [_game_for_rep(cfg, k, c_g=cg, c_d=cd) for cg, cd in cells for k in range(cfg.repetitions)]
    results = _run_all(games)
    td = METRIC_COLUMNS.index("trace_dist")
    grid = np.empty((len(c_g_list), len(c_d_list), 2))
    records = []
    for i, (cg, cd) in enumerate(cells):
        sub = _prepare_dir(out / f"cg{cg}_cd{cd}")
        chunk = slice(i * cfg.repetitions, (i + 1) * cfg.repetitions)
        reps = [_write_rep_artifacts(sub, k, g, r) for k, (g, r) in enumerate(zip(games[chunk], results[chunk]))]
        stack = write_aggregate(sub / "aggregate.csv", [r.metrics for r in results[chunk]])
        final = stack[:, -1, td]
        grid[c_g_list.index(cg), c_d_list.index(cd)] = final.mean(), final.std()
        records.append({"c_g": cg, "c_d": cd, "repetitions": reps})
    with open(out / "grid.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["c_g", "c_d", "trace_dist_mean", "trace_dist_std"])
        for cg, cd in cells:
            m, s = grid[c_g_list.index(cg), c_d_list.index(cd)]
            w.writerow([cg, cd, _fmt(m), _fmt(s)])
    _write_json(out / "manifest.json", _manifest("grid", cfg, started, {
        "grid_c_g": list(c_g_list), "grid_c_d": list(c_d_list), "cells": records}))
    if cfg.emit_svg:
        (out / "grid.svg").write_text(heat_map(grid[..., 0], [f"c_g={c}" for c in c_g_list],
                                               [f"c_d={c}" for c in c_d_list], title="mean final trace distance"))
    return EXIT_OK


OPTIMIZER_VARIANTS = (
    ("irprop", {"optimizer": "irprop"}),
    ("gdm_0.01", {"optimizer": "gdm", "gdm_epsilon": 0.01}),
    ("gdm_0.001", {"optimizer": "gdm", "gdm_epsilon": 0.001}),
)


def run_optimizer_comparison(cfg: ExperimentConfig) -> int:
    """iRprop- against GDM at two step sizes, on identical targets and initializations."""
    started = _now()
    out = _prepare_dir(cfg.output_dir)
    games = [_game_for_rep(cfg, k, **over) for _, over in OPTIMIZER_VARIANTS for k in range(cfg.repetitions)]
    results = _run_all(games)
    td = METRIC_COLUMNS.index("trace_dist")
    curves, records = {}, []
    length = max(len(r.metrics) for r in results)
    for i, (name, _) in enumerate(OPTIMIZER_VARIANTS):
        sub = _prepare_dir(out / name)
        chunk = slice(i * cfg.repetitions, (i + 1) * cfg.repetitions)
        reps = [_write_rep_artifacts(sub, k, g, r) for k, (g, r) in enumerate(zip(games[chunk], results[chunk]))]
        write_aggregate(sub / "aggregate.csv", [r.metrics for r in results[chunk]])
        stack = carry_forward([r.metrics for r in results[chunk]], length)[:, :, td]
        curves[name] = stack
        final = stack[:, -1]
        records.append({"optimizer": name, "final_trace_dist_mean": float(final.mean()),
                        "final_trace_dist_std": float(final.std()), "repetitions": reps})
    with open(out / "comparison.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["iter"] + [f"{name}_{s}" for name, _ in OPTIMIZER_VARIANTS for s in ("mean", "std")])
        for t in range(length):
            w.writerow([t] + [_fmt(v) for name, _ in OPTIMIZER_VARIANTS
                              for v in (curves[name][:, t].mean(), curves[name][:, t].std())])
    _write_json(out / "manifest.json", _manifest("compare-optim", cfg, started, {"variants": records}))
    if cfg.emit_svg:
        it = np.arange(length)
        (out / "comparison.svg").write_text(line_chart(
            {name: (it, c.mean(axis=0)) for name, c in curves.items()}, title="trace distance", y_range=(0.0, 1.0)))
    return EXIT_OK


def _write_matrix(path: Path, m: np.ndarray) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        for row in m:
            w.writerow([_fmt(v) for v in row])


def dump_tomography(run_dir: Path, rep: int = 0, emit_svg: bool = False) -> int:
    """Write ``|rho|`` of the final generated state and of the target for one repetition."""
    run_dir = Path(run_dir)
    params_path = run_dir / f"params_rep{rep:03d}.json"
    if not params_path.is_file():
        raise MissingArtifact(f"no saved parameters at {params_path}")
    try:
        rec = json.loads(params_path.read_text())
        n, c_t, c_g = rec["n"], rec["c_t"], rec["c_g"]
        gen_params = np.asarray(rec["gen_params"], dtype=float)
        target_seed = rec["seeds"]["target_seed"]
    except (ValueError, KeyError) as exc:
        raise MissingArtifact(f"incomplete artifact {params_path}: {exc}") from exc
    _, _, target = make_target(target_seed, n, c_t)
    gen_state = prepare(build_layered(LayerSpec(n, c_g)), gen_params)
    for label, psi in (("generated", gen_state), ("target", target)):
        mag = np.abs(density_matrix(psi))
        _write_matrix(run_dir / f"tomography_rep{rep:03d}_{label}.csv", mag)
        if emit_svg:
            (run_dir / f"tomography_rep{rep:03d}_{label}.svg").write_text(
                heat_map(mag, range(mag.shape[0]), range(mag.shape[1]), title=f"|rho| {label}",
                         vmax=float(mag.max()), annotate=False))
    return EXIT_OK


# ---------------------------------------------------------------- entry point

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qadv", description="Adversarial pure-state learning experiments.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", type=Path, help="flat key = value configuration file")
        sp.add_argument("--preset", choices=sorted(PRESETS))
        sp.add_argument("--out", type=Path, help="output directory")
        sp.add_argument("--seed", type=int, help="base seed; repetition seeds derive from it")
        sp.add_argument("--reps", type=int, help="number of repetitions")
        sp.add_argument("--svg", action="store_true", help="also emit SVG plots")
        sp.add_argument("--full", action="store_true", help="full-size settings for the fig5/fig6 presets")
        sp.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override any config key (repeatable)")
        sp.add_argument("--manifest", type=Path, help="rerun the configuration stored in a manifest")
        sp.add_argument("-v", "--verbose", action="store_true")

    common(sub.add_parser("train", help="run repetitions of one setting"))
    g = sub.add_parser("grid", help="generator/discriminator complexity grid")
    common(g)
    g.add_argument("--c-g", type=str, help="comma-separated generator layer counts")
    g.add_argument("--c-d", type=str, help="comma-separated discriminator layer counts")
    common(sub.add_parser("compare-optim", help="iRprop- against gradient descent with momentum"))
    t = sub.add_parser("tomography", help="dump |rho| of a finished run")
    t.add_argument("run_dir", type=Path)
    t.add_argument("--rep", type=int, default=0)
    t.add_argument("--svg", action="store_true")
    return p


def _resolve(args) -> ExperimentConfig:
    if args.manifest is not None:
        cfg = config_from_manifest(args.manifest)
        if args.out is not None:
            cfg.output_dir = args.out
        return cfg
    settings: dict = {}
    if args.config is not None:
        settings.update(parse_config_file(args.config))
    for item in args.set:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        settings[k.strip()] = v.strip()
    for key, val in (("output_dir", args.out), ("seed", args.seed), ("repetitions", args.reps)):
        if val is not None:
            settings[key] = val
    if args.svg:
        settings["svg"] = True
    if args.full:
        settings["full"] = True
    if getattr(args, "c_g", None):
        settings["grid_c_g"] = args.c_g
    if getattr(args, "c_d", None):
        settings["grid_c_d"] = args.c_d
    return build_config(settings, args.preset)


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "tomography":
            return dump_tomography(args.run_dir, args.rep, args.svg)
        cfg = _resolve(args)
        runner = {"train": run_experiment, "grid": run_complexity_grid,
                  "compare-optim": run_optimizer_comparison}[args.command]
        return runner(cfg)
    except MissingArtifact as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except (ConfigError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
