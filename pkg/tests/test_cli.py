import csv
import json

import numpy as np
import pytest

from qadv import cli
from qadv.cli import (
    EXIT_CONFIG,
    EXIT_IO,
    EXIT_MISSING,
    EXIT_OK,
    PRESETS,
    build_config,
    config_from_manifest,
    main,
    parse_config_file,
    rep_seeds,
)
from qadv.circuits import num_layered_params
from qadv.errors import ConfigError

TINY = ["--set", "n=2", "--set", "c_t=1", "--set", "c_g=1", "--set", "c_d=1", "--set", "max_iters=5"]


def rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def run_tiny(out, *extra):
    return main(["train", "--out", str(out), "--reps", "2", "--seed", "7", *TINY, *extra])


class TestConfigResolution:
    def test_parse_file(self, tmp_path):
        p = tmp_path / "c.cfg"
        p.write_text("# comment\nn = 3\nshots=50  # trailing\n\nirprop_eta_minus = 0.6\nstop_enabled = off\n")
        assert parse_config_file(p) == {"n": "3", "shots": "50", "irprop_eta_minus": "0.6", "stop_enabled": "off"}
        cfg = build_config(parse_config_file(p))
        assert cfg.game.n == 3 and cfg.game.shots == 50
        assert cfg.game.irprop.eta_minus == 0.6 and cfg.game.stop.enabled is False

    @pytest.mark.parametrize("text", ["bogus = 1\n", "n 3\n"])
    def test_parse_errors(self, tmp_path, text):
        p = tmp_path / "c.cfg"
        p.write_text(text)
        with pytest.raises(ConfigError):
            parse_config_file(p)

    def test_bad_values(self):
        with pytest.raises(ConfigError):
            build_config({"n": "four"})
        with pytest.raises(ConfigError):
            build_config({"stop_enabled": "maybe"})
        with pytest.raises(ConfigError):
            build_config({}, preset="fig9")
        with pytest.raises(ConfigError):
            build_config({"irprop_explorative": "true"})

    def test_precedence(self):
        cfg = build_config({"c_g": 2, "repetitions": 4}, preset="fig2-center")
        assert cfg.game.c_g == 2 and cfg.game.c_d == 2 and cfg.repetitions == 4

    def test_presets(self):
        left = build_config({}, "fig2-left").game
        assert (left.n, left.c_t, left.c_g, left.c_d, left.max_iters) == (4, 2, 2, 1, 300)
        assert build_config({}, "fig2-right").repetitions == 10
        six = build_config({}, "fig6")
        assert (six.game.n, six.game.c_g, six.game.max_iters, six.repetitions) == (6, 3, 600, 5)
        assert not six.game.stop.enabled
        small, full = build_config({}, "fig5"), build_config({"full": True}, "fig5")
        assert small.grid_c_g == (2, 3) and small.repetitions == 3
        assert full.grid_c_g == (2, 3, 4) and full.repetitions == 5 and full.full
        for name in PRESETS:
            game = build_config({}, name).game
            assert game.shots == 100 and game.disc_steps_per_iter == 20
            assert game.irprop.eta_minus == 0.9 and game.stop.epsilon_ln2 == 0.15

    def test_rep_seeds(self):
        a, b = rep_seeds(0, 0), rep_seeds(0, 1)
        assert a == rep_seeds(0, 0) and a != b
        assert set(a) == {"target_seed", "init_seed", "shot_seed"}

    def test_workers_env(self, monkeypatch):
        monkeypatch.setenv(cli.ENV_WORKERS, "3")
        assert cli.num_workers() == 3
        monkeypatch.setenv(cli.ENV_WORKERS, "x")
        with pytest.raises(ConfigError):
            cli.num_workers()


class TestTrain:
    def test_outputs(self, tmp_path):
        out = tmp_path / "run"
        assert run_tiny(out, "--svg") == EXIT_OK
        for k in range(2):
            r = rows(out / f"metrics_rep{k:03d}.csv")
            assert r[0] == ["iter", "value_est", "bee_est", "bee_exact", "trace_dist", "wall_ms"]
            assert [int(x[0]) for x in r[1:]] == list(range(6))
            params = json.loads((out / f"params_rep{k:03d}.json").read_text())
            assert len(params["gen_params"]) == num_layered_params(2, 1)
        agg = rows(out / "aggregate.csv")
        assert agg[0][0] == "iter" and len(agg) == 7
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["config"]["repetitions"] == 2
        assert manifest["kernel_backend"] in ("cython", "python")
        assert "irprop.eta_minus" in manifest["assumed_values"]
        assert (out / "learning_curve.svg").read_text().startswith("<svg")

    def test_byte_identical_rerun(self, tmp_path):
        assert run_tiny(tmp_path / "a") == EXIT_OK
        assert run_tiny(tmp_path / "b") == EXIT_OK
        for name in ("metrics_rep000.csv", "metrics_rep001.csv", "aggregate.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_manifest_reconstructs(self, tmp_path):
        assert run_tiny(tmp_path / "a") == EXIT_OK
        cfg = config_from_manifest(tmp_path / "a" / "manifest.json")
        assert cfg.game.n == 2 and cfg.repetitions == 2 and cfg.seed == 7
        assert main(["train", "--manifest", str(tmp_path / "a" / "manifest.json"), "--out", str(tmp_path / "b")]) == 0
        assert (tmp_path / "a" / "aggregate.csv").read_bytes() == (tmp_path / "b" / "aggregate.csv").read_bytes()

    def test_config_file_flag(self, tmp_path):
        p = tmp_path / "c.cfg"
        p.write_text("n = 2\nc_t = 1\nc_g = 1\nc_d = 1\nmax_iters = 2\n")
        assert main(["train", "--config", str(p), "--out", str(tmp_path / "r")]) == EXIT_OK
        assert len(rows(tmp_path / "r" / "metrics_rep000.csv")) == 4

    def test_worker_pool_matches_serial(self, tmp_path, monkeypatch):
        assert run_tiny(tmp_path / "serial") == EXIT_OK
        monkeypatch.setenv(cli.ENV_WORKERS, "2")
        assert run_tiny(tmp_path / "pool") == EXIT_OK
        assert (tmp_path / "serial" / "aggregate.csv").read_bytes() == (tmp_path / "pool" / "aggregate.csv").read_bytes()


class TestExitCodes:
    def test_config_error(self, tmp_path, capsys):
        assert main(["train", "--out", str(tmp_path), "--set", "n=1"]) == EXIT_CONFIG
        assert main(["train", "--out", str(tmp_path), "--set", "nonsense"]) == EXIT_CONFIG
        assert "config error" in capsys.readouterr().err

    def test_io_error(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        assert run_tiny(blocker / "sub") == EXIT_IO

    def test_missing_config_file(self, tmp_path):
        assert main(["train", "--config", str(tmp_path / "none.cfg")]) == EXIT_IO

    def test_missing_artifact(self, tmp_path):
        assert main(["tomography", str(tmp_path)]) == EXIT_MISSING

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit):
            main(["fly"])


class TestGrid:
    def test_cells(self, tmp_path):
        out = tmp_path / "g"
        code = main(["grid", "--out", str(out), "--reps", "2", "--c-g", "1,2", "--c-d", "1", "--svg", *TINY])
        assert code == EXIT_OK
        g = rows(out / "grid.csv")
        assert g[0] == ["c_g", "c_d", "trace_dist_mean", "trace_dist_std"]
        assert [(int(r[0]), int(r[1])) for r in g[1:]] == [(1, 1), (2, 1)]
        for r in g[1:]:
            assert 0.0 <= float(r[2]) <= 1.0
        assert (out / "cg2_cd1" / "metrics_rep001.csv").is_file()
        assert (out / "grid.svg").is_file()


class TestCompareOptim:
    def test_variants(self, tmp_path):
        out = tmp_path / "c"
        assert main(["compare-optim", "--out", str(out), "--reps", "1", *TINY]) == EXIT_OK
        c = rows(out / "comparison.csv")
        assert c[0] == ["iter", "irprop_mean", "irprop_std", "gdm_0.01_mean", "gdm_0.01_std",
                        "gdm_0.001_mean", "gdm_0.001_std"]
        assert len(c) == 7
        for name in ("irprop", "gdm_0.01", "gdm_0.001"):
            assert (out / name / "metrics_rep000.csv").is_file()


class TestTomography:
    def test_zero_generator(self, tmp_path):
        # zero angles leave |0...0> unchanged, so |rho| has a single 1 at the top-left
        rec = {"n": 2, "c_t": 1, "c_g": 1, "gen_params": [0.0] * num_layered_params(2, 1),
               "seeds": {"target_seed": 3}}
        (tmp_path / "params_rep000.json").write_text(json.dumps(rec))
        assert main(["tomography", str(tmp_path), "--svg"]) == EXIT_OK
        m = np.array(rows(tmp_path / "tomography_rep000_generated.csv"), dtype=float)
        expect = np.zeros((4, 4))
        expect[0, 0] = 1.0
        assert np.allclose(m, expect)
        t = np.array(rows(tmp_path / "tomography_rep000_target.csv"), dtype=float)
        assert np.trace(t) == pytest.approx(1.0)
        assert (tmp_path / "tomography_rep000_generated.svg").is_file()

    def test_after_training(self, tmp_path):
        assert run_tiny(tmp_path) == EXIT_OK
        assert main(["tomography", str(tmp_path), "--rep", "1"]) == EXIT_OK
        assert (tmp_path / "tomography_rep001_target.csv").is_file()

    def test_incomplete_artifact(self, tmp_path):
        (tmp_path / "params_rep000.json").write_text("{}")
        assert main(["tomography", str(tmp_path)]) == EXIT_MISSING
