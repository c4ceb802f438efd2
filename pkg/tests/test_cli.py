"""Command-line interface: outputs, scenarios, exit codes, determinism."""

import csv
import json
import shutil
import subprocess

import numpy as np
import pytest
from click.testing import CliRunner

from hpfrac.cli import main
from hpfrac.specfun import MLParams, ml3, prabhakar_kernel


@pytest.fixture()
def runner():
    return CliRunner()


def parse_csv(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = [ln for ln in lines if ln.startswith("#")]
    body = [ln for ln in lines if not ln.startswith("#")]
    rows = list(csv.reader(body))
    return header, rows[0], rows[1:]


def write_samples(path, f, step=1.0 / 64, n=64):
    t = step * np.arange(n + 1)
    with open(path, "w") as fh:
        fh.write("t,value\n")
        for ti, vi in zip(t, f(t)):
            fh.write(f"{float(ti)!r},{float(vi)!r}\n")


# ------------------------------------------------------------------ mlf


def test_mlf_eval_matches_library(runner):
    res = runner.invoke(main, ["mlf", "eval", "--rho", "0.6", "--mu", "1.2",
                               "--gamma", "0.8", "--z-min", "-2", "--z-max",
                               "2", "--points", "5", "--no-timestamp"])
    assert res.exit_code == 0, res.output
    _, cols, rows = parse_csv(res.output)
    assert cols == ["z", "re", "im", "terms", "error_bound"]
    assert len(rows) == 5
    for r in rows:
        z = float(r[0])
        want = ml3(0.6, 1.2, 0.8, complex(z), eps=1e-10)
        # 17 significant digits round-trip exactly
        assert float(r[1]) == want.value.real
        assert int(r[3]) == want.terms_used


def test_mlf_eval_deterministic_without_timestamp(runner):
    args = ["mlf", "eval", "--rho", "0.5", "--mu", "1.0", "--gamma", "1.0",
            "--no-timestamp"]
    a = runner.invoke(main, args)
    b = runner.invoke(main, args)
    assert a.exit_code == b.exit_code == 0
    assert a.output == b.output
    c = runner.invoke(main, ["mlf", "eval", "--rho", "0.5", "--mu", "1.0",
                             "--gamma", "1.0"])
    assert "# timestamp" in c.output


def test_mlf_eval_json_format(runner):
    res = runner.invoke(main, ["mlf", "eval", "--rho", "1.0", "--mu", "1.0",
                               "--gamma", "1.0", "--points", "3", "--format",
                               "json", "--no-timestamp"])
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["columns"] == ["z", "re", "im", "terms", "error_bound"]
    assert doc["provenance"]["eps"] == 1e-10
    assert len(doc["rows"]) == 3


def test_mlf_eval_env_eps(runner):
    res = runner.invoke(main, ["mlf", "eval", "--rho", "1.0", "--mu", "1.0",
                               "--gamma", "1.0", "--points", "3", "--format",
                               "json", "--no-timestamp"],
                        env={"HPFRAC_EPS": "1e-6"})
    assert res.exit_code == 0
    assert json.loads(res.output)["provenance"]["eps"] == 1e-6


def test_mlf_eval_nonconvergence_exit_code(runner):
    res = runner.invoke(main, ["mlf", "eval", "--rho", "0.1", "--mu", "0.5",
                               "--gamma", "1.0", "--z-min", "8", "--z-max",
                               "8", "--points", "1"])
    assert res.exit_code == 4
    assert "NonConvergence" in res.output or "NonConvergence" in (res.stderr or "")


def test_mlf_eval_domain_error_exit_code(runner):
    res = runner.invoke(main, ["mlf", "eval", "--rho", "-1", "--mu", "1.0",
                               "--gamma", "1.0"])
    assert res.exit_code == 3


def test_missing_parameter_is_config_error(runner):
    res = runner.invoke(main, ["mlf", "eval", "--rho", "1.0"])
    assert res.exit_code == 2


# -------------------------------------------------------------- scenarios


def test_scenario_file_and_flag_override(runner, tmp_path):
    sc = tmp_path / "scenario.json"
    sc.write_text(json.dumps({"rho": 1.0, "mu": 1.0, "gamma": 1.0,
                              "points": 3, "z_min": 0.0, "z_max": 1.0}))
    base = runner.invoke(main, ["mlf", "eval", "--scenario", str(sc),
                                "--no-timestamp"])
    assert base.exit_code == 0
    _, _, rows = parse_csv(base.output)
    assert abs(float(rows[-1][1]) - np.e) < 1e-12
    # explicit flag wins over the scenario value
    over = runner.invoke(main, ["mlf", "eval", "--scenario", str(sc),
                                "--gamma", "0.0", "--no-timestamp"])
    _, _, rows_o = parse_csv(over.output)
    assert abs(float(rows_o[-1][1]) - 1.0) < 1e-12


def test_scenario_unknown_key_rejected(runner, tmp_path):
    sc = tmp_path / "scenario.json"
    sc.write_text(json.dumps({"rho": 1.0, "mu": 1.0, "gamma": 1.0,
                              "typo_key": 1}))
    res = runner.invoke(main, ["mlf", "eval", "--scenario", str(sc)])
    assert res.exit_code == 2
    sc.write_text("not json")
    assert runner.invoke(main, ["mlf", "eval", "--scenario", str(sc)]).exit_code == 2


# ------------------------------------------------------------------- op


def test_op_apply_integral(runner, tmp_path):
    inp = tmp_path / "samples.csv"
    write_samples(inp, lambda t: t)
    out = tmp_path / "out.csv"
    res = runner.invoke(main, ["op", "apply", "--operator", "integral",
                               "--gamma", "0", "--mu", "1", "--rho", "1",
                               "--input", str(inp), "--output", str(out),
                               "--no-timestamp"])
    assert res.exit_code == 0, res.output
    _, cols, rows = parse_csv(out.read_text())
    assert cols == ["t", "re", "im"]
    t_last, re_last = float(rows[-1][0]), float(rows[-1][1])
    assert abs(re_last - t_last ** 2 / 2.0) < 1e-12  # plain integration of t


def test_op_apply_missing_input_is_io_error(runner, tmp_path):
    res = runner.invoke(main, ["op", "apply", "--operator", "integral",
                               "--gamma", "0", "--mu", "1", "--rho", "1",
                               "--input", str(tmp_path / "nope.csv")])
    assert res.exit_code == 5


# ----------------------------------------------------------------- heat


def test_heat_solve_classical(runner):
    res = runner.invoke(main, ["heat", "solve", "--gamma", "0", "--mu", "1",
                               "--rho", "1", "--regularized", "-K", "0.5",
                               "--sigma2", "1.0", "--x-min", "-2", "--x-max",
                               "2", "--x-points", "5", "--t", "1.0",
                               "--no-timestamp"])
    assert res.exit_code == 0, res.output
    _, cols, rows = parse_csv(res.output)
    assert cols == ["x", "t", "re_u", "im_u", "error_bound"]
    var = 1.0 + 2.0 * 0.5 * 1.0
    for r in rows:
        x = float(r[0])
        want = np.exp(-x * x / (2 * var)) / np.sqrt(2 * np.pi * var)
        assert abs(float(r[2]) - want) < 1e-7


# ------------------------------------------------------------------ fel


def test_fel_solve_runs_and_reports_bounds(runner):
    res = runner.invoke(main, ["fel", "solve", "--gamma", "0.5", "--mu",
                               "0.7", "--nu", "1.0", "--rho", "0.5",
                               "--omega", "-1", "--lam", "-0.5", "--varpi",
                               "0.6", "--kappa", "1.0", "--x-points", "9",
                               "--no-timestamp"])
    assert res.exit_code == 0, res.output
    _, cols, rows = parse_csv(res.output)
    assert cols == ["x", "re_y", "im_y", "error_bound"]
    assert len(rows) == 8  # x = 0 excluded
    assert all(float(r[3]) < 1e-8 for r in rows)


# ----------------------------------------------------------------- gfpp


GFPP_ARGS = ["--lam", "1", "--phi", "1", "--gamma", "1", "--rho", "0.25",
             "--mu", "0.5"]


def test_gfpp_validate(runner):
    res = runner.invoke(main, ["gfpp", "validate"] + GFPP_ARGS)
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["valid"] is True and doc["violations"] == []
    res = runner.invoke(main, ["gfpp", "validate", "--lam", "1", "--phi", "1",
                               "--gamma", "1", "--rho", "0.9", "--mu", "1.0"])
    doc = json.loads(res.output)
    assert doc["valid"] is False and 0 in doc["violations"]


def test_gfpp_pmf_matches_library(runner):
    from hpfrac.gfpp import GfppModel, pmf

    res = runner.invoke(main, ["gfpp", "pmf", "--k", "1", "--t", "1.0",
                               "--no-timestamp"] + GFPP_ARGS)
    assert res.exit_code == 0, res.output
    _, cols, rows = parse_csv(res.output)
    model = GfppModel(lam=1.0, phi=1.0, gamma=1.0, rho=0.25, mu=0.5)
    assert float(rows[0][1]) == pmf(model, 1, 1.0, eps=1e-10)


def test_gfpp_pmf_invalid_model_is_domain_error(runner):
    res = runner.invoke(main, ["gfpp", "pmf", "--k", "0", "--lam", "1",
                               "--phi", "1", "--gamma", "1", "--rho", "0.9",
                               "--mu", "1.0"])
    assert res.exit_code == 3


def test_gfpp_simulate_deterministic(runner):
    args = ["gfpp", "simulate", "--horizon", "1.0", "--paths", "4", "--seed",
            "11", "--no-timestamp"] + GFPP_ARGS
    a = runner.invoke(main, args)
    b = runner.invoke(main, args)
    assert a.exit_code == 0, a.output
    assert a.output == b.output
    header, cols, rows = parse_csv(a.output)
    assert cols == ["path", "count"]
    assert len(rows) == 4
    assert any("seed" in h for h in header)


def test_gfpp_simulate_raw_events(runner):
    res = runner.invoke(main, ["gfpp", "simulate", "--horizon", "1.0",
                               "--paths", "2", "--seed", "3", "--raw-events",
                               "--no-timestamp"] + GFPP_ARGS)
    assert res.exit_code == 0
    _, cols, rows = parse_csv(res.output)
    assert cols == ["path", "event_time"]
    for r in rows:
        assert 0.0 < float(r[1]) <= 1.0


# -------------------------------------------------------------- laplace


def test_laplace_invert_kernel(runner):
    res = runner.invoke(main, ["laplace", "invert", "--mu", "0.8", "--rho",
                               "0.6", "--gamma", "1.3", "--omega", "-1",
                               "--t", "1.0", "--nodes", "48",
                               "--no-timestamp"])
    assert res.exit_code == 0, res.output
    _, _, rows = parse_csv(res.output)
    # the command inverts s^-mu (1 - omega s^-rho)^gamma, i.e. the
    # transform of the kernel with upper index -gamma
    want = prabhakar_kernel(MLParams(0.6, 0.8, -1.3, -1.0), 1.0).value
    assert abs(float(rows[0][1]) - want.real) < 1e-8


def test_laplace_forward_exponential(runner, tmp_path):
    inp = tmp_path / "exp.csv"
    write_samples(inp, lambda t: np.exp(-t), step=20.0 / 2048, n=2048)
    res = runner.invoke(main, ["laplace", "forward", "--input", str(inp),
                               "--s", "1.0", "--s", "2+1j", "--no-timestamp"])
    assert res.exit_code == 0, res.output
    _, cols, rows = parse_csv(res.output)
    assert cols == ["s", "re", "im", "tail_estimate"]
    assert abs(float(rows[0][1]) - 0.5) < 1e-4
    got = complex(float(rows[1][1]), float(rows[1][2]))
    assert abs(got - 1.0 / (3.0 + 1.0j)) < 1e-4


def test_laplace_forward_tail_error_exit_code(runner, tmp_path):
    inp = tmp_path / "flat.csv"
    write_samples(inp, lambda t: np.ones_like(t), step=1.0 / 64, n=64)
    res = runner.invoke(main, ["laplace", "forward", "--input", str(inp),
                               "--s", "0.5", "--tail-tol", "1e-6"])
    assert res.exit_code == 3  # TailError groups under the domain exit code


# --------------------------------------------------------------- region


def test_region_map_caption_parameters(runner):
    res = runner.invoke(main, ["region", "map", "-A", "1", "--mu", "0.5",
                               "--omega", "-1", "--rho", "0.25", "--gamma",
                               "1", "--no-timestamp"])
    assert res.exit_code == 0, res.output
    header, cols, rows = parse_csv(res.output)
    assert cols == ["x", "y", "indicator", "modulus"]
    assert len(rows) == 64 * 64
    inds = {r[2] for r in rows}
    assert inds == {"0", "1"}  # boundary straddles the window
    assert any("min_abscissa" in h for h in header)


def test_region_map_low_resolution_is_domain_error(runner):
    res = runner.invoke(main, ["region", "map", "-A", "1", "--mu", "0.5",
                               "--omega", "-1", "--rho", "0.25", "--gamma",
                               "1", "--resolution", "8"])
    assert res.exit_code == 3


# ----------------------------------------------------------------- plots


def test_plot_renders_png(runner, tmp_path):
    out = tmp_path / "curve.csv"
    res = runner.invoke(main, ["mlf", "eval", "--rho", "1.0", "--mu", "1.0",
                               "--gamma", "1.0", "--points", "9", "--output",
                               str(out), "--plot", "--no-timestamp"])
    assert res.exit_code == 0, res.output
    png = out.with_suffix(".png")
    assert png.exists()
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_plot_requires_output(runner):
    res = runner.invoke(main, ["mlf", "eval", "--rho", "1.0", "--mu", "1.0",
                               "--gamma", "1.0", "--plot"])
    assert res.exit_code == 2


# ------------------------------------------------------------ entrypoint


def test_console_script_entrypoint():
    exe = shutil.which("hpfrac")
    assert exe, "console script not installed"
    out = subprocess.run([exe, "mlf", "eval", "--rho", "1", "--mu", "1",
                          "--gamma", "1", "--points", "3", "--no-timestamp"],
                         capture_output=True, text=True, timeout=120)
    assert out.returncode == 0
    assert "error_bound" in out.stdout
