"""Command-line front end.

Commands dispatch to the library modules and write CSV or JSON results with
a provenance header (parameters, package version, eps, seed).  Scenario
JSON files supply parameters; explicit flags override file values.  With
--plot, a matplotlib figure is rendered next to the data file.

Exit codes: 0 ok, 2 configuration, 3 domain, 4 non-convergence, 5 I/O.
"""

from __future__ import annotations

import csv
import datetime
import functools
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__
from .errors import ConfigError, DomainError, HpfracError
from .operators import (HPOperatorSpec, QuadratureConfig, SampledSignal,
                        hilfer_prabhakar_derivative, prabhakar_derivative,
                        prabhakar_integral, regularized_prabhakar_derivative)
from .specfun import MLParams, ml3

EPS_ENV = "HPFRAC_EPS"
IO_EXIT = 5


def _fmt(x) -> str:
    """Full-precision decimal serialization (17 significant digits)."""
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _provenance(params: dict, eps: float, seed=None, timestamp=True) -> dict:
    prov = {"version": __version__, "eps": eps, "parameters": params}
    if seed is not None:
        prov["seed"] = seed
    if timestamp:
        prov["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return prov


def _write_output(path, fmt, columns, rows, prov):
    """Write rows (+ provenance) as CSV with '#' header or as JSON."""
    out = Path(path) if path else None
    if fmt == "json":
        doc = {"provenance": prov,
               "columns": list(columns),
               "rows": [[_fmt(v) for v in r] for r in rows]}
        text = json.dumps(doc, indent=2) + "\n"
        if out is None:
            sys.stdout.write(text)
        else:
            out.write_text(text)
        return
    lines = [f"# {k} = {json.dumps(v, sort_keys=True, default=str)}"
             for k, v in sorted(prov.items())]
    target = sys.stdout if out is None else open(out, "w", newline="")
    try:
        for ln in lines:
            print(ln, file=target)
        w = csv.writer(target)
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(v) for v in r])
    finally:
        if out is not None:
            target.close()


def _load_scenario(path) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise _IOFail(f"cannot read scenario file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"scenario file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("scenario file must contain a JSON object")
    return data


class _IOFail(HpfracError):
    exit_code = IO_EXIT


def _merge(scenario: dict, allowed: dict, **flags) -> dict:
    """Merge scenario values and CLI flags (flags win); reject unknown keys."""
    unknown = set(scenario) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown scenario keys: {sorted(unknown)}")
    merged = dict(scenario)
    for k, v in flags.items():
        if v is not None:
            merged[k] = v
    for k, default in allowed.items():
        merged.setdefault(k, default)
    missing = [k for k, v in merged.items() if v is None]
    if missing:
        raise ConfigError(f"missing required parameters: {sorted(missing)}")
    return merged


def _handle_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except HpfracError as exc:
            record = {"error": type(exc).__name__, "message": str(exc)}
            print(json.dumps(record), file=sys.stderr)
            sys.exit(exc.exit_code)
        except OSError as exc:
            record = {"error": "IOError", "message": str(exc)}
            print(json.dumps(record), file=sys.stderr)
            sys.exit(IO_EXIT)
    return wrapper


def _parse_complex(v) -> complex:
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(v[0], v[1])
    try:
        return complex(str(v).replace(" ", ""))
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex number from {v!r}") from exc


def _read_samples(path) -> SampledSignal:
    """CSV of (t, value) rows on a uniform grid starting at t = 0."""
    try:
        raw = [row for row in csv.reader(Path(path).open())
               if row and not row[0].lstrip().startswith("#")]
    except OSError as exc:
        raise _IOFail(f"cannot read samples from {path}: {exc}") from exc
    body = raw[1:] if raw and not _is_number(raw[0][0]) else raw
    t = np.array([float(r[0]) for r in body])
    v = np.array([complex(r[1]) for r in body])
    if t.size < 4 or abs(t[0]) > 1e-12:
        raise ConfigError("need >= 4 samples starting at t = 0")
    steps = np.diff(t)
    if not np.allclose(steps, steps[0], rtol=1e-8):
        raise ConfigError("sample grid must be uniform")
    return SampledSignal(step=float(steps[0]), values=v)


def _is_number(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def _common(f):
    f = click.option("--output", "-o", type=click.Path(), default=None,
                     help="Output file (default: stdout).")(f)
    f = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                     default="csv", show_default=True)(f)
    f = click.option("--eps", type=float, default=None,
                     envvar=EPS_ENV,
                     help=f"Accuracy target (env {EPS_ENV}, default 1e-10).")(f)
    f = click.option("--no-timestamp", is_flag=True,
                     help="Suppress the timestamp field for byte-identical reruns.")(f)
    f = click.option("--plot", is_flag=True,
                     help="Render a matplotlib figure next to the output file.")(f)
    f = click.option("--scenario", type=click.Path(), default=None,
                     help="JSON scenario file; explicit flags override it.")(f)
    return f


def _plot_target(output) -> Path:
    if output is None:
        raise ConfigError("--plot requires --output (figure is written alongside)")
    return Path(output).with_suffix(".png")


@click.group()
@click.version_option(__version__)
def main():
    """Numerical toolkit for Prabhakar-type fractional calculus."""


# ----------------------------------------------------------------- mlf


@main.group()
def mlf():
    """Three-parameter Mittag-Leffler function."""


@mlf.command("eval")
@_common
@click.option("--rho", type=float, default=None)
@click.option("--mu", type=float, default=None)
@click.option("--gamma", type=float, default=None)
@click.option("--z-min", type=float, default=None)
@click.option("--z-max", type=float, default=None)
@click.option("--points", type=int, default=None)
@_handle_errors
def mlf_eval(output, fmt, eps, no_timestamp, plot, scenario,
             rho, mu, gamma, z_min, z_max, points):
    """Evaluate E^gamma_{rho,mu}(z) on a real interval of z."""
    sc = _load_scenario(scenario)
    p = _merge(sc, {"rho": None, "mu": None, "gamma": None,
                    "z_min": -5.0, "z_max": 5.0, "points": 101},
               rho=rho, mu=mu, gamma=gamma, z_min=z_min, z_max=z_max,
               points=points)
    eps = eps if eps is not None else 1e-10
    zs = np.linspace(p["z_min"], p["z_max"], int(p["points"]))
    rows = []
    for z in zs:
        ev = ml3(p["rho"], p["mu"], p["gamma"], complex(z), eps=eps)
        rows.append((z, ev.value.real, ev.value.imag, ev.terms_used,
                     ev.error_bound))
    prov = _provenance(p, eps, timestamp=not no_timestamp)
    _write_output(output, fmt, ("z", "re", "im", "terms", "error_bound"),
                  rows, prov)
    if plot:
        from .plotting import render_curves
        render_curves(_plot_target(output), zs,
                      [("Re", [r[1] for r in rows]), ("Im", [r[2] for r in rows])],
                      "z", "E(z)", "three-parameter Mittag-Leffler")


# ------------------------------------------------------------------ op


@main.group()
def op():
    """Discrete Prabhakar / Hilfer-Prabhakar operators."""


@op.command("apply")
@_common
@click.option("--operator", "kind",
              type=click.Choice(["integral", "derivative", "regularized", "hilfer"]),
              default=None)
@click.option("--gamma", type=float, default=None)
@click.option("--mu", type=float, default=None)
@click.option("--nu", type=float, default=None)
@click.option("--rho", type=float, default=None)
@click.option("--omega", type=str, default=None)
@click.option("--input", "input_path", type=click.Path(), default=None,
              help="CSV of (t, value) samples on a uniform grid from 0.")
@_handle_errors
def op_apply(output, fmt, eps, no_timestamp, plot, scenario, kind,
             gamma, mu, nu, rho, omega, input_path):
    """Apply a fractional operator to sampled data."""
    sc = _load_scenario(scenario)
    p = _merge(sc, {"operator": None, "gamma": None, "mu": None, "nu": 0.0,
                    "rho": None, "omega": 0.0, "input": None},
               operator=kind, gamma=gamma, mu=mu, nu=nu, rho=rho,
               omega=omega, input=input_path)
    eps = eps if eps is not None else 1e-10
    om = _parse_complex(p["omega"])
    sig = _read_samples(p["input"])
    params = MLParams(rho=p["rho"], mu=p["mu"], gamma=p["gamma"], omega=om)
    cfg = QuadratureConfig()
    if p["operator"] == "integral":
        res = prabhakar_integral(sig, params, cfg=cfg, eps=eps)
    elif p["operator"] == "derivative":
        res = prabhakar_derivative(sig, params, cfg=cfg, eps=eps)
    elif p["operator"] == "regularized":
        res = regularized_prabhakar_derivative(sig, params, cfg=cfg, eps=eps)
    else:
        spec = HPOperatorSpec(gamma=p["gamma"], mu=p["mu"], nu=p["nu"],
                              rho=p["rho"], omega=om)
        res = hilfer_prabhakar_derivative(sig, spec, cfg=cfg, eps=eps)
    rows = [(t, v.real, v.imag) for t, v in zip(res.times, res.values)]
    prov = _provenance({k: str(v) for k, v in p.items()}, eps,
                       timestamp=not no_timestamp)
    _write_output(output, fmt, ("t", "re", "im"), rows, prov)
    if plot:
        from .plotting import render_curves
        render_curves(_plot_target(output), res.times,
                      [("Re", res.values.real), ("Im", res.values.imag)],
                      "t", "value", f"{p['operator']} operator output")


# ---------------------------------------------------------------- heat


@main.group()
def heat():
    """Fractional heat Cauchy problem."""


@heat.command("solve")
@_common
@click.option("--gamma", type=float, default=None)
@click.option("--mu", type=float, default=None)
@click.option("--nu", type=float, default=None)
@click.option("--rho", type=float, default=None)
@click.option("--omega", type=float, default=None)
@click.option("--regularized/--plain", "regularized", default=None)
@click.option("--diffusivity", "-K", type=float, default=None)
@click.option("--sigma2", type=float, default=None,
              help="Variance of the Gaussian initial datum.")
@click.option("--x-min", type=float, default=None)
@click.option("--x-max", type=float, default=None)
@click.option("--x-points", type=int, default=None)
@click.option("--t", "times", type=float, multiple=True)
@_handle_errors
def heat_solve(output, fmt, eps, no_timestamp, plot, scenario, gamma, mu, nu,
               rho, omega, regularized, diffusivity, sigma2, x_min, x_max,
               x_points, times):
    """Solve the heat problem with Gaussian initial data on an (x, t) grid."""
    from .heat import HeatProblem, gaussian_g_hat, solve_physical

    sc = _load_scenario(scenario)
    p = _merge(sc, {"gamma": None, "mu": None, "nu": 0.0, "rho": None,
                    "omega": 0.0, "regularized": False, "diffusivity": None,
                    "sigma2": 1.0, "x_min": -5.0, "x_max": 5.0,
                    "x_points": 21, "t": None},
               gamma=gamma, mu=mu, nu=nu, rho=rho, omega=omega,
               regularized=regularized, diffusivity=diffusivity,
               sigma2=sigma2, x_min=x_min, x_max=x_max, x_points=x_points,
               t=list(times) if times else None)
    eps = eps if eps is not None else 1e-8
    spec = HPOperatorSpec(gamma=p["gamma"], mu=p["mu"], nu=p["nu"],
                          rho=p["rho"], omega=p["omega"],
                          regularized=bool(p["regularized"]))
    problem = HeatProblem(spec, p["diffusivity"], gaussian_g_hat(p["sigma2"]))
    xs = np.linspace(p["x_min"], p["x_max"], int(p["x_points"]))
    ts = [float(t) for t in np.atleast_1d(p["t"])]
    rows = []
    for t in ts:
        for x in xs:
            u = solve_physical(problem, float(x), t, eps=eps)
            rows.append((x, t, u.real, u.imag, eps))
    prov = _provenance(p, eps, timestamp=not no_timestamp)
    _write_output(output, fmt, ("x", "t", "re_u", "im_u", "error_bound"),
                  rows, prov)
    if plot:
        from .plotting import render_curves
        series = []
        for t in ts:
            series.append((f"t={t:g}",
                           [r[2] for r in rows if r[1] == t]))
        render_curves(_plot_target(output), xs, series, "x", "u(x,t)",
                      "fractional heat solution")


# ----------------------------------------------------------------- fel


@main.group()
def fel():
    """Generalized fractional free-electron-laser equation."""


@fel.command("solve")
@_common
@click.option("--gamma", type=float, default=None)
@click.option("--mu", type=float, default=None)
@click.option("--nu", type=float, default=None)
@click.option("--rho", type=float, default=None)
@click.option("--omega", type=str, default=None)
@click.option("--lam", type=str, default=None)
@click.option("--varpi", type=float, default=None)
@click.option("--kappa", type=float, default=None)
@click.option("--forcing", type=click.Choice(["zero", "power", "prabhakar_power"]),
              default=None)
@click.option("--m", "m_exp", type=float, default=None)
@click.option("--sigma", type=float, default=None)
@click.option("--x-max", type=float, default=None)
@click.option("--x-points", type=int, default=None)
@_handle_errors
def fel_solve(output, fmt, eps, no_timestamp, plot, scenario, gamma, mu, nu,
              rho, omega, lam, varpi, kappa, forcing, m_exp, sigma, x_max,
              x_points):
    """Evaluate the FEL solution series on an x grid."""
    from .fel import FelProblem, FelSolution, Forcing

    sc = _load_scenario(scenario)
    p = _merge(sc, {"gamma": None, "mu": None, "nu": 0.0, "rho": None,
                    "omega": 0.0, "lam": None, "varpi": None, "kappa": 0.0,
                    "forcing": "zero", "m": 1.0, "sigma": 0.0,
                    "x_max": 1.0, "x_points": 33},
               gamma=gamma, mu=mu, nu=nu, rho=rho, omega=omega, lam=lam,
               varpi=varpi, kappa=kappa, forcing=forcing, m=m_exp,
               sigma=sigma, x_max=x_max, x_points=x_points)
    eps = eps if eps is not None else 1e-10
    spec = HPOperatorSpec(gamma=p["gamma"], mu=p["mu"], nu=p["nu"],
                          rho=p["rho"], omega=_parse_complex(p["omega"]))
    problem = FelProblem(spec, lam=_parse_complex(p["lam"]), varpi=p["varpi"],
                         kappa=p["kappa"],
                         forcing=Forcing(p["forcing"], m=p["m"], sigma=p["sigma"]))
    sol = FelSolution(problem, eps=eps)
    xs = np.linspace(0.0, p["x_max"], int(p["x_points"]))[1:]
    rows = []
    for x in xs:
        ev = sol.evaluate(float(x))
        rows.append((x, ev.value.real, ev.value.imag, ev.error_bound))
    prov = _provenance({k: str(v) for k, v in p.items()}, eps,
                       timestamp=not no_timestamp)
    _write_output(output, fmt, ("x", "re_y", "im_y", "error_bound"), rows, prov)
    if plot:
        from .plotting import render_curves
        render_curves(_plot_target(output), xs,
                      [("Re", [r[1] for r in rows]), ("Im", [r[2] for r in rows])],
                      "x", "y(x)", "FEL solution")


# ---------------------------------------------------------------- gfpp


@main.group()
def gfpp():
    """Generalized fractional Poisson process."""


def _gfpp_model_opts(f):
    for name in ("mu", "rho", "gamma", "phi", "lam"):
        f = click.option(f"--{name}", type=float, default=None)(f)
    return f


def _gfpp_model(sc, extra_allowed, **flags):
    allowed = {"lam": None, "phi": None, "gamma": None, "rho": None,
               "mu": None}
    allowed.update(extra_allowed)
    return _merge(sc, allowed, **flags)


@gfpp.command("validate")
@_common
@_gfpp_model_opts
@_handle_errors
def gfpp_validate(output, fmt, eps, no_timestamp, plot, scenario,
                  lam, phi, gamma, rho, mu):
    """Check the non-negativity (Bernstein) parameter condition."""
    from .gfpp import GfppModel, validate

    p = _gfpp_model(_load_scenario(scenario), {}, lam=lam, phi=phi,
                    gamma=gamma, rho=rho, mu=mu)
    eps = eps if eps is not None else 1e-10
    model = GfppModel(lam=p["lam"], phi=p["phi"], gamma=p["gamma"],
                      rho=p["rho"], mu=p["mu"])
    bad = validate(model)
    prov = _provenance(p, eps, timestamp=not no_timestamp)
    doc = {"provenance": prov, "valid": not bad, "violations": bad}
    text = json.dumps(doc, indent=2, default=str) + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _gfpp_pointwise(command_name, column, fn_name, extra):
    """Factory for the pmf/pgf/mean/fim evaluation commands."""

    @_common
    @_gfpp_model_opts
    @click.option("--t", "times", type=float, multiple=True)
    @_handle_errors
    def cmd(output, fmt, eps, no_timestamp, plot, scenario,
            lam, phi, gamma, rho, mu, times, **kw):
        from . import gfpp as G

        sc = _load_scenario(scenario)
        allowed = dict(extra)
        allowed["t"] = [1.0]
        p = _gfpp_model(sc, allowed, lam=lam, phi=phi, gamma=gamma, rho=rho,
                        mu=mu, t=list(times) if times else None,
                        **{k: v for k, v in kw.items() if v is not None})
        eps = eps if eps is not None else 1e-10
        model = G.GfppModel(lam=p["lam"], phi=p["phi"], gamma=p["gamma"],
                            rho=p["rho"], mu=p["mu"])
        ts = [float(t) for t in np.atleast_1d(p["t"])]
        rows = []
        for t in ts:
            args = [model]
            if fn_name == "pmf":
                args.append(int(p["k"]))
            elif fn_name == "pgf":
                args.append(float(p["v"]))
            elif fn_name == "fractional_integral_mean":
                args.append(float(p["alpha"]))
            args.append(t)
            fn = getattr(G, fn_name)
            kwargs = {"eps": eps} if fn_name in ("pmf", "pgf") else {}
            rows.append((t, fn(*args, **kwargs)))
        prov = _provenance(p, eps, timestamp=not no_timestamp)
        _write_output(output, fmt, ("t", column), rows, prov)
        if plot:
            from .plotting import render_curves
            render_curves(_plot_target(output), [r[0] for r in rows],
                          [(column, [r[1] for r in rows])], "t", column,
                          f"gfPp {command_name}")
    cmd.__name__ = f"gfpp_{command_name}"
    return cmd


gfpp.command("pmf")(click.option("--k", type=int, default=None)(
    _gfpp_pointwise("pmf", "pmf", "pmf", {"k": 0})))
gfpp.command("pgf")(click.option("--v", type=float, default=None)(
    _gfpp_pointwise("pgf", "pgf", "pgf", {"v": 0.5})))
gfpp.command("mean")(_gfpp_pointwise("mean", "mean", "mean_count", {}))
gfpp.command("fim")(click.option("--alpha", type=float, default=None)(
    _gfpp_pointwise("fim", "fractional_integral_mean",
                    "fractional_integral_mean", {"alpha": 1.0})))


@gfpp.command("simulate")
@_common
@_gfpp_model_opts
@click.option("--horizon", type=float, default=None)
@click.option("--paths", "n_paths", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--raw-events", is_flag=True,
              help="Emit every event time instead of per-path counts.")
@_handle_errors
def gfpp_simulate(output, fmt, eps, no_timestamp, plot, scenario,
                  lam, phi, gamma, rho, mu, horizon, n_paths, seed,
                  raw_events):
    """Simulate renewal paths of the counting process."""
    from .gfpp import GfppModel, sample_paths

    p = _gfpp_model(_load_scenario(scenario),
                    {"horizon": 1.0, "paths": 100, "seed": 0},
                    lam=lam, phi=phi, gamma=gamma, rho=rho, mu=mu,
                    horizon=horizon, paths=n_paths, seed=seed)
    eps = eps if eps is not None else 1e-10
    model = GfppModel(lam=p["lam"], phi=p["phi"], gamma=p["gamma"],
                      rho=p["rho"], mu=p["mu"])
    result = sample_paths(model, horizon=p["horizon"],
                          n_paths=int(p["paths"]), seed=int(p["seed"]),
                          eps=eps)
    if raw_events:
        rows = [(i, t) for i, ps in enumerate(result)
                for t in ps.event_times]
        columns = ("path", "event_time")
    else:
        rows = [(i, ps.count(p["horizon"])) for i, ps in enumerate(result)]
        columns = ("path", "count")
    prov = _provenance(p, eps, seed=int(p["seed"]),
                       timestamp=not no_timestamp)
    _write_output(output, fmt, columns, rows, prov)
    if plot:
        from .plotting import render_paths
        render_paths(_plot_target(output), result, p["horizon"],
                     "gfPp sample paths")


# -------------------------------------------------------------- laplace


@main.group()
def laplace():
    """Numerical Laplace transform utilities."""


@laplace.command("forward")
@_common
@click.option("--input", "input_path", type=click.Path(), default=None,
              help="CSV of (t, value) samples on a uniform grid from 0.")
@click.option("--s", "s_values", type=str, multiple=True,
              help="Evaluation points (complex), repeatable.")
@click.option("--tail-tol", type=float, default=None)
@_handle_errors
def laplace_forward(output, fmt, eps, no_timestamp, plot, scenario,
                    input_path, s_values, tail_tol):
    """Forward transform of sampled data at the given s points."""
    from .laplace import forward_lt

    sc = _load_scenario(scenario)
    p = _merge(sc, {"input": None, "s": ["1"], "tail_tol": 1e-3},
               input=input_path, s=list(s_values) if s_values else None,
               tail_tol=tail_tol)
    eps = eps if eps is not None else 1e-10
    sig = _read_samples(p["input"])
    rows = []
    for sv in p["s"]:
        s = _parse_complex(sv)
        res = forward_lt(sig, s, tail_tol=p["tail_tol"], return_tail=True)
        rows.append((s, res.value.real, res.value.imag, res.tail_estimate))
    prov = _provenance({k: str(v) for k, v in p.items()}, eps,
                       timestamp=not no_timestamp)
    _write_output(output, fmt, ("s", "re", "im", "tail_estimate"), rows, prov)


@laplace.command("invert")
@_common
@click.option("--mu", type=float, default=None)
@click.option("--rho", type=float, default=None)
@click.option("--gamma", type=float, default=None)
@click.option("--omega", type=float, default=None)
@click.option("--t", "times", type=float, multiple=True)
@click.option("--nodes", type=int, default=None)
@_handle_errors
def laplace_invert(output, fmt, eps, no_timestamp, plot, scenario,
                   mu, rho, gamma, omega, times, nodes):
    """Talbot-invert the kernel transform s^-mu (1 - omega s^-rho)^gamma."""
    from .laplace import ContourConfig, invert_lt

    sc = _load_scenario(scenario)
    p = _merge(sc, {"mu": None, "rho": None, "gamma": None, "omega": 0.0,
                    "t": [1.0], "nodes": 32},
               mu=mu, rho=rho, gamma=gamma, omega=omega,
               t=list(times) if times else None, nodes=nodes)
    eps = eps if eps is not None else 1e-10
    cfg = ContourConfig(node_count=int(p["nodes"]))

    def F(s: complex) -> complex:
        return s ** (-p["mu"]) * (1.0 - p["omega"] * s ** (-p["rho"])) ** p["gamma"]

    rows = []
    for t in np.atleast_1d(p["t"]):
        v = invert_lt(F, float(t), cfg)
        rows.append((t, v.real, v.imag))
    prov = _provenance(p, eps, timestamp=not no_timestamp)
    _write_output(output, fmt, ("t", "re", "im"), rows, prov)
    if plot:
        from .plotting import render_curves
        render_curves(_plot_target(output), [r[0] for r in rows],
                      [("Re", [r[1] for r in rows])], "t", "f(t)",
                      "inverse transform")


# --------------------------------------------------------------- region


@main.group()
def region():
    """Bromwich-abscissa constraint regions."""


@region.command("map")
@_common
@click.option("--amplitude", "-A", "amplitude", type=float, default=None)
@click.option("--mu", type=float, default=None)
@click.option("--omega", type=float, default=None)
@click.option("--rho", type=float, default=None)
@click.option("--gamma", type=float, default=None)
@click.option("--window", type=str, default=None,
              help="x0,x1,y0,y1 rectangle in the s-plane.")
@click.option("--resolution", type=int, default=None)
@_handle_errors
def region_map(output, fmt, eps, no_timestamp, plot, scenario, amplitude,
               mu, omega, rho, gamma, window, resolution):
    """Map the constraint |A / (s^mu (1 - omega s^-rho)^gamma)| < 1."""
    from .laplace import constraint_map

    sc = _load_scenario(scenario)
    p = _merge(sc, {"amplitude": None, "mu": None, "omega": None,
                    "rho": None, "gamma": None, "window": "0.01,3,-2,2",
                    "resolution": 64},
               amplitude=amplitude, mu=mu, omega=omega, rho=rho, gamma=gamma,
               window=window, resolution=resolution)
    eps = eps if eps is not None else 1e-10
    win = p["window"]
    if isinstance(win, str):
        win = tuple(float(v) for v in win.split(","))
    if len(win) != 4:
        raise ConfigError("window must have 4 entries x0,x1,y0,y1")
    cmap = constraint_map(p["amplitude"], p["mu"], p["omega"], p["rho"],
                          p["gamma"], tuple(win), int(p["resolution"]))
    rows = [(x, y, int(cmap.indicator[i, j]), cmap.modulus[i, j])
            for i, x in enumerate(cmap.xs)
            for j, y in enumerate(cmap.ys)]
    prov = _provenance(p, eps, timestamp=not no_timestamp)
    prov["min_abscissa"] = cmap.min_abscissa
    _write_output(output, fmt, ("x", "y", "indicator", "modulus"), rows, prov)
    if plot:
        from .plotting import render_region
        render_region(_plot_target(output), cmap.xs, cmap.ys, cmap.indicator,
                      "series-convergence constraint region",
                      cmap.min_abscissa)


if __name__ == "__main__":
    main()
