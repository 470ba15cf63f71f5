"""Command-line front end writing CSV curve data.

Usage::

    relaysec COMMAND [--config FILE] [--out PATH] [--grid N] [--seed N] [--KEY VALUE ...]

Parameters come from ``key = value`` lines in ``--config`` and from
``--key value`` flags; flags win.  Output is CSV with a leading ``#``
comment line recording the tool version, command, grid, seed and every
parameter.  Numbers are printed with 12 significant digits.

Exit status: 0 ok, 1 invalid configuration or input file, 2 numeric domain
error, 3 discrete search space too large.

Discrete channel files (``discrete-eval --channel FILE``)::

    # comment lines start with '#'
    sizes X XR Y YR
    <|Y|*|YR| probabilities p(y, yr | x=0, xr=0), y major, yr minor>
    <... one line per (x, xr), x major, xr minor>

Range-valued keys (``alpha``, ``b``) take ``start:stop:step`` (stop
included) or a comma-separated list.
"""

from __future__ import annotations

import argparse
import io
import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import __version__
from .core import DomainError, EstimationError, SearchSpaceError, StructuralError
from .coverkim import ck_curve
from .discrete import STOCHASTIC_TOL, DiscreteRelayChannel, thm1_search
from .mcsim import SimConfig, af_simulate
from .model1 import GaussianModel1Params, model1_optimum, model1_region
from .model2 import (GaussianModel2Params, af_optimize, b_sweep, cf_optimize,
                     model2_upper_bound, power_sweep)

COMMANDS = ("model1-region", "model1-capacity", "model2-rates", "model2-power-sweep",
            "model2-b-sweep", "coverkim-curve", "discrete-eval", "af-sim")

# command -> (required keys, optional keys with defaults)
SCHEMA: dict[str, tuple[tuple[str, ...], dict[str, str]]] = {
    "model1-region": (("a", "b", "gamma", "p"), {"noise": "1"}),
    "model1-capacity": (("a", "b", "gamma", "p"), {"noise": "1"}),
    "model2-rates": (("a", "b", "p", "p_r"), {}),
    "model2-power-sweep": (("a", "b", "p", "p_r"), {}),
    "model2-b-sweep": (("a", "p", "p_r"), {"b": "0.01,0.02,0.05,0.1,0.2,0.5,1,2,5,10,20,50,100"}),
    "coverkim-curve": (("alpha", "p", "r0"), {}),
    "discrete-eval": (("channel",), {"yhat_size": ""}),
    "af-sim": (("a", "b", "p", "p_r"), {"n_samples": "1000000"}),
}
DEFAULT_GRID = {"model1-region": 256, "model1-capacity": 256, "discrete-eval": 8}
DEFAULT_GRID_OTHER = 1024


class ConfigError(ValueError):
    """Invalid run configuration (exit status 1)."""


class ChannelFileError(ValueError):
    """Malformed discrete channel file (exit status 1)."""


@dataclass
class RunConfig:
    command: str
    parameters: dict[str, str]
    output_path: Optional[str] = None
    grid_resolution: Optional[int] = None
    seed: Optional[int] = None
    _resolved: dict[str, str] = field(default_factory=dict, repr=False)

    def validate(self) -> None:
        if self.command not in SCHEMA:
            raise ConfigError(f"unknown command: {self.command}")
        required, optional = SCHEMA[self.command]
        for key in self.parameters:
            if key not in required and key not in optional:
                raise ConfigError(f"unknown key: {key}")
        for key in required:
            if key not in self.parameters:
                raise ConfigError(f"missing key: {key}")
        self._resolved = {**optional, **self.parameters}
        if self.grid_resolution is not None and self.grid_resolution < 2:
            raise ConfigError("invalid value for grid: must be an integer >= 2")

    @property
    def grid(self) -> int:
        if self.grid_resolution is not None:
            return self.grid_resolution
        return DEFAULT_GRID.get(self.command, DEFAULT_GRID_OTHER)

    def number(self, key: str) -> float:
        raw = self._resolved[key]
        try:
            val = float(raw)
        except ValueError:
            raise ConfigError(f"invalid value for {key}: {raw!r}") from None
        if not math.isfinite(val):
            raise ConfigError(f"invalid value for {key}: {raw!r}")
        return val

    def integer(self, key: str) -> int:
        raw = self._resolved[key]
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"invalid value for {key}: {raw!r}") from None

    def values(self, key: str) -> list[float]:
        raw = self._resolved[key]
        try:
            return parse_values(raw)
        except ValueError:
            raise ConfigError(f"invalid value for {key}: {raw!r}") from None


def parse_values(text: str) -> list[float]:
    """``"0:3:0.05"`` (inclusive) or ``"0.1,1,10"`` -> list of floats."""
    text = text.strip()
    if ":" in text:
        start, stop, step = (float(t) for t in text.split(":"))
        if step <= 0 or stop < start:
            raise ValueError(text)
        n = int(math.floor((stop - start) / step + 1e-9))
        return [round(start + k * step, 12) for k in range(n + 1)]
    vals = [float(t) for t in text.split(",") if t.strip()]
    if not vals:
        raise ValueError(text)
    return vals


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


def load_discrete_channel(path) -> DiscreteRelayChannel:
    """Read a discrete relay channel file (format in the module docstring)."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ChannelFileError(f"{path}: cannot read channel file ({exc.strerror})") from None
    content = [(i + 1, ln.strip()) for i, ln in enumerate(lines)
               if ln.strip() and not ln.strip().startswith("#")]
    if not content:
        raise ChannelFileError(f"{path}: empty channel file")
    lineno, header = content[0]
    parts = header.split()
    if len(parts) != 5 or parts[0] != "sizes":
        raise ChannelFileError(f"{path}:{lineno}: expected 'sizes X XR Y YR'")
    try:
        sizes = tuple(int(t) for t in parts[1:])
    except ValueError:
        raise ChannelFileError(f"{path}:{lineno}: alphabet sizes must be integers") from None
    if any(s < 1 for s in sizes):
        raise ChannelFileError(f"{path}:{lineno}: alphabet sizes must be positive")
    nx, nxr, ny, nyr = sizes
    rows = content[1:]
    if len(rows) != nx * nxr:
        raise ChannelFileError(
            f"{path}: expected {nx * nxr} probability lines, found {len(rows)}")
    table = np.zeros((nx * nxr, ny * nyr))
    for k, (lineno, text) in enumerate(rows):
        try:
            vals = [float(t) for t in text.split()]
        except ValueError:
            raise ChannelFileError(f"{path}:{lineno}: non-numeric entry") from None
        if len(vals) != ny * nyr:
            raise ChannelFileError(
                f"{path}:{lineno}: expected {ny * nyr} entries, found {len(vals)}")
        if any(v < 0 or not math.isfinite(v) for v in vals):
            raise ChannelFileError(f"{path}:{lineno}: probabilities must be >= 0")
        if abs(math.fsum(vals) - 1.0) > STOCHASTIC_TOL:
            raise ChannelFileError(
                f"{path}:{lineno}: row sums to {math.fsum(vals):.12g}, not 1")
        table[k] = vals
    return DiscreteRelayChannel(table.reshape(nx, nxr, ny, nyr))


def dump_discrete_channel(channel: DiscreteRelayChannel) -> str:
    nx, nxr, ny, nyr = channel.sizes
    out = [f"sizes {nx} {nxr} {ny} {nyr}"]
    for row in channel.transition.reshape(nx * nxr, ny * nyr):
        out.append(" ".join(repr(float(v)) for v in row))
    return "\n".join(out) + "\n"


# -- commands ---------------------------------------------------------------

def _model1_params(cfg: RunConfig) -> GaussianModel1Params:
    return GaussianModel1Params(cfg.number("a"), cfg.number("b"), cfg.number("gamma"),
                                cfg.number("p"), cfg.number("noise"))


def _model2_params(cfg: RunConfig) -> GaussianModel2Params:
    return GaussianModel2Params(cfg.number("a"), cfg.number("b"), cfg.number("p"),
                                cfg.number("p_r"))


def _cmd_model1_region(cfg):
    region = model1_region(_model1_params(cfg), cfg.grid)
    rows = [(v, rho, pt.r1, pt.re) for pt, (v, rho) in zip(region.points, region.provenance)]
    return ("v", "rho", "r1", "re"), rows


def _cmd_model1_capacity(cfg):
    cap, v, rho = model1_optimum(_model1_params(cfg), cfg.grid)
    return ("capacity", "v", "rho"), [(cap, v, rho)]


def _cmd_model2_rates(cfg):
    params = _model2_params(cfg)
    cf_p, cf_re = cf_optimize(params, cfg.grid)
    af_p, af_re = af_optimize(params, cfg.grid)
    return (("cf_p_star", "cf_re", "af_p_star", "af_re", "upper_bound"),
            [(cf_p, cf_re, af_p, af_re, model2_upper_bound(params))])


def _cmd_model2_power_sweep(cfg):
    return ("p", "cf_re", "af_re"), power_sweep(_model2_params(cfg), cfg.grid)


def _cmd_model2_b_sweep(cfg):
    rows = b_sweep(cfg.number("a"), cfg.number("p"), cfg.number("p_r"),
                   cfg.values("b"), cfg.grid)
    return ("b", "cf_re", "af_re", "upper_bound"), rows


def _cmd_coverkim_curve(cfg):
    rows = ck_curve(cfg.number("p"), cfg.number("r0"), cfg.values("alpha"))
    return ("alpha", "achievable", "upper"), rows


def _cmd_discrete_eval(cfg):
    channel = load_discrete_channel(cfg.parameters["channel"])
    yhat = cfg._resolved["yhat_size"]
    yhat_size = cfg.integer("yhat_size") if yhat else None
    region = thm1_search(channel, cfg.grid, yhat_size)
    rows = [(pt.r1, pt.re, True, prov[0]) for pt, prov in zip(region.points, region.provenance)]
    if not rows:
        rows = [(0.0, 0.0, False, -1)]
    return ("r1", "re", "feasible", "provenance_index"), rows


def _cmd_af_sim(cfg):
    params = _model2_params(cfg)
    n = cfg.integer("n_samples")
    seed = 0 if cfg.seed is None else cfg.seed
    rep = af_simulate(SimConfig(params, params.p_max, n, seed))
    return (("xi_hat", "xi_formula", "relay_power_hat", "re_hat", "re_formula",
             "n_samples", "seed"),
            [(rep.xi_hat, rep.xi_formula, rep.relay_power_hat, rep.re_hat,
              rep.re_formula, rep.n_samples, rep.seed)])


HANDLERS: dict[str, Callable] = {
    "model1-region": _cmd_model1_region,
    "model1-capacity": _cmd_model1_capacity,
    "model2-rates": _cmd_model2_rates,
    "model2-power-sweep": _cmd_model2_power_sweep,
    "model2-b-sweep": _cmd_model2_b_sweep,
    "coverkim-curve": _cmd_coverkim_curve,
    "discrete-eval": _cmd_discrete_eval,
    "af-sim": _cmd_af_sim,
}


def render_csv(cfg: RunConfig, columns, rows) -> str:
    params = " ".join(f"{k}={cfg._resolved[k]}" for k in sorted(cfg._resolved))
    seed = "none" if cfg.seed is None else str(cfg.seed)
    buf = io.StringIO()
    buf.write(f"# relaysec {__version__} command={cfg.command} grid={cfg.grid} "
              f"seed={seed} {params}".rstrip() + "\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def run(cfg: RunConfig) -> str:
    """Validate, dispatch and return the CSV text (exceptions propagate)."""
    cfg.validate()
    columns, rows = HANDLERS[cfg.command](cfg)
    return render_csv(cfg, columns, rows)


def read_config_file(path) -> dict[str, str]:
    params = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (t.strip() for t in line.split("=", 1))
        params[key.replace("-", "_")] = value
    return params


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def parse_args(argv) -> RunConfig:
    parser = _Parser(prog="relaysec", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="key = value parameter file")
    parser.add_argument("--out", help="CSV output path (default: stdout)")
    parser.add_argument("--grid", type=int, help="grid resolution")
    parser.add_argument("--seed", type=int, help="PRNG seed (af-sim)")
    ns, extra = parser.parse_known_args(argv)

    params = read_config_file(ns.config) if ns.config else {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--"):
            raise ConfigError(f"unexpected argument: {tok}")
        key, sep, value = tok[2:].partition("=")
        if not sep:
            value = next(it, None)
            if value is None:
                raise ConfigError(f"missing value for key: {key}")
        params[key.replace("-", "_")] = value
    grid = ns.grid
    if grid is None and "grid" in params:
        grid = int(params.pop("grid"))
    seed = ns.seed
    if seed is None and "seed" in params:
        seed = int(params.pop("seed"))
    return RunConfig(ns.command, params, ns.out, grid, seed)


def main(argv=None) -> int:
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
        text = run(cfg)
    except (ConfigError, ChannelFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SearchSpaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, StructuralError, EstimationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
