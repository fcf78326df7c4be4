"""Command line front end: config parsing, CSV emission, figure presets.

Subcommands
-----------
evolve          run one correlation time series and write it as CSV
figure          emit the dataset behind one of the built-in presets fig1..fig7
critical-times  print the analytic event times for a mixture parameter
compare         report exact-vs-limit engine deviations for a configuration

Configs are flat ``key=value`` files with ``#`` comments.  Exit codes:
0 success, 1 runtime or I/O failure, 2 usage or config parse error.  The
environment variable DEPHASE_LOG (error, info, debug) sets diagnostic
verbosity on stderr.
"""
from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .correlations import CorrelationSample, correlation_timeseries
from .limits import (
    asymptotic_correlations,
    discord_sudden_change_time,
    limit_f_pair,
    second_period_change_time,
    sudden_death_time,
)
from .model import ModelParams, UnsupportedConfigurationError, exact_f_pair
from .states import BellDiagonalState, InvalidStateError, make_bell_diagonal, mixture_state

__all__ = [
    "ConfigParseError",
    "EngineComparison",
    "RunConfig",
    "compare_engines",
    "main",
    "parse_config",
    "reproduce_figure",
    "run_timeseries",
    "serialize_config",
]

logger = logging.getLogger("dephase")

_BELL_TRIPLES = {
    "phi+": (1.0, -1.0, 1.0),
    "phi-": (-1.0, 1.0, 1.0),
    "psi+": (1.0, 1.0, -1.0),
    "psi-": (-1.0, -1.0, -1.0),
}
_STATE_KINDS = ("phi+", "phi-", "psi+", "psi-", "bd", "mixture")
_ENGINES = ("exact", "limit")
_FIG_IDS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7")

_ALL_KEYS = {
    "N", "q", "a", "x1", "xN", "spacing", "v", "xA", "xB",
    "omegaA", "omegaB", "state", "c1", "c2", "c3", "sign",
    "engine", "t_max", "steps",
}
_STATE_PARAM_KEYS = {"c1", "c2", "c3", "sign"}


class ConfigParseError(ValueError):
    """Config rejection, carrying the offending line number when known."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class RunConfig:
    """One fully resolved simulation run.

    Bell presets and mixtures are normalised to their correlation triple
    at construction, so two configs compare equal exactly when they
    describe the same run.  ``output`` is CLI plumbing and ignored in
    comparisons.
    """

    n_spins: int
    coupling_angle: float
    x1: float
    xA: float
    xB: float
    state_kind: str
    t_max: float
    steps: int
    spacing: float = 1.0
    velocity: float = 1.0
    omegaA: float = 0.0
    omegaB: float = 0.0
    c1: float = 0.0
    c2: float = 0.0
    c3: float = 0.0
    sign: int = 1
    engine: str = "limit"
    output: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.state_kind not in _STATE_KINDS:
            raise ValueError(f"unknown state kind {self.state_kind!r}")
        if self.engine not in _ENGINES:
            raise ValueError(f"engine must be one of {_ENGINES}, got {self.engine!r}")
        if not isinstance(self.steps, int) or self.steps < 2:
            raise ValueError(f"steps must be an integer >= 2, got {self.steps!r}")
        if not self.t_max > 0:
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        if self.state_kind in _BELL_TRIPLES:
            c1, c2, c3 = _BELL_TRIPLES[self.state_kind]
            object.__setattr__(self, "c1", c1)
            object.__setattr__(self, "c2", c2)
            object.__setattr__(self, "c3", c3)
            object.__setattr__(self, "sign", 1)
        elif self.state_kind == "mixture":
            if self.sign not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
            object.__setattr__(self, "c1", float(self.sign))
            object.__setattr__(self, "c2", -float(self.sign) * self.c3)
        else:
            object.__setattr__(self, "sign", 1)
        # both raise on invalid combinations
        self.model_params()
        self.initial_state()

    def model_params(self) -> ModelParams:
        return ModelParams(
            n_spins=self.n_spins,
            coupling_angle=self.coupling_angle,
            x1=self.x1,
            xA=self.xA,
            xB=self.xB,
            spacing=self.spacing,
            velocity=self.velocity,
            omegaA=self.omegaA,
            omegaB=self.omegaB,
        )

    def initial_state(self) -> BellDiagonalState:
        if self.state_kind == "mixture":
            return mixture_state(self.c3, self.sign)
        return make_bell_diagonal(self.c1, self.c2, self.c3)


def parse_config(text: str) -> RunConfig:
    """Parse a ``key=value`` config document into a validated RunConfig."""
    entries: dict[str, str] = {}
    where: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigParseError(lineno, f"expected key=value, got {body!r}")
        key, _, value = body.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _ALL_KEYS:
            raise ConfigParseError(lineno, f"unknown key {key!r}")
        if not value:
            raise ConfigParseError(lineno, f"empty value for key {key!r}")
        entries[key] = value
        where[key] = lineno

    def fail(key: str, message: str):
        raise ConfigParseError(where.get(key, 0), message)

    def get_float(key: str) -> float:
        try:
            return float(entries[key])
        except ValueError:
            fail(key, f"cannot parse {key}={entries[key]!r} as a number")

    def get_int(key: str) -> int:
        try:
            return int(entries[key])
        except ValueError:
            fail(key, f"cannot parse {key}={entries[key]!r} as an integer")

    required = ["N", "x1", "xA", "xB", "state", "t_max", "steps"]
    missing = [k for k in required if k not in entries]
    if "q" not in entries and "a" not in entries:
        missing.append("q (or a)")
    if missing:
        raise ConfigParseError(0, "required keys missing: " + ", ".join(missing))

    n_spins = get_int("N")
    if n_spins < 1:
        fail("N", f"N must be >= 1, got {n_spins}")

    if "q" in entries and "a" in entries:
        fail("a", "give either q or a, not both")
    if "q" in entries:
        q = get_float("q")
        if not 0.0 <= q <= 1.0:
            fail("q", f"q must lie in [0, 1], got {q}")
        coupling_angle = math.asin(math.sqrt(q))
    else:
        coupling_angle = get_float("a")

    x1 = get_float("x1")
    if "xN" in entries and "spacing" in entries:
        fail("xN", "give either xN or spacing, not both")
    if "xN" in entries:
        if n_spins < 2:
            fail("xN", "xN needs at least two spins to define a spacing")
        spacing = (get_float("xN") - x1) / (n_spins - 1)
        if not spacing > 0:
            fail("xN", f"xN={entries['xN']} does not lie past x1={x1}")
    else:
        spacing = get_float("spacing") if "spacing" in entries else 1.0
        if not spacing > 0:
            fail("spacing", f"spacing must be positive, got {spacing}")

    velocity = get_float("v") if "v" in entries else 1.0
    if not velocity > 0:
        fail("v", f"velocity must be positive, got {velocity}")

    xA = get_float("xA")
    if not xA < x1:
        fail("xA", f"xA={xA} must lie before the array start x1={x1}")
    xB = get_float("xB")
    if not xB < x1:
        fail("xB", f"xB={xB} must lie before the array start x1={x1}")

    state_kind = entries["state"]
    if state_kind not in _STATE_KINDS:
        fail("state", f"state must be one of {', '.join(_STATE_KINDS)}, got {state_kind!r}")
    allowed = {"bd": {"c1", "c2", "c3"}, "mixture": {"c3", "sign"}}.get(state_kind, set())
    for key in sorted(_STATE_PARAM_KEYS - allowed):
        if key in entries:
            fail(key, f"key {key!r} is not allowed with state={state_kind}")

    c1 = c2 = c3 = 0.0
    sign = 1
    if state_kind == "bd":
        for key in ("c1", "c2", "c3"):
            if key not in entries:
                fail("state", f"state=bd requires key {key}")
        c1, c2, c3 = get_float("c1"), get_float("c2"), get_float("c3")
        try:
            make_bell_diagonal(c1, c2, c3)
        except InvalidStateError as exc:
            fail("state", str(exc))
    elif state_kind == "mixture":
        if "c3" not in entries:
            fail("state", "state=mixture requires key c3")
        c3 = get_float("c3")
        if not abs(c3) < 1.0:
            fail("c3", f"mixture parameter must satisfy |c3| < 1, got {c3}")
        if "sign" in entries:
            sign = get_int("sign")
            if sign not in (1, -1):
                fail("sign", f"sign must be +1 or -1, got {sign}")

    engine = entries.get("engine", "limit")
    if engine not in _ENGINES:
        fail("engine", f"engine must be 'exact' or 'limit', got {engine!r}")

    t_max = get_float("t_max")
    if not t_max > 0:
        fail("t_max", f"t_max must be positive, got {t_max}")
    steps = get_int("steps")
    if steps < 2:
        fail("steps", f"steps must be >= 2, got {steps}")

    return RunConfig(
        n_spins=n_spins,
        coupling_angle=coupling_angle,
        x1=x1,
        xA=xA,
        xB=xB,
        state_kind=state_kind,
        t_max=t_max,
        steps=steps,
        spacing=spacing,
        velocity=velocity,
        omegaA=get_float("omegaA") if "omegaA" in entries else 0.0,
        omegaB=get_float("omegaB") if "omegaB" in entries else 0.0,
        c1=c1,
        c2=c2,
        c3=c3,
        sign=sign,
        engine=engine,
    )


def serialize_config(cfg: RunConfig) -> str:
    """Emit a config document that parses back to an equal RunConfig."""
    lines = [
        f"N={cfg.n_spins}",
        f"a={cfg.coupling_angle!r}",
        f"x1={cfg.x1!r}",
        f"spacing={cfg.spacing!r}",
        f"v={cfg.velocity!r}",
        f"xA={cfg.xA!r}",
        f"xB={cfg.xB!r}",
        f"omegaA={cfg.omegaA!r}",
        f"omegaB={cfg.omegaB!r}",
        f"engine={cfg.engine}",
        f"t_max={cfg.t_max!r}",
        f"steps={cfg.steps}",
        f"state={cfg.state_kind}",
    ]
    if cfg.state_kind == "bd":
        lines += [f"c1={cfg.c1!r}", f"c2={cfg.c2!r}", f"c3={cfg.c3!r}"]
    elif cfg.state_kind == "mixture":
        lines += [f"c3={cfg.c3!r}", f"sign={cfg.sign}"]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------

def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _samples_csv(samples: list[CorrelationSample]) -> str:
    lines = ["t,C,D,I,J,absF1,absF2"]
    for s in samples:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (s.t, s.concurrence, s.discord, s.mutual_info, s.classical_corr, s.abs_f1, s.abs_f2)
            )
        )
    return "\n".join(lines) + "\n"


def run_timeseries(cfg: RunConfig) -> str:
    """Evaluate the configured run and return the CSV text.

    Header ``t,C,D,I,J,absF1,absF2``; one row per grid point, 12
    significant digits, byte-deterministic for a given config.
    """
    grid = np.linspace(0.0, cfg.t_max, cfg.steps)
    samples = correlation_timeseries(cfg.model_params(), cfg.initial_state(), cfg.engine, grid)
    logger.debug("time series: %d samples, engine=%s", len(samples), cfg.engine)
    return _samples_csv(samples)


@dataclass(frozen=True)
class EngineComparison:
    """Engine deviation report, log-domain, over one time grid.

    ``*_rel_max`` are relative deviations of ln|f| where the limit value
    is nonzero; ``*_abs_max`` absolute deviations at the remaining points.
    """

    f1_rel_max: float
    f1_abs_max: float
    f2_rel_max: float
    f2_abs_max: float


def _log_modulus(value: complex) -> float:
    mod = abs(value)
    return math.log(mod) if mod > 0.0 else -math.inf


def compare_engines(cfg: RunConfig) -> EngineComparison:
    """Largest log-domain deviations between the exact and limit engines."""
    params = cfg.model_params()
    rel = {"f1": 0.0, "f2": 0.0}
    absd = {"f1": 0.0, "f2": 0.0}
    for t in np.linspace(0.0, cfg.t_max, cfg.steps):
        ex = exact_f_pair(params, float(t))
        li = limit_f_pair(params, float(t))
        for key, e, l in (("f1", ex.f1, li.f1), ("f2", ex.f2, li.f2)):
            ln_e, ln_l = _log_modulus(e), _log_modulus(l)
            if ln_l == 0.0:
                absd[key] = max(absd[key], abs(ln_e - ln_l))
            else:
                rel[key] = max(rel[key], abs(ln_e - ln_l) / abs(ln_l))
    return EngineComparison(
        f1_rel_max=rel["f1"],
        f1_abs_max=absd["f1"],
        f2_rel_max=rel["f2"],
        f2_abs_max=absd["f2"],
    )


# ---------------------------------------------------------------------------
# figure presets
# ---------------------------------------------------------------------------

_FIG_T = np.linspace(0.0, 1300.0, 1301)
_SURFACE_C3 = np.linspace(-0.99, 0.99, 81)
_SWEEP_C3 = np.linspace(-0.99, 0.99, 199)


def _fig_model(xB: float = 0.0) -> ModelParams:
    return ModelParams.from_flip_probability(
        0.005, n_spins=1001, x1=100.0, xA=0.0, xB=xB
    )


def _series(params: ModelParams, initial: BellDiagonalState) -> list[CorrelationSample]:
    return correlation_timeseries(params, initial, "limit", _FIG_T)


def _fig1():
    samples = _series(_fig_model(), make_bell_diagonal(1.0, -1.0, 1.0))
    files = [("fig1.csv", _samples_csv(samples))]

    def draw(plt, path):
        ts = [s.t for s in samples]
        plt.figure(figsize=(6, 4))
        plt.plot(ts, [s.concurrence for s in samples], label="C")
        plt.plot(ts, [s.discord for s in samples], "--", label="D")
        plt.xlabel("t")
        plt.legend()
        plt.savefig(path, dpi=150)
        plt.close()

    return files, draw


def _fig2():
    rows = ["c3,C0,Cinf,D0,Dinf"]
    data = []
    for c3 in _SWEEP_C3:
        a = asymptotic_correlations(float(c3))
        data.append((c3, a.c_initial, a.c_final, a.d_initial, a.d_final))
        rows.append(",".join(_fmt(v) for v in data[-1]))
    files = [("fig2.csv", "\n".join(rows) + "\n")]

    def draw(plt, path):
        arr = np.array(data)
        plt.figure(figsize=(6, 4))
        for idx, label in ((1, "C(0)"), (2, "C(inf)"), (3, "D(0)"), (4, "D(inf)")):
            plt.plot(arr[:, 0], arr[:, idx], label=label)
        plt.xlabel("c3")
        plt.legend()
        plt.savefig(path, dpi=150)
        plt.close()

    return files, draw


def _mixture_surface(fig_name: str, xB: float):
    params = _fig_model(xB)
    rows = ["c3,t,C,D"]
    surface_c = []
    surface_d = []
    for c3 in _SURFACE_C3:
        samples = _series(params, mixture_state(float(c3), 1))
        surface_c.append([s.concurrence for s in samples])
        surface_d.append([s.discord for s in samples])
        for s in samples:
            rows.append(",".join(_fmt(v) for v in (c3, s.t, s.concurrence, s.discord)))
    files = [(f"{fig_name}.csv", "\n".join(rows) + "\n")]

    def draw(plt, path):
        fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
        for ax, surface, title in ((axes[0], surface_c, "C"), (axes[1], surface_d, "D")):
            mesh = ax.pcolormesh(_FIG_T, _SURFACE_C3, np.array(surface), shading="auto")
            ax.set_xlabel("t")
            ax.set_title(title)
            fig.colorbar(mesh, ax=ax)
        axes[0].set_ylabel("c3")
        fig.savefig(path, dpi=150)
        plt.close(fig)

    return files, draw


def _discord_cuts(fig_name: str, xB: float, c3_values: tuple[float, ...]):
    params = _fig_model(xB)
    rows = ["c3,t,D"]
    curves = {}
    for c3 in c3_values:
        samples = _series(params, mixture_state(c3, 1))
        curves[c3] = samples
        for s in samples:
            rows.append(",".join(_fmt(v) for v in (c3, s.t, s.discord)))
    files = [(f"{fig_name}.csv", "\n".join(rows) + "\n")]

    def draw(plt, path):
        plt.figure(figsize=(6, 4))
        for c3, samples in curves.items():
            plt.plot([s.t for s in samples], [s.discord for s in samples], label=f"c3={c3}")
        plt.xlabel("t")
        plt.ylabel("D")
        plt.legend()
        plt.savefig(path, dpi=150)
        plt.close()

    return files, draw


def _fig5():
    params = _fig_model(xB=-200.0)
    rows = ["state,t,C,D"]
    curves = {}
    for label, triple in (("phi", (1.0, -1.0, 1.0)), ("psi", (1.0, 1.0, -1.0))):
        samples = _series(params, make_bell_diagonal(*triple))
        curves[label] = samples
        for s in samples:
            rows.append(f"{label}," + ",".join(_fmt(v) for v in (s.t, s.concurrence, s.discord)))
    files = [("fig5.csv", "\n".join(rows) + "\n")]

    def draw(plt, path):
        plt.figure(figsize=(6, 4))
        for label, samples in curves.items():
            ts = [s.t for s in samples]
            plt.plot(ts, [s.concurrence for s in samples], label=f"C ({label})")
            plt.plot(ts, [s.discord for s in samples], "--", label=f"D ({label})")
        plt.xlabel("t")
        plt.legend()
        plt.savefig(path, dpi=150)
        plt.close()

    return files, draw


_FIG_BUILDERS = {
    "fig1": _fig1,
    "fig2": _fig2,
    "fig3": lambda: _mixture_surface("fig3", 0.0),
    "fig4": lambda: _discord_cuts("fig4", 0.0, (-0.6, 0.5, 0.7)),
    "fig5": _fig5,
    "fig6": lambda: _mixture_surface("fig6", -200.0),
    "fig7": lambda: _discord_cuts("fig7", -200.0, (-0.8, -0.5, 0.2, 0.7)),
}


def reproduce_figure(figure_id: str, out_dir, plot: bool = False) -> list[Path]:
    """Write the CSV dataset(s) behind one preset; optionally render a PNG.

    Plot rendering never touches the CSV bytes, so repeated runs stay
    byte-identical regardless of the flag.
    """
    if figure_id not in _FIG_BUILDERS:
        raise ValueError(f"unknown figure id {figure_id!r}, expected one of {_FIG_IDS}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files, draw = _FIG_BUILDERS[figure_id]()
    written = []
    for name, text in files:
        path = out / name
        path.write_text(text, encoding="utf-8")
        logger.info("wrote %s", path)
        written.append(path)
    if plot:
        try:
            import matplotlib

            matplotlib.use("Agg")
            import matplotlib.pyplot as plt
        except ImportError as exc:
            raise RuntimeError("--plot requires matplotlib (install the 'plot' extra)") from exc
        png = out / f"{figure_id}.png"
        draw(plt, png)
        logger.info("wrote %s", png)
        written.append(png)
    return written


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _setup_logging() -> None:
    env = os.environ.get("DEPHASE_LOG", "").strip().lower()
    level = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
        env, logging.WARNING
    )
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.handlers.clear()
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False


def _load_config(path: str) -> RunConfig:
    text = Path(path).read_text(encoding="utf-8")
    return parse_config(text)


def _cmd_evolve(args) -> int:
    cfg = replace(_load_config(args.config), output=args.out)
    logger.debug("config: %s", cfg)
    Path(args.out).write_text(run_timeseries(cfg), encoding="utf-8")
    logger.info("wrote %d rows to %s", cfg.steps, args.out)
    return 0


def _cmd_figure(args) -> int:
    written = reproduce_figure(args.figure, args.out_dir, plot=args.plot)
    for path in written:
        print(path)
    return 0


def _cmd_critical_times(args) -> int:
    cfg = _load_config(args.config)
    params = cfg.model_params()
    c3 = args.c3
    if not abs(c3) < 1.0:
        print(f"error: --c3 must satisfy |c3| < 1, got {c3}", file=sys.stderr)
        return 2

    def show(value) -> str:
        return _fmt(value) if value is not None else "none"

    if params.xA == params.xB:
        print(f"t0={show(sudden_death_time(params, c3))}")
        print(f"tc={show(discord_sudden_change_time(params, c3))}")
        print("tbar=n/a")
    else:
        print("t0=n/a")
        print("tc=n/a")
        try:
            print(f"tbar={show(second_period_change_time(params, c3))}")
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    return 0


def _cmd_compare(args) -> int:
    cfg = _load_config(args.config)
    report = compare_engines(cfg)
    print(f"f1_rel_max={_fmt(report.f1_rel_max)}")
    print(f"f1_abs_max={_fmt(report.f1_abs_max)}")
    print(f"f2_rel_max={_fmt(report.f2_rel_max)}")
    print(f"f2_abs_max={_fmt(report.f2_abs_max)}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dephase",
        description="Decoherence dynamics of two qubits crossing a 1D spin array.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="run a configured time series and write CSV")
    p.add_argument("--config", required=True, help="path to a key=value config file")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("figure", help="emit the dataset behind a built-in preset")
    p.add_argument("figure", choices=_FIG_IDS)
    p.add_argument("--out-dir", required=True, help="directory for the CSV (and PNG) output")
    p.add_argument("--plot", action="store_true", help="also render a PNG (needs matplotlib)")
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("critical-times", help="print analytic event times for a mixture parameter")
    p.add_argument("--config", required=True, help="path to a key=value config file")
    p.add_argument("--c3", required=True, type=float, help="mixture parameter, |c3| < 1")
    p.set_defaults(func=_cmd_critical_times)

    p = sub.add_parser("compare", help="report exact-vs-limit deviations for a config")
    p.add_argument("--config", required=True, help="path to a key=value config file")
    p.set_defaults(func=_cmd_compare)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    _setup_logging()
    try:
        return args.func(args)
    except ConfigParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidStateError, UnsupportedConfigurationError, ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
