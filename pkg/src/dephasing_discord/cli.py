"""Command-line interface: trajectory curves, parameter surfaces, crossing
times, preset figure datasets, and a cross-path verification report.

Output is CSV with 17-significant-digit values and LF line endings, written
to stdout unless --out is given.  Exit codes: 0 success, 1 verification
breach, 2 invalid configuration, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

import numpy as np

from .bath import gamma_closed, gamma_quadrature
from .core import (
    ConsistencyError,
    DomainError,
    NonPhysicalState,
    NoRootInRange,
    QuadratureFailure,
    QubitPair,
    Reservoir,
    SystemConfig,
    XStateParams,
)
from .correlations import (
    ClassicalMethod,
    classical_bruteforce,
    classical_closed,
    discord_plateau,
)
from .dfe import critical_time_closed, critical_time_solve, scan_trajectory
from .evolution import evolve

_CSV_HEADER = ("t", "d_a", "d_b", "mutual_info", "classical", "discord", "regime")
_FIGURE_T_MAX = 30.0
_FIGURE_T_POINTS = 300
_FIGURE_BETA_RANGE = (1.0, 10.0)
_FIGURE_BETA_POINTS = 50
_VERIFY_SEED = 20120705
_SWEEP_PARAMS = ("beta", "beta_a", "beta_b", "eta", "eta_a", "eta_b", "kappa")

_DEFAULTS: dict[str, float | int | str] = {
    "eta_a": 0.6,
    "eta_b": 0.6,
    "omega_c_a": 1.0,
    "omega_c_b": 1.0,
    "beta_a": 5.0,
    "beta_b": 5.0,
    "c1": 1.0,
    "c2": 0.4,
    "c3": -0.4,
    "omega_A": 0.0,
    "omega_B": 0.0,
    "t_max": 30.0,
    "points": 300,
    "method": "closed",
}
_FLOAT_KEYS = (
    "eta_a",
    "eta_b",
    "omega_c_a",
    "omega_c_b",
    "beta_a",
    "beta_b",
    "kappa",
    "c1",
    "c2",
    "c3",
    "omega_A",
    "omega_B",
    "t_max",
)


class RunMethod(Enum):
    CLOSED = "closed"
    BRUTEFORCE = "bruteforce"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class RunSpec:
    """A fully resolved run: physics configuration plus grid and method."""

    command: str
    config: SystemConfig
    t_max: float
    points: int
    method: RunMethod
    sweep: tuple[str, tuple[float, ...]] | None = None
    figure: str | None = None


def _parse_config_file(path: str) -> dict[str, float | int | str]:
    """Flat key=value settings; '#' starts a comment, blank lines ignored."""
    text = Path(path).read_text()
    values: dict[str, float | int | str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _DEFAULTS and key != "kappa":
            raise DomainError(f"{path}:{lineno}: unknown key {key!r}")
        if key in values:
            raise DomainError(f"{path}:{lineno}: duplicate key {key!r}")
        values[key] = value
    if "beta_b" in values and "kappa" in values:
        raise DomainError(f"{path}: beta_b and kappa are mutually exclusive")
    out: dict[str, float | int | str] = {}
    for key, value in values.items():
        if key == "points":
            out[key] = int(value)
        elif key == "method":
            if value not in (m.value for m in RunMethod):
                raise DomainError(f"{path}: unknown method {value!r}")
            out[key] = value
        elif key in _FLOAT_KEYS:
            out[key] = float(value)
    return out


def _resolve_settings(args: argparse.Namespace) -> dict[str, float | int | str]:
    """Apply precedence flags > config file > defaults.

    beta_b and kappa form one logical setting (the bath-B temperature), so an
    explicit flag for either supersedes both file keys.
    """
    settings: dict[str, float | int | str] = dict(_DEFAULTS)
    settings["kappa"] = None
    if getattr(args, "config", None):
        file_values = _parse_config_file(args.config)
        if "kappa" in file_values:
            settings["beta_b"] = None
        settings.update(file_values)
    flag_values = {
        key: getattr(args, key)
        for key in (*_FLOAT_KEYS, "points", "method")
        if getattr(args, key, None) is not None
    }
    if "beta_b" in flag_values and "kappa" in flag_values:
        raise DomainError("--beta-b and --kappa are mutually exclusive")
    if "kappa" in flag_values:
        settings["beta_b"] = None
    elif "beta_b" in flag_values:
        settings["kappa"] = None
    settings.update(flag_values)
    if settings.get("kappa") is not None:
        settings["beta_b"] = float(settings["kappa"]) * float(settings["beta_a"])
    return settings


def _build_config(settings: dict) -> SystemConfig:
    return SystemConfig(
        qubits=QubitPair(float(settings["omega_A"]), float(settings["omega_B"])),
        bath_a=Reservoir(
            float(settings["eta_a"]), float(settings["omega_c_a"]), float(settings["beta_a"])
        ),
        bath_b=Reservoir(
            float(settings["eta_b"]), float(settings["omega_c_b"]), float(settings["beta_b"])
        ),
        state=XStateParams(
            float(settings["c1"]), float(settings["c2"]), float(settings["c3"])
        ),
    )


def _build_runspec(args: argparse.Namespace) -> RunSpec:
    settings = _resolve_settings(args)
    sweep = None
    if args.command == "surface":
        param = args.sweep_param
        count = int(args.sweep_count)
        if count < 2:
            raise DomainError(f"--sweep-count must be >= 2, got {count}")
        start, stop = float(args.sweep_start), float(args.sweep_stop)
        if not (math.isfinite(start) and math.isfinite(stop)) or start <= 0 or stop <= 0:
            raise DomainError("sweep range must be positive and finite")
        sweep = (param, tuple(float(v) for v in np.linspace(start, stop, count)))
    points = int(settings["points"])
    if points < 2:
        raise DomainError(f"points must be >= 2, got {points}")
    t_max = float(settings["t_max"])
    if not t_max > 0.0:
        raise DomainError(f"t_max must be > 0, got {t_max}")
    return RunSpec(
        command=args.command,
        config=_build_config(settings),
        t_max=t_max,
        points=points,
        method=RunMethod(settings["method"]),
        sweep=sweep,
    )


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _curve_rows(config: SystemConfig, t_max: float, points: int, method: RunMethod):
    kwargs = {}
    if method is RunMethod.BRUTEFORCE:
        kwargs["classical_method"] = ClassicalMethod.BRUTEFORCE
    from .bath import GammaMethod

    if method is RunMethod.QUADRATURE:
        kwargs["gamma_method"] = GammaMethod.QUADRATURE
    for p in scan_trajectory(config, t_max, points, **kwargs):
        yield (
            _fmt(p.t),
            _fmt(p.d_a),
            _fmt(p.d_b),
            _fmt(p.mutual_info),
            _fmt(p.classical),
            _fmt(p.discord),
            p.regime.value,
        )


def _with_sweep_value(config: SystemConfig, param: str, value: float) -> SystemConfig:
    bath_a, bath_b = config.bath_a, config.bath_b
    if param in ("beta", "beta_a"):
        bath_a = replace(bath_a, beta=value)
    if param in ("beta", "beta_b"):
        bath_b = replace(bath_b, beta=value)
    if param in ("eta", "eta_a"):
        bath_a = replace(bath_a, eta=value)
    if param in ("eta", "eta_b"):
        bath_b = replace(bath_b, eta=value)
    if param == "kappa":
        bath_b = replace(bath_b, beta=value * bath_a.beta)
    return replace(config, bath_a=bath_a, bath_b=bath_b)


def run_curve(spec: RunSpec) -> str:
    lines = [",".join(_CSV_HEADER)]
    for row in _curve_rows(spec.config, spec.t_max, spec.points, spec.method):
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def run_surface(spec: RunSpec) -> str:
    param, values = spec.sweep
    lines = [",".join((param, *_CSV_HEADER))]
    for value in values:
        config = _with_sweep_value(spec.config, param, value)
        for row in _curve_rows(config, spec.t_max, spec.points, spec.method):
            lines.append(",".join((_fmt(value), *row)))
    return "\n".join(lines) + "\n"


def run_critical_time(spec: RunSpec) -> str:
    header = "t_p,method,t_lo,t_hi,residual"
    result = critical_time_solve(spec.config)
    if result is None:
        return header + "\n,none,,,\n"
    row = ",".join(
        (
            _fmt(result.t_p),
            result.method.value,
            _fmt(result.bracket[0]),
            _fmt(result.bracket[1]),
            _fmt(result.residual),
        )
    )
    return header + "\n" + row + "\n"


def _figure_base_config(eta: float, beta: float) -> SystemConfig:
    return SystemConfig(
        qubits=QubitPair(0.0, 0.0),
        bath_a=Reservoir(eta, 1.0, beta),
        bath_b=Reservoir(eta, 1.0, beta),
        state=XStateParams(1.0, 0.4, -0.4),
    )


def run_figure(figure: str) -> str:
    """Preset dataset grids.

    fig2: discord surface over (beta, t) at eta = 0.2, equal reservoirs.
    fig3: three curves at eta in {0.2, 0.6, 0.9}, beta = 5.
    fig4: three curves at |c3| in {0.2, 0.4, 0.8} (c1 = 1, c2 = -c3),
          eta = 0.2, beta = 5.
    fig5: three surfaces over (beta_a, t) at kappa in {0.2, 1, 5} with
          beta_b = kappa*beta_a, eta = 0.12.
    All grids use t in [0, 30] with 300 points; beta grids span [1, 10]
    with 50 points.
    """
    t_max, t_points = _FIGURE_T_MAX, _FIGURE_T_POINTS
    betas = np.linspace(*_FIGURE_BETA_RANGE, _FIGURE_BETA_POINTS)
    lines: list[str] = []
    if figure == "fig2":
        lines.append(",".join(("beta", *_CSV_HEADER)))
        for beta in betas:
            config = _figure_base_config(0.2, float(beta))
            for row in _curve_rows(config, t_max, t_points, RunMethod.CLOSED):
                lines.append(",".join((_fmt(beta), *row)))
    elif figure == "fig3":
        lines.append(",".join(("eta", *_CSV_HEADER)))
        for eta in (0.2, 0.6, 0.9):
            config = _figure_base_config(eta, 5.0)
            for row in _curve_rows(config, t_max, t_points, RunMethod.CLOSED):
                lines.append(",".join((_fmt(eta), *row)))
    elif figure == "fig4":
        lines.append(",".join(("c3", *_CSV_HEADER)))
        for magnitude in (0.2, 0.4, 0.8):
            config = replace(
                _figure_base_config(0.2, 5.0),
                state=XStateParams(1.0, magnitude, -magnitude),
            )
            for row in _curve_rows(config, t_max, t_points, RunMethod.CLOSED):
                lines.append(",".join((_fmt(-magnitude), *row)))
    elif figure == "fig5":
        lines.append(",".join(("kappa", "beta_a", *_CSV_HEADER)))
        for kappa in (0.2, 1.0, 5.0):
            for beta_a in betas:
                config = _figure_base_config(0.12, float(beta_a))
                config = replace(
                    config, bath_b=replace(config.bath_b, beta=kappa * float(beta_a))
                )
                for row in _curve_rows(config, t_max, t_points, RunMethod.CLOSED):
                    lines.append(",".join((_fmt(kappa), _fmt(beta_a), *row)))
    else:
        raise DomainError(f"unknown figure {figure!r}")
    return "\n".join(lines) + "\n"


def _verify_checks(debug_prefactor_8: bool):
    rng = np.random.default_rng(_VERIFY_SEED)
    checks = []

    # Dephasing exponent: quadrature route against the summed closed form.
    prefactor = 8.0 if debug_prefactor_8 else 2.0
    worst = 0.0
    ratio_lo, ratio_hi = math.inf, -math.inf
    for _ in range(50):
        reservoir = Reservoir(
            eta=float(rng.uniform(0.05, 1.0)),
            omega_c=1.0,
            beta=math.inf if rng.uniform() < 0.25 else float(rng.uniform(1.0, 50.0)),
        )
        t = float(rng.uniform(0.0, 20.0))
        quad = gamma_quadrature(reservoir, t, prefactor=prefactor).gamma
        closed = gamma_closed(reservoir, t).gamma
        worst = max(worst, abs(quad - closed) / max(closed, 1e-3))
        if closed > 1e-6:
            ratio_lo = min(ratio_lo, quad / closed)
            ratio_hi = max(ratio_hi, quad / closed)
    checks.append(("gamma quadrature vs closed form", 50, worst, 1e-6))
    ratio_note = (
        f"gamma ratio quadrature/closed in [{ratio_lo:.6g}, {ratio_hi:.6g}]"
        if math.isfinite(ratio_lo)
        else None
    )

    # Classical correlation: angle search against the branch formula.
    worst = 0.0
    for _ in range(100):
        c3 = float(rng.uniform(-1.0, 1.0))
        a0 = float(rng.uniform(-(1.0 + c3), 1.0 + c3))
        g0 = float(rng.uniform(-(1.0 - c3), 1.0 - c3))
        config = SystemConfig(
            qubits=QubitPair(float(rng.uniform(0, 10)), float(rng.uniform(0, 10))),
            bath_a=Reservoir(
                float(rng.uniform(0.05, 1.0)),
                1.0,
                math.inf if rng.uniform() < 0.3 else float(rng.uniform(1.0, 50.0)),
            ),
            bath_b=Reservoir(
                float(rng.uniform(0.05, 1.0)),
                1.0,
                math.inf if rng.uniform() < 0.3 else float(rng.uniform(1.0, 50.0)),
            ),
            state=XStateParams((a0 + g0) / 2.0, (g0 - a0) / 2.0, c3),
        )
        rho = evolve(config, float(rng.uniform(0.0, 10.0)))
        closed, _ = classical_closed(rho)
        brute, _ = classical_bruteforce(rho, config.qubits)
        worst = max(worst, abs(brute - closed))
    checks.append(("classical bruteforce vs closed form", 100, worst, 1e-6))

    # Crossing time: bisection against the zero-temperature formula.
    worst = 0.0
    combos = 0
    for eta in (0.1, 0.2, 0.5):
        for magnitude in (0.2, 0.4, 0.8):
            config = SystemConfig(
                qubits=QubitPair(0.0, 0.0),
                bath_a=Reservoir(eta, 1.0, math.inf),
                bath_b=Reservoir(eta, 1.0, math.inf),
                state=XStateParams(1.0, magnitude, -magnitude),
            )
            solved = critical_time_solve(config).t_p
            exact = critical_time_closed(eta, -magnitude, 1.0)
            worst = max(worst, abs(solved - exact) / exact)
            combos += 1
    checks.append(("critical time bisection vs closed form", combos, worst, 1e-9))

    # Frozen window: trajectory discord against the constant value.
    config = _build_config(dict(_DEFAULTS))
    t_p = critical_time_solve(config).t_p
    plateau = discord_plateau(config.state.c3)
    worst = 0.0
    for point in scan_trajectory(config, 0.999 * t_p, 256):
        worst = max(worst, abs(point.discord - plateau))
    checks.append(("frozen discord vs plateau value", 256, worst, 1e-12))
    return checks, ratio_note


def run_verify(debug_prefactor_8: bool = False) -> tuple[str, int]:
    checks, ratio_note = _verify_checks(debug_prefactor_8)
    name_width = max(len(name) for name, *_ in checks)
    lines = [
        f"{'check':<{name_width}}  {'draws':>5}  {'max deviation':>13}  {'tolerance':>9}  status"
    ]
    failed = False
    for name, draws, worst, tol in checks:
        ok = worst <= tol
        failed = failed or not ok
        lines.append(
            f"{name:<{name_width}}  {draws:>5}  {worst:>13.3e}  {tol:>9.0e}  "
            + ("pass" if ok else "FAIL")
        )
    if ratio_note is not None and failed:
        lines.append(ratio_note)
    lines.append("overall: " + ("FAIL" if failed else "pass"))
    return "\n".join(lines) + "\n", (1 if failed else 0)


def _add_physics_flags(parser: argparse.ArgumentParser) -> None:
    add = parser.add_argument
    add("--eta-a", dest="eta_a", type=float, help="coupling of reservoir A")
    add("--eta-b", dest="eta_b", type=float, help="coupling of reservoir B")
    add("--omega-c-a", dest="omega_c_a", type=float, help="cutoff of reservoir A")
    add("--omega-c-b", dest="omega_c_b", type=float, help="cutoff of reservoir B")
    add("--beta-a", dest="beta_a", type=float, help="inverse temperature of reservoir A (inf for T=0)")
    add("--beta-b", dest="beta_b", type=float, help="inverse temperature of reservoir B (excludes --kappa)")
    add("--kappa", dest="kappa", type=float, help="temperature ratio T_A/T_B, i.e. beta_b = kappa*beta_a")
    add("--c1", dest="c1", type=float, help="initial-state coefficient c1")
    add("--c2", dest="c2", type=float, help="initial-state coefficient c2")
    add("--c3", dest="c3", type=float, help="initial-state coefficient c3")
    add("--omega-A", dest="omega_A", type=float, help="splitting of qubit A")
    add("--omega-B", dest="omega_B", type=float, help="splitting of qubit B")
    add("--t-max", dest="t_max", type=float, help="end of the time grid")
    add("--points", dest="points", type=int, help="number of grid points")
    add(
        "--method",
        dest="method",
        choices=[m.value for m in RunMethod],
        help="closed: analytic everywhere; bruteforce: classical correlation by "
        "angle search; quadrature: dephasing exponent by integration",
    )
    add("--config", dest="config", help="key=value settings file")
    add("--out", dest="out", help="output path (default: stdout)")


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dephasing-discord",
        description="Exact dephasing dynamics and quantum discord for two qubits "
        "in independent Ohmic reservoirs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    curve = sub.add_parser("curve", help="correlation dynamics on a time grid")
    _add_physics_flags(curve)

    surface = sub.add_parser("surface", help="curves swept over one bath parameter")
    _add_physics_flags(surface)
    surface.add_argument("--sweep-param", choices=_SWEEP_PARAMS, default="beta")
    surface.add_argument("--sweep-start", type=float, default=1.0)
    surface.add_argument("--sweep-stop", type=float, default=10.0)
    surface.add_argument("--sweep-count", type=int, default=50)

    critical = sub.add_parser("critical-time", help="solve D_A*D_B = |c3|")
    _add_physics_flags(critical)

    figure = sub.add_parser("figure", help="emit a preset dataset grid")
    figure.add_argument("figure", choices=("fig2", "fig3", "fig4", "fig5"))
    figure.add_argument("--out", dest="out", help="output path (default: stdout)")

    verify = sub.add_parser("verify", help="cross-path consistency report")
    verify.add_argument("--out", dest="out", help="output path (default: stdout)")
    verify.add_argument(
        "--debug-prefactor-8",
        action="store_true",
        help="negative control: inject the conventional x4-off prefactor into "
        "the quadrature route and watch the report fail",
    )
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = _make_parser().parse_args(argv)
    try:
        if args.command == "curve":
            _emit(run_curve(_build_runspec(args)), args.out)
        elif args.command == "surface":
            _emit(run_surface(_build_runspec(args)), args.out)
        elif args.command == "critical-time":
            _emit(run_critical_time(_build_runspec(args)), args.out)
        elif args.command == "figure":
            _emit(run_figure(args.figure), args.out)
        elif args.command == "verify":
            text, code = run_verify(args.debug_prefactor_8)
            _emit(text, args.out)
            return code
    except (DomainError, NonPhysicalState, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (QuadratureFailure, NoRootInRange, ConsistencyError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
