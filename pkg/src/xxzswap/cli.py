"""Command-line front end; every command writes CSV to stdout or ``--out``.

Option precedence: built-in defaults < ``--config`` file < explicit flags.
The config file is flat ``key=value`` text with ``#`` comments; keys are the
long flag names without the leading dashes (``t-end`` and ``t_end`` both work).
"""

from __future__ import annotations

import argparse
import io
import logging
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import evolution, field_error, numeric_oracle, swap_analysis, validation
from .errors import XXZSwapError
from .qlinalg import INPUT_NORM_TOL, NORM_TOL, State2
from .sampling import random_qubit
from .swap_analysis import Feasibility, OpKind
from .xxz_model import ModelParams, eigensystem

log = logging.getLogger("xxzswap")

COMMANDS = ("eigensystem", "evolve", "purity-scan", "swap-times", "tau", "error", "fig1", "sweep", "validate")


class UsageError(Exception):
    """Bad command line or config file; maps to exit status 2."""


def parse_complex(text: str) -> complex:
    """``re:im`` or a bare real."""
    parts = str(text).strip().split(":")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"expected re:im, got {text!r}")


def parse_grid(text: str) -> list[float]:
    """Comma list ``a,b,c`` or ``start:stop:count`` (inclusive linspace)."""
    text = str(text).strip()
    if ":" in text:
        start, stop, count = text.split(":")
        n = int(count)
        if n < 1:
            raise ValueError("grid count must be >= 1")
        return [float(v) for v in np.linspace(float(start), float(stop), n)]
    values = [float(v) for v in text.split(",") if v.strip()]
    if not values:
        raise ValueError("empty grid")
    return values


def _positive_int(text) -> int:
    value = int(text)
    if value < 1:
        raise ValueError(f"must be >= 1, got {value}")
    return value


# name -> (type, default, help); names double as config-file keys
GLOBAL_OPTIONS = {
    "J": (float, 1.0, "planar exchange coupling"),
    "lambda": (float, 1.0, "z anisotropy"),
    "B": (float, 0.0, "mean field (>= 0)"),
    "b": (float, 0.0, "field inhomogeneity"),
    "alpha1": (parse_complex, 1 + 0j, "spin-1 amplitude on |1>, re:im"),
    "alpha2": (parse_complex, 0j, "spin-1 amplitude on |0>, re:im"),
    "beta1": (parse_complex, 0j, "spin-2 amplitude on |1>, re:im"),
    "beta2": (parse_complex, 1 + 0j, "spin-2 amplitude on |0>, re:im"),
    "seed": (int, 42, "random seed"),
    "out": (str, None, "output CSV path (default stdout)"),
}

COMMAND_OPTIONS = {
    "t-start": (float, 0.0, "first time on the grid"),
    "t-end": (float, 2 * math.pi, "last time on the grid"),
    "steps": (_positive_int, 200, "number of time intervals"),
    "max-den": (_positive_int, None, "denominator cap for rational lambda (env XXZSWAP_MAX_DEN)"),
    "k-max": (_positive_int, 3, "number of periods listed"),
    "lambdas": (parse_grid, None, "lambda grid: a,b,c or start:stop:count"),
    "t-max": (float, None, "tau search window (default 2 n pi / |J|)"),
    "grid-points": (_positive_int, 100_000, "tau grid points"),
    "deltas": (parse_grid, [0.05, 0.1, 0.2], "delta list"),
    "delta": (float, 0.1, "delta for fig1"),
    "grid": (_positive_int, 41, "fig1 grid size per axis"),
    "trials": (_positive_int, 200, "Monte-Carlo trials"),
}

COMMAND_FLAGS = {
    "eigensystem": (),
    "evolve": ("t-start", "t-end", "steps"),
    "purity-scan": ("t-start", "t-end", "steps"),
    "swap-times": ("max-den", "k-max"),
    "tau": ("max-den", "lambdas", "t-max", "grid-points"),
    "error": ("deltas", "max-den"),
    "fig1": ("delta", "grid"),
    "sweep": ("max-den", "lambdas", "deltas", "trials", "grid-points"),
    "validate": ("trials", "grid-points"),
}


@dataclass
class RunConfig:
    command: str
    params: ModelParams
    alpha: State2
    beta: State2
    seed: int = 42
    out: str | None = None
    options: dict = field(default_factory=dict)

    def opt(self, name):
        return self.options[name]


def _key(name: str) -> str:
    return name.replace("_", "-")


def _read_config(path: str) -> dict[str, str]:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path}: {exc.strerror}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"--config {path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[_key(key)] = value
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xxzswap", description="Swap-gate analysis for the two-qubit XXZ model.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    for command in COMMANDS:
        sp = sub.add_parser(command, argument_default=argparse.SUPPRESS)
        for name, (_, default, help_text) in GLOBAL_OPTIONS.items():
            sp.add_argument(f"--{name}", dest=name, help=f"{help_text} (default {default})")
        sp.add_argument("--config", dest="config", help="key=value config file")
        for name in COMMAND_FLAGS[command]:
            _, default, help_text = COMMAND_OPTIONS[name]
            sp.add_argument(f"--{name}", dest=name, help=f"{help_text} (default {default})")
    return parser


def _convert(name, raw, spec):
    kind = spec[0]
    try:
        return kind(raw)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"--{name}: invalid value {raw!r} ({exc})") from exc


def _qubit(name1, name2, up, down) -> State2:
    norm = math.sqrt(abs(up) ** 2 + abs(down) ** 2)
    if abs(norm - 1) > INPUT_NORM_TOL:
        raise UsageError(f"--{name1}/--{name2}: amplitudes have norm {norm:.12g}, expected 1")
    if abs(norm - 1) > NORM_TOL:
        log.warning("renormalizing --%s/--%s (norm %.15g)", name1, name2, norm)
    return State2(up, down)


def parse_config(argv: list[str]) -> RunConfig:
    """Parse ``argv`` (without the program name) into a :class:`RunConfig`.

    Raises :class:`UsageError` naming the offending flag.
    """
    parser = build_parser()
    if not argv:
        raise UsageError("missing command; choose one of: " + ", ".join(COMMANDS))
    if argv[0] not in COMMANDS and not argv[0].startswith("-"):
        raise UsageError(f"unknown command {argv[0]!r}; choose one of: " + ", ".join(COMMANDS))
    ns = parser.parse_args(argv)
    if ns.command is None:
        raise UsageError("missing command; choose one of: " + ", ".join(COMMANDS))
    given = {k: v for k, v in vars(ns).items() if k not in ("command", "config")}
    allowed = dict(GLOBAL_OPTIONS)
    allowed.update({n: COMMAND_OPTIONS[n] for n in COMMAND_FLAGS[ns.command]})

    raw = {}
    if getattr(ns, "config", None):
        for key, value in _read_config(ns.config).items():
            if key not in allowed:
                raise UsageError(f"--config: unknown key {key!r} for command {ns.command}")
            raw[key] = value
    raw.update(given)

    values = {name: spec[1] for name, spec in allowed.items()}
    for name, value in raw.items():
        values[name] = _convert(name, value, allowed[name])

    try:
        params = ModelParams(J=values["J"], lam=values["lambda"], B=values["B"], b=values["b"])
    except XXZSwapError as exc:
        raise UsageError(f"model parameters: {exc}") from exc
    alpha = _qubit("alpha1", "alpha2", values["alpha1"], values["alpha2"])
    beta = _qubit("beta1", "beta2", values["beta1"], values["beta2"])
    options = {n: values[n] for n in COMMAND_FLAGS[ns.command]}
    if options.get("max-den", 0) is None:
        options["max-den"] = swap_analysis.default_max_denominator()
    if "t-end" in options and options["t-end"] < options["t-start"]:
        raise UsageError("--t-end must be >= --t-start")
    return RunConfig(
        command=ns.command,
        params=params,
        alpha=alpha,
        beta=beta,
        seed=values["seed"],
        out=values["out"],
        options=options,
    )


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    value = float(value)
    if value == 0:
        value = 0.0  # no "-0"
    return f"{value:.12g}"


class CsvWriter:
    def __init__(self, header):
        self.buf = io.StringIO()
        self.width = len(header)
        self.buf.write(",".join(header) + "\n")

    def row(self, *values):
        assert len(values) == self.width
        self.buf.write(",".join(fmt(v) for v in values) + "\n")

    def getvalue(self) -> str:
        return self.buf.getvalue()


def _time_grid(cfg: RunConfig) -> np.ndarray:
    return np.linspace(cfg.opt("t-start"), cfg.opt("t-end"), cfg.opt("steps") + 1)


def cmd_eigensystem(cfg: RunConfig) -> tuple[str, int]:
    es = eigensystem(cfg.params)
    w = CsvWriter(
        ["index", "energy", "c00_re", "c00_im", "c01_re", "c01_im", "c10_re", "c10_im", "c11_re", "c11_im"]
    )
    for i, (e, psi) in enumerate(zip(es.energies, es.states), 1):
        w.row(i, e, *[part for c in psi for part in (c.real, c.imag)])
    return w.getvalue(), 0


def cmd_evolve(cfg: RunConfig) -> tuple[str, int]:
    ts = _time_grid(cfg)
    uu, dd, ud = evolution.reduced_entries(cfg.alpha, cfg.beta, cfg.params, ts)
    purity = uu * dd - np.abs(ud) ** 2
    w = CsvWriter(["t", "rho_uu", "rho_dd", "rho_ud_re", "rho_ud_im", "purity"])
    for row in zip(ts, uu, dd, ud.real, ud.imag, purity):
        w.row(*row)
    return w.getvalue(), 0


def cmd_purity_scan(cfg: RunConfig) -> tuple[str, int]:
    ts = _time_grid(cfg)
    purity = evolution.purity_functional(cfg.alpha, cfg.beta, cfg.params, ts)
    w = CsvWriter(["t", "purity", "is_pure"])
    for t, value in zip(ts, purity):
        w.row(t, value, value < evolution.PURITY_TOL)
    return w.getvalue(), 0


def cmd_swap_times(cfg: RunConfig) -> tuple[str, int]:
    p = cfg.params
    if p.b != 0:
        raise XXZSwapError("swap-times is a homogeneous-field analysis; set --b 0")
    report = swap_analysis.classify(p, max_denominator=cfg.opt("max-den"), with_tau=False)
    r = report.rational
    w = CsvWriter(
        [
            "lambda", "m", "n", "sign", "residual", "class", "k",
            "return_time", "return_phase_re", "return_phase_im",
            "swap_time", "swap_phase_re", "swap_phase_im",
        ]
    )
    for k in range(1, cfg.opt("k-max") + 1):
        t_ret = swap_analysis.return_times(p, r, k)
        ph_ret = swap_analysis.phase_factor(r, k, OpKind.RETURN, p.B, t_ret)
        t_swap = ph_swap = None
        if report.kind is Feasibility.EXACT_SWAP:
            t_swap = swap_analysis.swap_times(p, r, k)
            ph_swap = swap_analysis.phase_factor(r, k, OpKind.SWAP, p.B, t_swap)
        w.row(
            p.lam, r.m, r.n, r.sign, r.residual, report.kind.value, k,
            t_ret, ph_ret.real, ph_ret.imag,
            t_swap, None if ph_swap is None else ph_swap.real, None if ph_swap is None else ph_swap.imag,
        )
    return w.getvalue(), 0


def cmd_tau(cfg: RunConfig) -> tuple[str, int]:
    lambdas = cfg.opt("lambdas") or [cfg.params.lam]
    J = cfg.params.J
    w = CsvWriter(["lambda", "m", "n", "class", "t_max", "tau", "t_argmin"])
    for lam in lambdas:
        report = swap_analysis.classify(cfg.params.replace(lam=lam), max_denominator=cfg.opt("max-den"), with_tau=False)
        t_max = cfg.opt("t-max") or 2 * report.rational.n * math.pi / abs(J)
        value, t_min = swap_analysis.tau(lam, J, t_max, cfg.opt("grid-points"))
        w.row(lam, report.rational.m, report.rational.n, report.kind.value, t_max, value, t_min)
    return w.getvalue(), 0


def cmd_error(cfg: RunConfig) -> tuple[str, int]:
    w = CsvWriter(
        [
            "delta", "branch", "c", "d_re", "d_im", "theta", "p1", "p2", "p3",
            "p_success", "delta_exact", "delta_quadratic", "bound_ok",
        ]
    )
    for delta in cfg.opt("deltas"):
        rep = field_error.error_report(cfg.alpha, cfg.beta, delta)
        _, ok = field_error.check_bound(cfg.alpha, cfg.beta, delta)
        d = rep.d_term
        w.row(
            delta, rep.branch, rep.c_term,
            None if d is None else d.real, None if d is None else d.imag,
            rep.theta, rep.p1, rep.p2, rep.p3,
            rep.p_success, rep.delta_exact, rep.delta_quadratic, ok,
        )
    return w.getvalue(), 0


def cmd_fig1(cfg: RunConfig) -> tuple[str, int]:
    surface = field_error.fig1_surface(cfg.opt("delta"), cfg.opt("grid"))
    w = CsvWriter(["alpha1_sq", "beta1_sq", "delta_ratio"])
    for row in surface:
        w.row(*row)
    return w.getvalue(), 0


def cmd_sweep(cfg: RunConfig) -> tuple[str, int]:
    """Feasibility and Monte-Carlo field error over a lambda x delta grid."""
    rng = np.random.default_rng(cfg.seed)
    lambdas = cfg.opt("lambdas") or [cfg.params.lam]
    trials = cfg.opt("trials")
    J, B = cfg.params.J, cfg.params.B
    w = CsvWriter(
        [
            "lambda", "m", "n", "class", "swap_time", "tau", "delta",
            "max_error_chain", "max_error_oracle", "bound_ok",
        ]
    )
    for lam in lambdas:
        base = ModelParams(J=J, lam=lam, B=B)
        report = swap_analysis.classify(base, max_denominator=cfg.opt("max-den"), grid_points=cfg.opt("grid-points"))
        r = report.rational
        for delta in cfg.opt("deltas"):
            chain = oracle = None
            ok = None
            if report.kind is Feasibility.EXACT_SWAP:
                p = base.replace(b=delta * J)
                t = field_error.field_swap_time(p, r)
                phase = swap_analysis.phase_factor(r, 1, OpKind.SWAP, B, t)
                chain = oracle = -math.inf
                for _ in range(trials):
                    a, b = random_qubit(rng), random_qubit(rng)
                    chain = max(chain, field_error.error_report(a, b, delta).delta_exact)
                    oracle = max(oracle, numeric_oracle.swap_error_numeric(a, b, p, t, phase))
                ok = max(chain, oracle) <= delta**2 + 2 * abs(delta) ** 3
            w.row(lam, r.m, r.n, report.kind.value, report.swap_time, report.tau, delta, chain, oracle, ok)
    return w.getvalue(), 0


def cmd_validate(cfg: RunConfig) -> tuple[str, int]:
    checks = validation.run_all(cfg.opt("trials"), cfg.seed, cfg.opt("grid-points"))
    w = CsvWriter(["check", "value", "tolerance", "passed"])
    for c in checks:
        w.row(c.name, c.value, c.tolerance, c.passed)
    return w.getvalue(), 0 if all(c.passed for c in checks) else 1


HANDLERS = {
    "eigensystem": cmd_eigensystem,
    "evolve": cmd_evolve,
    "purity-scan": cmd_purity_scan,
    "swap-times": cmd_swap_times,
    "tau": cmd_tau,
    "error": cmd_error,
    "fig1": cmd_fig1,
    "sweep": cmd_sweep,
    "validate": cmd_validate,
}


def run(cfg: RunConfig) -> int:
    try:
        text, status = HANDLERS[cfg.command](cfg)
    except XXZSwapError as exc:
        print(f"xxzswap {cfg.command}: error: {exc}", file=sys.stderr)
        return 1
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="xxzswap: %(levelname)s: %(message)s")
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"usage: xxzswap {{{','.join(COMMANDS)}}} [options]", file=sys.stderr)
        print(f"xxzswap: error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
