"""Batch experiment harness emitting CSV: weight tables, convolution runs,
convergence studies, bound-validity checks, long-time growth fits, inequality
verification suites, and constant-chain reports.

Conventions shared by every subcommand:

* options may come from ``--config`` (plain ``key=value`` lines); explicit
  flags win over config entries;
* every CSV starts with a ``# trcq-kit <version> config=<hash>`` provenance
  line whose hash digests the effective option set, so identical inputs give
  byte-identical outputs;
* exit codes: 0 success, 1 assertion failure (violations, ratio > 1),
  2 usage/parse error, 3 degenerate data.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import math
import sys

import numpy as np

from . import __version__
from .bounds import CONSTANTS_CSV_HEADER, bound_rhs, derive_params, params_csv_row
from .convolution import (
    Grid,
    convolve_fft,
    convolve_naive,
    error_vs_exact,
    sample,
    signal_to_csv,
)
from .functions import exact_solution, parse_g
from .report import CSV_HEADER
from .symbols import from_spec, validate_growth
from .verify import (
    check_hyperbolic,
    check_lemma31,
    check_lemma32,
    check_lemma33,
    check_lemma42,
    check_prop32,
    check_prop34a,
    check_prop41,
)
from .weights import cq_weights_fft, weights_to_csv

__all__ = ["main"]

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3

MAX_STEPS = 1 << 22  # memory budget on the number of time steps

EXACT_PAIRS_HELP = (
    "supported (symbol, input) pairs with a closed-form reference: "
    "delay:<d> with any input; power:<mu> with mono:<p>; "
    "power:{-1,0,1} with poly<p>exp; decay:<a> with mono:<p>; "
    "decay:1 with poly<p>exp"
)


class CliError(Exception):
    """Usage or data error carrying the process exit code."""

    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


# --------------------------------------------------------------------------
# option conversion and config merging
# --------------------------------------------------------------------------


def _conv_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise CliError(f"expected an integer, got {text!r}") from None


def _conv_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise CliError(f"expected a real number, got {text!r}") from None


def _conv_float_list(text: str) -> "list[float]":
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise CliError(f"expected a comma-separated list of reals, got {text!r}")
    return [_conv_float(p) for p in parts]


_CONVERTERS = {
    "symbol": str,
    "g": str,
    "engine": str,
    "suite": str,
    "out": str,
    "kappa": _conv_float,
    "t_final": _conv_float,
    "t_min": _conv_float,
    "sigma": _conv_float,
    "alpha": _conv_float,
    "c": _conv_float,
    "mu": _conv_float,
    "n": _conv_int,
    "fft_size": _conv_int,
    "samples": _conv_int,
    "m": _conv_int,
    "seed": _conv_int,
    "kappa_list": _conv_float_list,
    "t_list": _conv_float_list,
}

# per-command option names (beyond the global out/seed/config) and defaults
_COMMAND_OPTIONS = {
    "weights": ["symbol", "kappa", "n", "fft_size"],
    "convolve": ["symbol", "g", "kappa", "t_final", "engine"],
    "converge": ["symbol", "g", "t_final", "kappa_list"],
    "bound": ["symbol", "g", "t_list", "kappa_list"],
    "longtime": ["symbol", "g", "kappa", "t_final", "t_min"],
    "verify": ["suite", "samples", "symbol", "g", "sigma", "alpha", "c", "kappa", "m"],
    "constants": ["mu"],
}

_DEFAULTS = {
    "weights": {},
    "convolve": {"engine": "fft"},
    "converge": {"t_final": 2.0, "kappa_list": [0.1, 0.05, 0.025, 0.0125, 0.00625]},
    "bound": {"t_list": [1.0, 2.0, 4.0, 8.0, 16.0], "kappa_list": [0.1, 0.05]},
    "longtime": {"kappa": 0.05, "t_final": 100.0, "t_min": 1.0},
    "verify": {"samples": 100000, "sigma": 1.0, "alpha": 2.0, "c": 1.0, "m": 1},
    "constants": {},
}


def _load_config(path: str) -> "dict[str, str]":
    """Parse ``key=value`` lines; ``#`` comments and blank lines are skipped."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read config file: {exc}") from None
    entries: "dict[str, str]" = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise CliError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        entries[key.strip().replace("-", "_")] = value.strip()
    return entries


def _effective_options(ns: argparse.Namespace) -> "dict[str, object]":
    """Merge CLI flags, config entries, and defaults (in that precedence)."""
    command = ns.command
    dests = _COMMAND_OPTIONS[command] + ["out", "seed"]
    config = _load_config(ns.config) if ns.config else {}
    unknown = sorted(set(config) - set(dests))
    if unknown:
        raise CliError(f"config keys not recognized by '{command}': {', '.join(unknown)}")

    defaults = dict(_DEFAULTS[command])
    defaults.setdefault("seed", 0)
    eff: "dict[str, object]" = {}
    for dest in dests:
        cli_value = getattr(ns, dest)
        if cli_value is not None:
            eff[dest] = _CONVERTERS[dest](cli_value)
        elif dest in config:
            eff[dest] = _CONVERTERS[dest](config[dest])
        else:
            eff[dest] = defaults.get(dest)
    return eff


def _canonical(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _fmt(value)
    if isinstance(value, (list, tuple)):
        return ";".join(_canonical(v) for v in value)
    return str(value)


def _provenance(command: str, eff: "dict[str, object]") -> str:
    """``# trcq-kit <version> config=<hash>`` over the effective option set."""
    payload = "\n".join(
        [command]
        + [f"{k}={_canonical(v)}" for k, v in sorted(eff.items()) if k != "out"]
    )
    digest = hashlib.sha256(payload.encode("utf-8")).hexdigest()[:12]
    return f"# trcq-kit {__version__} config={digest}"


def _write_output(out: "str | None", lines: "list[str]", echo: "tuple[str, ...]" = ()) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        for line in echo:
            print(line)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# shared pieces
# --------------------------------------------------------------------------


def _require(eff: "dict[str, object]", *names: str) -> None:
    missing = [n for n in names if eff.get(n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise CliError(f"missing required option(s): {flags} (flag or config entry)")


def _parse_symbol(spec: str):
    try:
        return from_spec(spec)
    except (ValueError, FileNotFoundError) as exc:
        raise CliError(f"bad symbol spec {spec!r}: {exc}") from None


def _parse_input(spec: str):
    try:
        return parse_g(spec)
    except ValueError as exc:
        raise CliError(f"bad input spec {spec!r}: {exc}") from None


def _steps_for(t_final: float, kappa: float) -> int:
    if t_final <= 0.0:
        raise CliError("t_final must be positive")
    steps = int(math.floor(t_final / kappa + 1e-9))
    if steps > MAX_STEPS:
        raise CliError(
            f"t_final/kappa = {t_final / kappa:.3g} exceeds the step budget {MAX_STEPS}"
        )
    return steps


def _check_kappa_list(kappas: "list[float]") -> "list[float]":
    if not kappas:
        raise CliError("kappa list is empty")
    for k in kappas:
        if not (0.0 < k <= 1.0):
            raise CliError(f"kappa values must lie in (0, 1], got {k:g}")
    if any(a <= b for a, b in zip(kappas, kappas[1:])):
        raise CliError("kappa list must be strictly decreasing")
    return kappas


def _run_discrete(F, g, kappa: float, t_final: float):
    """One TRCQ run: weights for F, input sampled on the grid, FFT engine."""
    grid = Grid(kappa=kappa, steps=_steps_for(t_final, kappa))
    table = cq_weights_fft(F, kappa, grid.steps)
    return convolve_fft(table, sample(g, grid))


def _exact_or_die(symbol_spec: str, g_spec: str):
    exact = exact_solution(symbol_spec, g_spec)
    if exact is None:
        raise CliError(
            f"no closed-form reference for symbol={symbol_spec!r} with "
            f"g={g_spec!r}; {EXACT_PAIRS_HELP}"
        )
    return exact


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_weights(eff: "dict[str, object]") -> int:
    _require(eff, "symbol", "kappa", "n")
    F = _parse_symbol(eff["symbol"])
    try:
        table = cq_weights_fft(F, eff["kappa"], eff["n"], fft_size=eff["fft_size"])
    except ValueError as exc:
        raise CliError(str(exc)) from None
    buf = io.StringIO()
    weights_to_csv(table, buf)
    acc = _fmt(table.accuracy_estimate)
    lines = [
        _provenance("weights", eff),
        f"# accuracy_estimate = {acc}",
    ] + buf.getvalue().splitlines()
    _write_output(eff["out"], lines, echo=(f"accuracy_estimate = {acc}",))
    return EXIT_OK


def cmd_convolve(eff: "dict[str, object]") -> int:
    _require(eff, "symbol", "g", "kappa", "t_final")
    engine = eff["engine"]
    if engine not in ("fft", "naive"):
        raise CliError(f"unknown engine {engine!r}; choose fft or naive")
    F = _parse_symbol(eff["symbol"])
    g = _parse_input(eff["g"])
    grid = Grid(kappa=eff["kappa"], steps=_steps_for(eff["t_final"], eff["kappa"]))
    table = cq_weights_fft(F, eff["kappa"], grid.steps)
    signal = sample(g, grid)
    result = convolve_fft(table, signal) if engine == "fft" else convolve_naive(table, signal)
    buf = io.StringIO()
    signal_to_csv(result, buf)
    lines = [_provenance("convolve", eff)] + buf.getvalue().splitlines()
    _write_output(eff["out"], lines)
    return EXIT_OK


def cmd_converge(eff: "dict[str, object]") -> int:
    _require(eff, "symbol", "g", "t_final", "kappa_list")
    kappas = _check_kappa_list(eff["kappa_list"])
    exact = _exact_or_die(eff["symbol"], eff["g"])
    F = _parse_symbol(eff["symbol"])
    g = _parse_input(eff["g"])

    errors = []
    for kappa in kappas:
        result = _run_discrete(F, g, kappa, eff["t_final"])
        errors.append(float(error_vs_exact(result, exact).max()))

    rows = []
    for i, (kappa, err) in enumerate(zip(kappas, errors)):
        if i == 0:
            eoc = ""
        elif errors[i - 1] <= 1e-12 or err <= 1e-12:
            eoc = "exact"  # both at roundoff level; the ratio is meaningless
        else:
            eoc = _fmt(math.log(errors[i - 1] / err) / math.log(kappas[i - 1] / kappa))
        rows.append(f"{_fmt(kappa)},{_fmt(err)},{eoc}")
    lines = [_provenance("converge", eff), "kappa,error_at_t,eoc"] + rows
    _write_output(eff["out"], lines)
    return EXIT_OK


def cmd_bound(eff: "dict[str, object]") -> int:
    _require(eff, "symbol", "g", "t_list", "kappa_list")
    kappas = _check_kappa_list(eff["kappa_list"])
    t_list = sorted(set(float(t) for t in eff["t_list"]))
    if not t_list or t_list[0] <= 0.0:
        raise CliError("t list must contain positive times")
    F = _parse_symbol(eff["symbol"])
    if F.mu < 0.0:
        raise CliError("the a-priori bound applies to mu >= 0 symbols only")
    exact = _exact_or_die(eff["symbol"], eff["g"])
    g = _parse_input(eff["g"])
    try:
        params = derive_params(F.mu)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if params.beta > g.max_order:
        raise CliError(
            f"input {g.name} supplies derivatives to order {g.max_order}; "
            f"the bound needs order {params.beta}"
        )
    certificate = validate_growth(F, samples=20000, seed=int(eff["seed"]))
    if certificate.violations:
        raise CliError(
            f"growth certificate of {F.name} failed validation "
            f"({certificate.violations} violations); the bound is meaningless",
            EXIT_DEGENERATE,
        )

    t_max = t_list[-1]
    per_kappa = {}
    for kappa in kappas:
        result = _run_discrete(F, g, kappa, t_max)
        per_kappa[kappa] = error_vs_exact(result, exact)

    rows = []
    worst_ratio = 0.0
    for t in t_list:
        for kappa in sorted(kappas):
            errs = per_kappa[kappa]
            n_t = min(int(math.floor(t / kappa + 1e-9)), len(errs) - 1)
            observed = float(errs[: n_t + 1].max())
            rhs = bound_rhs(F, g, kappa, t, params)
            if observed == 0.0:
                ratio = 0.0
            elif rhs == 0.0:
                ratio = math.inf
            else:
                ratio = observed / rhs
            worst_ratio = max(worst_ratio, ratio)
            rows.append(f"{_fmt(t)},{_fmt(kappa)},{_fmt(observed)},{_fmt(rhs)},{_fmt(ratio)}")
    lines = [
        _provenance("bound", eff),
        "t,kappa,observed_error,bound_rhs,ratio",
    ] + rows
    _write_output(eff["out"], lines, echo=(f"worst ratio = {_fmt(worst_ratio)}",))
    return EXIT_OK if worst_ratio <= 1.0 else EXIT_ASSERTION


def cmd_longtime(eff: "dict[str, object]") -> int:
    _require(eff, "symbol", "g", "kappa", "t_final")
    kappa, t_final, t_min = eff["kappa"], eff["t_final"], eff["t_min"]
    if not (0.0 < kappa <= 1.0):
        raise CliError(f"kappa must lie in (0, 1], got {kappa:g}")
    exact = _exact_or_die(eff["symbol"], eff["g"])
    F = _parse_symbol(eff["symbol"])
    g = _parse_input(eff["g"])

    times = []
    t = float(t_final)
    while t >= max(float(t_min), 2.0 * kappa):
        times.append(t)
        t *= 0.5
    times.reverse()
    if not times:
        raise CliError("t grid is empty; lower --t-min or raise --t-final")

    result = _run_discrete(F, g, kappa, t_final)
    errs = error_vs_exact(result, exact)
    rows = []
    points = []
    for t in times:
        n_t = min(int(math.floor(t / kappa + 1e-9)), len(errs) - 1)
        err = float(errs[n_t])  # pointwise at the last node <= t
        rows.append(f"{_fmt(t)},{_fmt(err)}")
        if err > 0.0:
            points.append((t, err))

    lines = [_provenance("longtime", eff), "t,error"] + rows
    if len(points) < 2:
        lines.append("# fit degenerate: need at least two positive errors")
        _write_output(eff["out"], lines, echo=("fit degenerate",))
        return EXIT_DEGENERATE

    ts = np.array([p[0] for p in points])
    log_err = np.log(np.array([p[1] for p in points]))
    rate_r = float(np.polyfit(ts, log_err, 1)[0])
    slope_p = float(np.polyfit(np.log(ts), log_err, 1)[0])
    lines.append(f"# exp_rate_r = {_fmt(rate_r)}")
    lines.append(f"# loglog_slope_p = {_fmt(slope_p)}")
    _write_output(
        eff["out"],
        lines,
        echo=(f"exp_rate_r = {_fmt(rate_r)}", f"loglog_slope_p = {_fmt(slope_p)}"),
    )
    return EXIT_OK


def cmd_verify(eff: "dict[str, object]") -> int:
    _require(eff, "suite")
    suite = eff["suite"]
    samples, seed = int(eff["samples"]), int(eff["seed"])
    if suite == "hyperbolic":
        report = check_hyperbolic(samples, seed)
    elif suite == "lemma31":
        report = check_lemma31(samples, seed)
    elif suite == "prop32":
        report = check_prop32(samples, seed)
    elif suite == "lemma32":
        report = check_lemma32(samples, seed)
    elif suite == "prop41":
        F = _parse_symbol(eff["symbol"] or "delay:1.0")
        report = check_prop41(F, samples, seed)
    elif suite == "lemma42":
        kappa = eff["kappa"] if eff["kappa"] is not None else 0.5
        report = check_lemma42(eff["sigma"], eff["alpha"], eff["c"], kappa)
    elif suite == "lemma33":
        g = _parse_input(eff["g"] or "poly5exp")
        report = check_lemma33(g, eff["sigma"])
    elif suite == "prop34a":
        g = _parse_input(eff["g"] or "poly6exp")
        kappa = eff["kappa"] if eff["kappa"] is not None else 0.1
        report = check_prop34a(g, eff["sigma"], int(eff["m"]), kappa)
    else:
        known = "hyperbolic, lemma31, prop32, lemma32, lemma33, prop34a, lemma42, prop41"
        raise CliError(f"unknown suite {suite!r}; known suites: {known}")

    lines = [_provenance("verify", eff), CSV_HEADER, report.csv_row()]
    summary = (
        f"{report.suite}: samples={report.samples} violations={report.violations} "
        f"worst_margin={_fmt(report.worst_margin)}"
    )
    _write_output(eff["out"], lines, echo=(summary,))
    return EXIT_OK if report.violations == 0 else EXIT_ASSERTION


def cmd_constants(eff: "dict[str, object]") -> int:
    _require(eff, "mu")
    try:
        params = derive_params(float(eff["mu"]))
    except ValueError as exc:
        raise CliError(str(exc)) from None
    row = params_csv_row(params)
    lines = [_provenance("constants", eff), CONSTANTS_CSV_HEADER, row]
    _write_output(eff["out"], lines, echo=(row,))
    return EXIT_OK


_HANDLERS = {
    "weights": cmd_weights,
    "convolve": cmd_convolve,
    "converge": cmd_converge,
    "bound": cmd_bound,
    "longtime": cmd_longtime,
    "verify": cmd_verify,
    "constants": cmd_constants,
}


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output CSV path (default: stdout)")
    common.add_argument("--seed", help="RNG seed (default 0)")
    common.add_argument("--config", help="key=value config file; flags win")

    parser = argparse.ArgumentParser(
        prog="trcq",
        description="Trapezoidal-rule convolution quadrature toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weights", parents=[common], help="export a CQ weight table")
    p.add_argument("--symbol", help="symbol spec, e.g. power:1 or delay:1.0")
    p.add_argument("--kappa", help="time step in (0, 1]")
    p.add_argument("--n", help="largest weight index N")
    p.add_argument("--fft-size", dest="fft_size", help="contour length (power of two)")

    p = sub.add_parser("convolve", parents=[common], help="run a discrete convolution")
    p.add_argument("--symbol", help="symbol spec")
    p.add_argument("--g", help="input spec, e.g. poly5exp or mono:7")
    p.add_argument("--kappa", help="time step in (0, 1]")
    p.add_argument("--t-final", dest="t_final", help="final time")
    p.add_argument("--engine", help="fft (default) or naive")

    p = sub.add_parser("converge", parents=[common], help="convergence study (EOC)")
    p.add_argument("--symbol", help="symbol spec (needs a closed-form reference)")
    p.add_argument("--g", help="input spec")
    p.add_argument("--t-final", dest="t_final", help="error horizon (default 2)")
    p.add_argument(
        "--kappa-list",
        dest="kappa_list",
        help="comma-separated decreasing steps (default 0.1,...,0.00625)",
    )

    p = sub.add_parser("bound", parents=[common], help="error vs a-priori bound")
    p.add_argument("--symbol", help="mu >= 0 symbol spec with a closed-form reference")
    p.add_argument("--g", help="input spec")
    p.add_argument("--t-list", dest="t_list", help="comma-separated times (default 1,2,4,8,16)")
    p.add_argument(
        "--kappa-list", dest="kappa_list", help="comma-separated steps (default 0.1,0.05)"
    )

    p = sub.add_parser("longtime", parents=[common], help="long-time error growth fits")
    p.add_argument("--symbol", help="symbol spec with a closed-form reference")
    p.add_argument("--g", help="input spec")
    p.add_argument("--kappa", help="fixed step (default 0.05)")
    p.add_argument("--t-final", dest="t_final", help="largest time (default 100)")
    p.add_argument("--t-min", dest="t_min", help="smallest grid time (default 1)")

    p = sub.add_parser("verify", parents=[common], help="run an inequality suite")
    p.add_argument("--suite", help="suite name (see docs)")
    p.add_argument("--samples", help="sample count (default 100000)")
    p.add_argument("--symbol", help="symbol for prop41 (default delay:1.0)")
    p.add_argument("--g", help="input for lemma33/prop34a")
    p.add_argument("--sigma", help="line abscissa (default 1)")
    p.add_argument("--alpha", help="moment exponent for lemma42 (default 2)")
    p.add_argument("--c", help="radius parameter for lemma42 (default 1)")
    p.add_argument("--kappa", help="step for lemma42/prop34a")
    p.add_argument("--m", help="power for prop34a (default 1)")

    p = sub.add_parser("constants", parents=[common], help="theorem parameter/constant row")
    p.add_argument("--mu", help="symbol growth exponent (mu >= 0)")

    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed its diagnostic
        code = exc.code
        return EXIT_USAGE if code not in (0, None) else int(code or 0)
    try:
        eff = _effective_options(ns)
        return _HANDLERS[ns.command](eff)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
