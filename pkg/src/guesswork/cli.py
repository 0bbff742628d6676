"""Command-line surface.

Subcommands: entropy, scgf, ratefn, growth, compare, exact, approx,
simulate, figure.  Scalar results print as JSON (default) or two-column
CSV (--format csv); the figure subcommand emits its CSV dataset.  Exit
codes: 0 success, 2 usage error, 1 computation error.  Inputs are in
nats; --bits converts displayed entropies and rates to base 2.

--config takes a JSON object whose keys mirror the long flag names
(underscores for dashes); explicit flags win over config values.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .approx import approx_pmf, approx_subordinated_pmf, compare_exact_vs_approx
from .figures import FIGURE_IDS, emit_figure_data
from .noise import parse_channel
from .oracle import exact_guesswork_moment, exact_mean_log_guesswork, exact_subordinated_moment, simulate_attack
from .source import parse_probs
from .subordination import (
    compare_channels,
    growth_rates,
    subordinated_rate_dual,
    subordinated_rate_inf,
    subordinated_scgf,
)

_LN2 = math.log(2.0)


def _probs_flag(text: str):
    try:
        return parse_probs(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _channel_flag(text: str):
    try:
        return parse_channel(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _alpha_flag(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse {text!r} as a number") from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse {text!r} as an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


_CONVERTERS = {
    "probs": _probs_flag,
    "channel": _channel_flag,
    "channel_a": _channel_flag,
    "channel_b": _channel_flag,
    "alpha": _alpha_flag,
    "x": float,
    "k": _positive_int,
    "n": int,
    "trials": _positive_int,
    "seed": int,
    "figure": str,
    "format": str,
    "out": str,
    "bits": bool,
    "compare": bool,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="guesswork",
        description="Guesswork over erasure channels: asymptotics, exact oracles, figures.",
    )
    parser.add_argument("--version", action="version", version=f"guesswork {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, source=False, channel=False, channel_required=False):
        p.add_argument("--config", default=argparse.SUPPRESS, help="JSON file of flag defaults")
        p.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
        p.add_argument("--out", default=argparse.SUPPRESS, help="write output here instead of stdout")
        p.add_argument("--bits", action="store_true", default=argparse.SUPPRESS)
        if source:
            p.add_argument("--probs", type=_probs_flag, default=argparse.SUPPRESS,
                           help="comma-separated character probabilities")
        if channel:
            p.add_argument("--channel", type=_channel_flag, default=argparse.SUPPRESS,
                           help="det:<mu> | bern:<p> | markov:<a>,<b>",
                           required=False)
        p.set_defaults(_channel_required=channel_required)

    p = sub.add_parser("entropy", help="Renyi entropy of the source")
    common(p, source=True)
    p.add_argument("--alpha", type=_alpha_flag, default=argparse.SUPPRESS,
                   help="entropy order in [0, inf] (default 1)")

    p = sub.add_parser("scgf", help="guesswork sCGF, composed with a channel if given")
    common(p, source=True, channel=True)
    p.add_argument("--alpha", type=_alpha_flag, default=argparse.SUPPRESS)

    p = sub.add_parser("ratefn", help="rate function, subordinated if a channel is given")
    common(p, source=True, channel=True)
    p.add_argument("--x", type=float, required=True, help="log-guesswork per character, nats")

    p = sub.add_parser("growth", help="mean-log and log-mean growth rates")
    common(p, source=True, channel=True, channel_required=True)

    p = sub.add_parser("compare", help="growth rates of two channels over one source")
    common(p, source=True)
    p.add_argument("--channel-a", type=_channel_flag, default=argparse.SUPPRESS, dest="channel_a")
    p.add_argument("--channel-b", type=_channel_flag, default=argparse.SUPPRESS, dest="channel_b")

    p = sub.add_parser("exact", help="exact finite-length subordinated moments")
    common(p, source=True, channel=True, channel_required=True)
    p.add_argument("-k", type=_positive_int, required=True, help="string length")
    p.add_argument("--alpha", type=_alpha_flag, default=argparse.SUPPRESS)

    p = sub.add_parser("approx", help="rate-function pmf approximation")
    common(p, source=True, channel=True)
    p.add_argument("-k", type=_positive_int, required=True)
    p.add_argument("-n", type=int, default=argparse.SUPPRESS, help="rank to approximate")
    p.add_argument("--compare", action="store_true", default=argparse.SUPPRESS,
                   help="compare against the exact pmf on a log-spaced rank grid")

    p = sub.add_parser("simulate", help="Monte-Carlo attack simulation")
    common(p, source=True, channel=True, channel_required=True)
    p.add_argument("-k", type=_positive_int, required=True)
    p.add_argument("--trials", type=_positive_int, default=argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = sub.add_parser("figure", help="emit a figure dataset as CSV")
    common(p)
    p.add_argument("--figure", choices=FIGURE_IDS, required=True)
    return parser


_HARD_DEFAULTS = {
    "alpha": 1.0,
    "format": "json",
    "out": None,
    "bits": False,
    "trials": 10_000,
    "seed": 0,
    "compare": False,
}


def _merge_config(parser: argparse.ArgumentParser, ns: argparse.Namespace) -> dict:
    """Layer hard defaults, then --config values, then explicit flags."""
    opts = dict(_HARD_DEFAULTS)
    given = vars(ns)
    config_path = given.pop("config", None)
    if config_path is not None:
        try:
            with open(config_path, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config {config_path!r}: {exc}")
        if not isinstance(loaded, dict):
            parser.error(f"config {config_path!r} must hold a JSON object")
        for key, value in loaded.items():
            key = key.replace("-", "_")
            if key not in _CONVERTERS:
                parser.error(f"config {config_path!r} has unknown key {key!r}")
            convert = _CONVERTERS[key]
            try:
                if key == "probs" and isinstance(value, list):
                    opts[key] = parse_probs(value)
                elif isinstance(value, str):
                    opts[key] = convert(value)
                else:
                    opts[key] = value
            except (argparse.ArgumentTypeError, ValueError) as exc:
                parser.error(f"config key {key!r}: {exc}")
    opts.update(given)
    return opts


def _to_bits(value: float) -> float:
    return value / _LN2 if math.isfinite(value) else value


def _scale(opts: dict, payload: dict, keys: tuple[str, ...]) -> dict:
    if opts["bits"]:
        payload = {k: (_to_bits(v) if k in keys else v) for k, v in payload.items()}
        payload["units"] = "bits"
    else:
        payload["units"] = "nats"
    return payload


def _need(parser, opts, key):
    if key not in opts or opts.get(key) is None:
        parser.error(f"the following argument is required: --{key.replace('_', '-')}")
    return opts[key]


def _growth_payload(rates) -> dict:
    return {
        "mean_log_growth": rates.mean_log_growth,
        "log_mean_growth": rates.log_mean_growth,
    }


def _dispatch(parser: argparse.ArgumentParser, command: str, opts: dict):
    if command == "entropy":
        src = _need(parser, opts, "probs")
        value = src.renyi_entropy(opts["alpha"])
        return _scale(opts, {"alpha": opts["alpha"], "entropy": value}, ("entropy",))

    if command == "scgf":
        src = _need(parser, opts, "probs")
        alpha = opts["alpha"]
        if "channel" in opts:
            value = subordinated_scgf(src, opts["channel"], alpha)
        else:
            value = src.guesswork_scgf(alpha)
        return _scale(opts, {"alpha": alpha, "scgf": value}, ("scgf",))

    if command == "ratefn":
        src = _need(parser, opts, "probs")
        x = opts["x"]
        if "channel" in opts:
            payload = {
                "x": x,
                "rate_inf": subordinated_rate_inf(src, opts["channel"], x),
                "rate_dual": subordinated_rate_dual(src, opts["channel"], x),
            }
            return _scale(opts, payload, ("x", "rate_inf", "rate_dual"))
        return _scale(opts, {"x": x, "rate": src.guesswork_rate_function(x)}, ("x", "rate"))

    if command == "growth":
        src = _need(parser, opts, "probs")
        noise = _need(parser, opts, "channel")
        payload = _growth_payload(growth_rates(src, noise))
        return _scale(opts, payload, ("mean_log_growth", "log_mean_growth"))

    if command == "compare":
        src = _need(parser, opts, "probs")
        report = compare_channels(src, _need(parser, opts, "channel_a"), _need(parser, opts, "channel_b"))
        payload = {
            "a": _growth_payload(report.rates_a),
            "b": _growth_payload(report.rates_b),
            "mean_rate_a": report.mean_rate_a,
            "mean_rate_b": report.mean_rate_b,
            "mean_log_diff": report.mean_log_diff,
            "log_mean_diff": report.log_mean_diff,
            "noisier_channel_easier": report.noisier_channel_easier,
        }
        if opts["bits"]:
            for sub_key in ("a", "b"):
                payload[sub_key] = {k: _to_bits(v) for k, v in payload[sub_key].items()}
            payload["mean_log_diff"] = _to_bits(payload["mean_log_diff"])
            payload["log_mean_diff"] = _to_bits(payload["log_mean_diff"])
            payload["units"] = "bits"
        else:
            payload["units"] = "nats"
        return payload

    if command == "exact":
        src = _need(parser, opts, "probs")
        noise = _need(parser, opts, "channel")
        k, alpha = opts["k"], opts["alpha"]
        log_moment = exact_subordinated_moment(src, noise, k, alpha)
        payload = {
            "k": k,
            "alpha": alpha,
            "log_moment": log_moment,
            "log_moment_rate": log_moment / k,
            "mean_log_rate": exact_mean_log_guesswork(src, noise, k),
        }
        return _scale(opts, payload, ("log_moment", "log_moment_rate", "mean_log_rate"))

    if command == "approx":
        src = _need(parser, opts, "probs")
        k = opts["k"]
        if opts.get("compare"):
            report = compare_exact_vs_approx(src, k)
            return {
                "k": report.k,
                "max_abs_log_ratio": report.max_abs_log_ratio,
                "grid": [{"rank": n, "exact": e, "approx": a} for n, e, a in report.grid],
            }
        if "n" not in opts:
            parser.error("approx needs -n <rank> or --compare")
        n = opts["n"]
        if "channel" in opts:
            value = approx_subordinated_pmf(src, opts["channel"], k, n)
        else:
            value = approx_pmf(src, k, n)
        return {"k": k, "n": n, "pmf": value}

    if command == "simulate":
        src = _need(parser, opts, "probs")
        noise = _need(parser, opts, "channel")
        report = simulate_attack(src, noise, opts["k"], opts["trials"], opts["seed"])
        payload = {
            "k": report.k,
            "trials": report.trials,
            "seed": report.seed,
            "mean_log_guesswork_rate": report.mean_log_guesswork_rate,
            "var_log_guesswork_rate": report.var_log_guesswork_rate,
            "ci95_log_guesswork_rate": list(report.ci95_log_guesswork_rate),
            "mean_erasure_fraction": report.mean_erasure_fraction,
            "var_erasure_fraction": report.var_erasure_fraction,
            "ci95_erasure_fraction": list(report.ci95_erasure_fraction),
        }
        if opts["bits"]:
            for key in ("mean_log_guesswork_rate", "var_log_guesswork_rate"):
                payload[key] = _to_bits(payload[key])
            payload["ci95_log_guesswork_rate"] = [
                _to_bits(v) for v in payload["ci95_log_guesswork_rate"]
            ]
            payload["units"] = "bits"
        else:
            payload["units"] = "nats"
        return payload

    raise AssertionError(f"unhandled command {command}")


def _render_csv(payload: dict) -> str:
    if "grid" in payload:  # approx --compare emits a columnar dataset
        lines = [f"# k={payload['k']} max_abs_log_ratio={payload['max_abs_log_ratio']!r}"]
        lines.append("rank,exact,approx")
        for row in payload["grid"]:
            lines.append(f"{row['rank']},{row['exact']!r},{row['approx']!r}")
        return "\n".join(lines) + "\n"
    lines = ["quantity,value"]
    for key, value in payload.items():
        if isinstance(value, dict):
            for inner, v in value.items():
                lines.append(f"{key}.{inner},{v!r}")
        elif isinstance(value, list):
            lines.append(f"{key},\"{','.join(repr(v) for v in value)}\"")
        elif isinstance(value, str):
            lines.append(f"{key},{value}")
        else:
            lines.append(f"{key},{value!r}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    command = ns.command
    del ns.command
    channel_required = getattr(ns, "_channel_required", False)
    if hasattr(ns, "_channel_required"):
        del ns._channel_required
    opts = _merge_config(parser, ns)
    if channel_required and "channel" not in opts:
        parser.error("the following argument is required: --channel")

    out_path = opts.get("out")
    try:
        if command == "figure":
            figure = opts["figure"]
            if out_path:
                emit_figure_data(figure, out_path)
            else:
                emit_figure_data(figure, sys.stdout)
            return 0
        payload = _dispatch(parser, command, opts)
        if opts["format"] == "csv":
            text = _render_csv(payload)
        else:
            text = json.dumps(payload, indent=2) + "\n"
        if out_path:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"guesswork: error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())
