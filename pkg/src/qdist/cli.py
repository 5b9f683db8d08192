"""Command-line front end.

One subcommand per distribution family plus an ad-hoc pair query and
the self-verification entry point:

    qdist pbox       box-state W_1 scans (classical reference or G_m pairs)
    qdist osc        oscillator vacuum-distance scan with asymptotic fits
    qdist photon     photon-statistics distance table
    qdist blackbody  blackbody W_1 scaling in both spectral representations
    qdist dist       one distance between two photon states
    qdist selftest   run the acceptance criteria; exit 0 only if all pass

Exit codes: 0 success, 1 tolerance/consistency failure, 2 usage error.
Output for a fixed argv is byte-identical across runs.  QDIST_THREADS
(integer >= 1) caps row-level parallelism inside the scans.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import acceptance, experiments
from .distances import bhattacharyya_discrete, emd_oracle, kl_discrete, wasserstein1_discrete
from .errors import ConsistencyError, IntegrationError, ToleranceError, TruncationError
from .photon_states import parse_state_descriptor

__all__ = ["main", "build_parser", "parse_state_descriptor"]

_MEASURES = {
    "w1": wasserstein1_discrete,
    "kl": kl_discrete,
    "bhatt": bhattacharyya_discrete,
    "emd": emd_oracle,
}


def _fit_window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    try:
        window = (int(lo), int(hi))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integer window bounds in {text!r}") from exc
    if window[0] >= window[1]:
        raise argparse.ArgumentTypeError(f"empty fit window {text!r}")
    return window


def _temperature_list(text: str) -> tuple[float, ...]:
    try:
        temps = tuple(float(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"malformed temperature list {text!r}") from exc
    if len(temps) < 2 or any(t <= 0.0 for t in temps):
        raise argparse.ArgumentTypeError("need at least two positive temperatures")
    return temps


def _descriptor_arg(text: str) -> str:
    try:
        parse_state_descriptor(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdist",
        description="Distances between 1-D probability distributions of quantum states of light.",
        epilog="Set QDIST_THREADS to parallelize scan rows; output stays order-preserving.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv", help="table format")
        p.add_argument("--out", type=Path, default=None, help="output path (default: stdout)")

    p_box = sub.add_parser("pbox", help="particle-in-a-box W1 scans")
    p_box.add_argument("--mode", choices=("classical", "pair"), default="classical")
    p_box.add_argument("--m", type=int, default=1, help="reference quantum number for pair mode")
    p_box.add_argument("--n-min", type=int, default=1)
    p_box.add_argument("--n-max", type=int, default=20)
    p_box.add_argument("--n-step", type=int, default=1)
    add_output_flags(p_box)
    p_box.set_defaults(func=_cmd_pbox)

    p_osc = sub.add_parser("osc", help="oscillator vacuum-distance scan")
    p_osc.add_argument("--n-min", type=int, default=10)
    p_osc.add_argument("--n-max", type=int, default=400)
    p_osc.add_argument("--n-step", type=int, default=10)
    p_osc.add_argument("--fit-window", type=_fit_window, default=(50, 400),
                       help="power-law window LO:HI for the W1 fit")
    p_osc.add_argument("--div-fit-window", type=_fit_window, default=(10, 200),
                       help="log-linear window LO:HI for the KL/Bhattacharyya fits")
    add_output_flags(p_osc)
    p_osc.set_defaults(func=_cmd_osc)

    p_photon = sub.add_parser("photon", help="photon-statistics distance table")
    p_photon.add_argument(
        "--pair",
        action="append",
        metavar="A;B",
        default=None,
        help="state pair 'DESC;DESC' (repeatable); default: the standard vacuum table",
    )
    add_output_flags(p_photon)
    p_photon.set_defaults(func=_cmd_photon)

    p_bb = sub.add_parser("blackbody", help="blackbody W1 scaling scan")
    p_bb.add_argument("--temperatures", type=_temperature_list, default=(100.0, 200.0, 300.0, 500.0),
                      help="comma-separated list in kelvin")
    add_output_flags(p_bb)
    p_bb.set_defaults(func=_cmd_blackbody)

    p_dist = sub.add_parser("dist", help="one distance between two photon states")
    p_dist.add_argument("--a", required=True, type=_descriptor_arg, help="first state descriptor")
    p_dist.add_argument("--b", required=True, type=_descriptor_arg, help="second state descriptor")
    p_dist.add_argument("--measure", choices=sorted(_MEASURES), default="w1")
    p_dist.set_defaults(func=_cmd_dist)

    p_self = sub.add_parser("selftest", help="run the acceptance criteria")
    p_self.add_argument(
        "--criteria",
        type=lambda s: [int(v) for v in s.split(",")],
        default=None,
        help="comma-separated criterion indices (default: all)",
    )
    p_self.set_defaults(func=_cmd_selftest)

    return parser


def _emit(table, args) -> int:
    text = table.render(args.format)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
    return 0


def _cmd_pbox(args) -> int:
    spec = experiments.ExperimentSpec(
        experiment="pbox",
        n_min=args.n_min,
        n_max=args.n_max,
        n_step=args.n_step,
        m=args.m if args.mode == "pair" else None,
        output_format=args.format,
    )
    return _emit(experiments.run_pbox_scan(spec), args)


def _cmd_osc(args) -> int:
    spec = experiments.ExperimentSpec(
        experiment="osc",
        n_min=args.n_min,
        n_max=args.n_max,
        n_step=args.n_step,
        w1_fit_window=args.fit_window,
        div_fit_window=args.div_fit_window,
        output_format=args.format,
    )
    return _emit(experiments.run_osc_scan(spec), args)


def _cmd_photon(args) -> int:
    if args.pair is None:
        pairs = experiments.DEFAULT_PHOTON_PAIRS
    else:
        pairs = []
        for text in args.pair:
            a, sep, b = text.partition(";")
            if not sep or not a.strip() or not b.strip():
                raise ValueError(f"expected 'DESC;DESC' in --pair, got {text!r}")
            pairs.append((a.strip(), b.strip()))
        pairs = tuple(pairs)
    spec = experiments.ExperimentSpec(
        experiment="photon", state_pairs=pairs, output_format=args.format
    )
    return _emit(experiments.run_photon_table(spec), args)


def _cmd_blackbody(args) -> int:
    spec = experiments.ExperimentSpec(
        experiment="blackbody", temperatures=args.temperatures, output_format=args.format
    )
    return _emit(experiments.run_blackbody_scan(spec), args)


def _cmd_dist(args) -> int:
    a = parse_state_descriptor(args.a)
    b = parse_state_descriptor(args.b)
    value = _MEASURES[args.measure](a.pmf(), b.pmf())
    print(f"{value:.17g}")
    return 0


def _cmd_selftest(args) -> int:
    results = acceptance.run_all(args.criteria)
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} criterion(s) failed", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"qdist: {exc}", file=sys.stderr)
        return 2
    except (ToleranceError, ConsistencyError, IntegrationError, TruncationError) as exc:
        print(f"qdist: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"qdist: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
