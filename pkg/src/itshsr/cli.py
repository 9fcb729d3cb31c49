"""Command-line front end: sweeps, bound reports, config validation."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .configio import load_config
from .crlb import crlb_report
from .errors import ItshsrError
from .harness import demo_scenario, emit_csv, run_sweep
from .linksim import sigma_from_snr
from .pilots import validate_config

__all__ = ["cli_main", "main", "write_plot_script"]

_CRLB_PRINT_FIELDS = (
    "crlb_xi1",
    "crlb_xi2",
    "crlb_fd1",
    "crlb_fd2",
    "crlb_beta1",
    "crlb_beta2",
    "crlb_phi_y",
    "crlb_phi_z",
)

_PLOT_TEMPLATE = """\
# MSE-vs-SNR figures from a sweep CSV, one PNG per parameter family.
# Usage:  gnuplot -e "csv='other.csv'" this_script.gp   (or rely on the
# default input baked in below).

if (!exists("csv")) csv = '@CSV@'
set datafile separator ','
set key autotitle columnhead
set key bottom left
set logscale y
set format y "10^{%T}"
set xlabel "SNR (dB)"
set grid
set terminal pngcairo size 900,650

set output 'mse_phase_ratio.png'
set ylabel "MSE"
plot csv using 1:2 with linespoints title 'xi_1 normalized', \\
     csv using 1:3 with linespoints title 'xi_1 non-normalized', \\
     csv using 1:4 with linespoints title 'xi_2 normalized', \\
     csv using 1:5 with linespoints title 'xi_2 non-normalized', \\
     csv using 1:14 with lines dashtype 2 title 'CRLB xi_1', \\
     csv using 1:15 with lines dashtype 2 title 'CRLB xi_2'

set output 'mse_doppler.png'
set ylabel "MSE (Hz^2)"
plot csv using 1:6 with linespoints title 'f_{d1}', \\
     csv using 1:7 with linespoints title 'f_{d2}', \\
     csv using 1:16 with lines dashtype 2 title 'CRLB f_{d1}', \\
     csv using 1:17 with lines dashtype 2 title 'CRLB f_{d2}'

set output 'mse_gain.png'
set ylabel "MSE"
plot csv using 1:8 with linespoints title 'beta_1', \\
     csv using 1:9 with linespoints title 'beta_1 idealized', \\
     csv using 1:10 with linespoints title 'beta_2', \\
     csv using 1:11 with linespoints title 'beta_2 idealized', \\
     csv using 1:18 with lines dashtype 2 title 'CRLB beta_1', \\
     csv using 1:19 with lines dashtype 2 title 'CRLB beta_2'

set output 'mse_phase_diff.png'
set ylabel "MSE (rad^2)"
plot csv using 1:12 with linespoints title 'phi_y', \\
     csv using 1:13 with linespoints title 'phi_z', \\
     csv using 1:20 with lines dashtype 2 title 'CRLB phi_y', \\
     csv using 1:21 with lines dashtype 2 title 'CRLB phi_z'
"""


def write_plot_script(script_path, csv_path) -> None:
    """Emit a self-contained gnuplot script rendering the four figures."""
    with open(script_path, "w", encoding="ascii") as stream:
        stream.write(_PLOT_TEMPLATE.replace("@CSV@", str(csv_path)))


def _progress(snr_index, snr_db, done, total) -> None:
    if done == total:
        print(f"snr {snr_db:g} dB: {total} trials", file=sys.stderr)


def _apply_overrides(config, args):
    if getattr(args, "seed", None) is not None:
        config = replace(config, seed=args.seed)
    if getattr(args, "trials", None) is not None:
        config = replace(config, trials=args.trials)
    return config


def _run_and_emit(config, params, args) -> int:
    curve = run_sweep(
        config, params, backend=args.backend, progress=_progress
    )
    emit_csv(curve, args.out)
    print(f"wrote {args.out}")
    if args.plot_script:
        write_plot_script(args.plot_script, args.out)
        print(f"wrote {args.plot_script}")
    return 0


def _cmd_sweep(args) -> int:
    config, params = load_config(args.config)
    return _run_and_emit(_apply_overrides(config, args), params, args)


def _cmd_crlb(args) -> int:
    config, params = load_config(args.config)
    report = crlb_report(sigma_from_snr(args.snr_db), config, params)
    for name in _CRLB_PRINT_FIELDS:
        print(f"{name} = {getattr(report, name):.12e}")
    return 0


def _cmd_validate(args) -> int:
    config, params = load_config(args.config)
    report = validate_config(config, params)
    print(report)
    return 0 if report.ok else 1


def _cmd_demo(args) -> int:
    config, params = demo_scenario()
    return _run_and_emit(_apply_overrides(config, args), params, args)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="itshsr",
        description=(
            "Monte Carlo simulator for Doppler and cascaded-channel "
            "estimation through a refracting surface"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run an MSE-vs-SNR sweep from a config file")
    sweep.add_argument("--config", required=True, help="scenario file")
    sweep.add_argument("--out", required=True, help="output CSV path")
    sweep.add_argument("--plot-script", help="also emit a gnuplot script here")
    sweep.add_argument("--seed", type=int, help="override the config seed")
    sweep.add_argument("--trials", type=int, help="override the trial count")
    sweep.add_argument(
        "--backend",
        choices=("auto", "native", "python"),
        help="trial kernel to use (default: auto)",
    )
    sweep.set_defaults(handler=_cmd_sweep)

    crlb = sub.add_parser("crlb", help="print the bound report at one SNR")
    crlb.add_argument("--config", required=True, help="scenario file")
    crlb.add_argument("--snr-db", type=float, required=True, help="SNR in dB")
    crlb.set_defaults(handler=_cmd_crlb)

    validate = sub.add_parser("validate", help="check a config against the model limits")
    validate.add_argument("--config", required=True, help="scenario file")
    validate.set_defaults(handler=_cmd_validate)

    demo = sub.add_parser("demo", help="sweep the built-in showcase scenario")
    demo.add_argument("--out", default="demo_sweep.csv", help="output CSV path")
    demo.add_argument("--plot-script", help="also emit a gnuplot script here")
    demo.add_argument("--seed", type=int, help="override the demo seed")
    demo.add_argument("--trials", type=int, help="override the trial count")
    demo.add_argument(
        "--backend",
        choices=("auto", "native", "python"),
        help="trial kernel to use (default: auto)",
    )
    demo.set_defaults(handler=_cmd_demo)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ItshsrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


cli_main = main

if __name__ == "__main__":
    sys.exit(main())
