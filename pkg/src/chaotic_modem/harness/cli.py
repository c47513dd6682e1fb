"""Command line: ``run``, ``theory`` and ``selftest``.

Exit status is 0 on success, 1 for configuration or usage errors and 2 for
failures during a run.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .. import analysis
from ..errors import ConfigError
from . import config as cfgmod
from .config import ExperimentConfig, parse_grid, read_config_file, config_from_entries, worker_count
from .engine import run_experiment
from .io import write_csv, write_theory_csv
from .plot import emit_plot
from .selftest import run_selftest

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2

# flag dest -> config-file key
_FLAG_KEYS = {
    "schemes": "schemes",
    "bits": "bits",
    "frame": "frame",
    "mods": "mods",
    "ebno": "ebno",
    "epsilon": "epsilon",
    "seed": "seed",
    "noise_convention": "noise_convention",
    "map_a": "a",
    "map_A": "A",
    "map_phi": "phi",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chaotic-modem", description="Chaotic predictive-demodulation BER experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="Monte Carlo BER experiment; writes ber.csv and ber.svg")
    run.add_argument("--config", metavar="FILE", help="key = value file; flags override it")
    run.add_argument("--schemes", help="comma list of " + ",".join(s.value for s in cfgmod.Scheme))
    run.add_argument("--bits", metavar="K", help="bits per grid point (default 100000)")
    run.add_argument("--frame", metavar="N", help="chaotic samples per bit (default 128)")
    run.add_argument("--mods", metavar="M,...", help="FSK orders (default 4,8,16)")
    run.add_argument("--ebno", metavar="START:STOP:STEP", help="Eb/N0 grid in dB (default 0:14:2)")
    run.add_argument("--epsilon", help="replica initial-condition offset (default 1e-8)")
    run.add_argument("--seed", help="master seed")
    run.add_argument("--noise-convention", choices=[c.value for c in cfgmod.NoiseConvention])
    run.add_argument("--map-a", dest="map_a", help="quadratic map coefficient")
    run.add_argument("--map-A", dest="map_A", help="trigonometric map amplitude")
    run.add_argument("--map-phi", dest="map_phi", help="trigonometric map phase [rad]")
    run.add_argument("--out", metavar="DIR", help="output directory (default .)")
    run.add_argument("--workers", type=int, help=f"worker processes, 0 = all cores (default ${cfgmod.THREADS_ENV} or 1)")
    run.add_argument("--quiet", action="store_true")

    theory = sub.add_parser("theory", help="closed-form reference curves")
    theory.add_argument("--mods", metavar="M,...", default="4,8,16")
    theory.add_argument("--ebno", metavar="START:STOP:STEP", default="0:14:2")
    theory.add_argument("--noise-convention", choices=[c.value for c in cfgmod.NoiseConvention], default="literal")
    theory.add_argument("--out", metavar="DIR", help="also write theory.csv there")

    sub.add_parser("selftest", help="run the built-in property checks")
    return parser


def _experiment_config(args) -> tuple[ExperimentConfig, Path]:
    entries = read_config_file(args.config) if args.config else {}
    for dest, key in _FLAG_KEYS.items():
        value = getattr(args, dest)
        if value is not None:
            entries[key] = value
    out = Path(args.out or entries.get("out") or ".")
    return config_from_entries(entries), out


def _cmd_run(args) -> int:
    config, out = _experiment_config(args)
    workers = worker_count(args.workers)
    try:
        out.mkdir(parents=True, exist_ok=True)
        curves = run_experiment(config, workers=workers)
        write_csv(curves, out / "ber.csv")
        theory = analysis.theory_curves(config.ebno_grid_db, (), config.noise_convention)
        emit_plot(curves, theory, out / "ber.svg")
    except (OSError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    if not args.quiet:
        for c in curves:
            print(f"{c.label:28s} " + " ".join(f"{p.ber:.4g}" for p in c.points))
        print(f"wrote {out / 'ber.csv'} and {out / 'ber.svg'}")
    return EXIT_OK


def _cmd_theory(args) -> int:
    try:
        M_list = tuple(int(m) for m in args.mods.split(",") if m.strip())
    except ValueError:
        raise ConfigError(f"malformed --mods {args.mods!r}") from None
    for M in M_list:
        if M < 2:
            raise ConfigError(f"M must be at least 2, got {M}")
    grid = parse_grid(args.ebno)
    convention = cfgmod.NoiseConvention(args.noise_convention)
    curves = analysis.theory_curves(grid, M_list, convention)
    finite = [e for e in grid if e != float("inf")]
    print("ebno_db  " + "  ".join(f"{c.label}" for c in curves))
    for i, e in enumerate(finite):
        print(f"{e:7.3g}  " + "  ".join(f"{c.points[i][1]:.6e}" for c in curves))
    for c in curves:
        if c.note:
            print(f"# {c.label}: {c.note}")
    if args.out:
        out = Path(args.out)
        try:
            out.mkdir(parents=True, exist_ok=True)
            write_theory_csv(curves, out / "theory.csv")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_RUNTIME
    return EXIT_OK


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "theory":
            return _cmd_theory(args)
        return EXIT_OK if run_selftest() else EXIT_RUNTIME
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # anything else is a runtime failure
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
