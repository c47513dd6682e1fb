"""Experiment runner, persistence, plotting and command line."""
from .config import ExperimentConfig, Scheme, parse_grid
from .engine import BerCurve, BerPoint, run_bit_trial, run_experiment
from .io import read_csv, write_csv
from .plot import emit_plot

__all__ = [
    "BerCurve",
    "BerPoint",
    "ExperimentConfig",
    "Scheme",
    "emit_plot",
    "parse_grid",
    "read_csv",
    "run_bit_trial",
    "run_experiment",
    "write_csv",
]
