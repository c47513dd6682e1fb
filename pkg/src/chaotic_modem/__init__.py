"""Predictive demodulation for chaos-switched communications.

Submodules: ``chaos`` (maps, frames, prediction), ``modem`` (quantizer, FSK),
``channel`` (AWGN), ``detectors`` (predictive and CSK receivers),
``analysis`` (closed forms) and ``harness`` (Monte Carlo runner, CSV, plots, CLI).
"""
from .chaos import MapKind, MapPair, MapParams, default_map_pair
from .channel import ChannelConfig, NoiseConvention
from .errors import ConfigError, DivergenceError, InvalidArgumentError, OutOfRangeError
from .modem import FskConfig

__all__ = [
    "ChannelConfig",
    "ConfigError",
    "DivergenceError",
    "FskConfig",
    "InvalidArgumentError",
    "MapKind",
    "MapPair",
    "MapParams",
    "NoiseConvention",
    "OutOfRangeError",
    "default_map_pair",
]

__version__ = "0.1.0"
