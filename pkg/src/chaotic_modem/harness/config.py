"""Experiment configuration, grid parsing and the ``key = value`` config file."""
from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..chaos import DEFAULT_A, DEFAULT_AMPLITUDE, DEFAULT_PHI
from ..channel import NoiseConvention
from ..errors import ConfigError
from ..modem import SUPPORTED_M

THREADS_ENV = "CHAOTIC_MODEM_THREADS"


class Scheme(str, enum.Enum):
    SYNC_CSK = "sync-csk"
    UNSYNC_CSK = "unsync-csk"
    PREDICTIVE_FSK = "predictive-fsk"
    PREDICTIVE_DIRECT = "predictive-direct"
    PREDICTIVE_DIRECT_BIAS = "predictive-direct-bias"

    @property
    def uses_fsk(self) -> bool:
        return self is Scheme.PREDICTIVE_FSK


FIGURE_SCHEMES = (Scheme.SYNC_CSK, Scheme.UNSYNC_CSK, Scheme.PREDICTIVE_FSK)


def parse_grid(text: str) -> tuple[float, ...]:
    """``start:stop:step`` (stop inclusive) or a comma list; ``inf`` disables noise."""
    text = text.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError
            start, stop, step = (float(p) for p in parts)
            if not step > 0 or not all(map(math.isfinite, (start, stop, step))):
                raise ValueError
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            if count < 1:
                raise ValueError
            return tuple(round(start + i * step, 9) for i in range(count))
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"malformed Eb/N0 grid {text!r}; expected start:stop:step or a comma list") from None



@dataclass(frozen=True)
class ExperimentConfig:
    schemes: tuple[Scheme, ...] = FIGURE_SCHEMES
    K: int = 100_000
    N: int = 128
    M_list: tuple[int, ...] = (4, 8, 16)
    ebno_grid_db: tuple[float, ...] = parse_grid("0:14:2")
    epsilon: float = 1e-8
    master_seed: int = 2024
    noise_convention: NoiseConvention = NoiseConvention.LITERAL
    a: float = DEFAULT_A
    A: float = DEFAULT_AMPLITUDE
    phi: float = DEFAULT_PHI
    chunk_size: int = field(default=1000, compare=False)

    def __post_init__(self):
        try:
            schemes = tuple(Scheme(s) for s in self.schemes)
            convention = NoiseConvention(self.noise_convention)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        object.__setattr__(self, "schemes", schemes)
        object.__setattr__(self, "M_list", tuple(int(m) for m in self.M_list))
        object.__setattr__(self, "ebno_grid_db", tuple(float(e) for e in self.ebno_grid_db))
        object.__setattr__(self, "noise_convention", convention)
        if not schemes:
            raise ConfigError("at least one scheme is required")
        if len(set(schemes)) != len(schemes):
            raise ConfigError("duplicate scheme")
        if self.K < 1:
            raise ConfigError(f"K must be at least 1, got {self.K}")
        if self.N < 2:
            raise ConfigError(f"N must be at least 2, got {self.N}")
        if Scheme.PREDICTIVE_FSK in schemes and not self.M_list:
            raise ConfigError("predictive-fsk needs at least one modulation order")
        for m in self.M_list:
            if m not in SUPPORTED_M:
                raise ConfigError(f"M must be one of {SUPPORTED_M}, got {m}")
        if len(set(self.M_list)) != len(self.M_list):
            raise ConfigError("duplicate modulation order")
        grid = self.ebno_grid_db
        if not grid:
            raise ConfigError("Eb/N0 grid is empty")
        if any(math.isnan(g) or g == -math.inf for g in grid):
            raise ConfigError("Eb/N0 grid values must be real or +inf")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigError("Eb/N0 grid must be strictly increasing")
        if not math.isfinite(self.epsilon):
            raise ConfigError("epsilon must be finite")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.chunk_size < 1:
            raise ConfigError("chunk_size must be positive")
        for name in ("a", "A", "phi"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"map parameter {name} must be finite")

    def curve_keys(self) -> list[tuple[Scheme, int | None]]:
        keys = []
        for s in self.schemes:
            if s.uses_fsk:
                keys.extend((s, m) for m in self.M_list)
            else:
                keys.append((s, None))
        return keys


# config-file key -> (ExperimentConfig field, parser)
def _parse_schemes(v):
    try:
        return tuple(Scheme(s.strip()) for s in v.split(",") if s.strip())
    except ValueError as exc:
        raise ConfigError(f"unknown scheme in {v!r}; choose from {[s.value for s in Scheme]}") from exc


def _parse_int_list(v):
    return tuple(int(x) for x in v.split(",") if x.strip())


def _parse_convention(v):
    try:
        return NoiseConvention(v.strip())
    except ValueError as exc:
        raise ConfigError(f"noise convention must be 'literal' or 'halved', got {v!r}") from exc


CONFIG_KEYS = {
    "schemes": ("schemes", _parse_schemes),
    "bits": ("K", int),
    "frame": ("N", int),
    "mods": ("M_list", _parse_int_list),
    "ebno": ("ebno_grid_db", parse_grid),
    "epsilon": ("epsilon", float),
    "seed": ("master_seed", int),
    "noise_convention": ("noise_convention", _parse_convention),
    "a": ("a", float),
    "A": ("A", float),
    "phi": ("phi", float),
}
EXTRA_KEYS = ("out",)


def parse_value(key: str, value: str):
    target, parser = CONFIG_KEYS[key]
    try:
        return target, parser(value)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {value!r}") from exc


def read_config_file(path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment; unknown keys are errors."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from exc
    entries = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        if key not in CONFIG_KEYS and key not in EXTRA_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        entries[key] = value
    return entries


def config_from_entries(entries: dict[str, str], base: ExperimentConfig | None = None) -> ExperimentConfig:
    base = base or ExperimentConfig()
    updates = {}
    for key, value in entries.items():
        if key in EXTRA_KEYS:
            continue
        target, parsed = parse_value(key, value)
        updates[target] = parsed
    try:
        return replace(base, **updates)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def worker_count(requested: int | None = None) -> int:
    """Worker pool size: explicit request, else ``CHAOTIC_MODEM_THREADS``, else 1. 0 means all cores."""
    if requested is None:
        raw = os.environ.get(THREADS_ENV, "").strip()
        if not raw:
            return 1
        try:
            requested = int(raw)
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if requested < 0:
        raise ConfigError(f"worker count must be non-negative, got {requested}")
    if requested == 0:
        return os.cpu_count() or 1
    return requested
