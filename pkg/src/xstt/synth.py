"""Synthetic RGGB test mosaics."""
from __future__ import annotations

import numpy as np

from .cfa import BayerMosaic
from .errors import ConfigError, DimensionError

KINDS = ("constant", "ramp", "diag-edge-45", "diag-edge-135", "h-stripes", "v-stripes", "noise")

# per-site gains applied to the grey scene: R, G, B
_GAINS = (0.55, 1.0, 0.75)


def _scene(kind, h, w, rng):
    y, x = np.mgrid[0:h, 0:w].astype(np.float64)
    if kind == "ramp":
        return 0.1 + 0.8 * (x + y) / max(h + w - 2, 1)
    if kind == "diag-edge-45":
        # edge runs bottom-left to top-right
        return np.where(x + y < (w + h) / 2, 0.2, 0.8) + 0.05 * x / w
    if kind == "diag-edge-135":
        # edge runs top-left to bottom-right
        return np.where(x - y < 0, 0.2, 0.8) + 0.05 * y / h
    if kind == "h-stripes":
        return np.where((y // 8) % 2 == 0, 0.25, 0.75)
    if kind == "v-stripes":
        return np.where((x // 8) % 2 == 0, 0.25, 0.75)
    if kind == "noise":
        return rng.uniform(0.0, 1.0, size=(h, w))
    raise ConfigError(f"unknown synthetic kind {kind!r}; expected one of {KINDS}")


def synth_mosaic(kind: str, size: int = 64, bit_depth: int = 12, seed: int = 0, height: int = None) -> BayerMosaic:
    h = size if height is None else height
    w = size
    if h % 2 or w % 2 or h <= 0 or w <= 0:
        raise DimensionError(f"synthetic mosaic size must be even and positive, got {w}x{h}")
    top = (1 << bit_depth) - 1
    if kind == "constant":
        return BayerMosaic(np.full((h, w), 1 << (bit_depth - 1), dtype=np.int64), bit_depth)
    rng = np.random.default_rng(seed)
    scene = _scene(kind, h, w, rng)
    gain = np.empty((h, w))
    gain[0::2, 0::2] = _GAINS[0]
    gain[0::2, 1::2] = _GAINS[1]
    gain[1::2, 0::2] = _GAINS[1]
    gain[1::2, 1::2] = _GAINS[2]
    samples = np.clip(np.rint(scene * gain * top), 0, top).astype(np.int64)
    return BayerMosaic(samples, bit_depth)


def random_mosaic(rng: np.random.Generator, height: int, width: int, bit_depth: int) -> BayerMosaic:
    """Uniform i.i.d. samples over the full range of ``bit_depth``."""
    samples = rng.integers(0, 1 << bit_depth, size=(height, width), dtype=np.int64)
    return BayerMosaic(samples, bit_depth)
