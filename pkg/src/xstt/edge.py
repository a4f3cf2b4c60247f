"""Edge-aware weights for the 2-D diagonal and horizontal-vertical predicts.

Each weight ``W_m`` sums ``|difference|**gamma`` over the 3x3 neighbourhood
``Z_n`` (centre first, then top, left, right, bottom, and the four corners)
and adds ``epsilon``. The summation order is fixed so that a decoder
recomputing weights from identical integer planes gets identical floats.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cfa import INTEGER
from .errors import ConfigError, DimensionError
from .lifting import PAD, pad, window

EPSILON = 1e-8

# Z_n for n = 0..8: centre, top, left, right, bottom, TL, TR, BL, BR.
NEIGHBOURHOOD = (
    (0, 0), (-1, 0), (0, -1), (0, 1), (1, 0),
    (-1, -1), (-1, 1), (1, -1), (1, 1),
)

# Difference pairs (a, b) giving |x[a] - x[b]| for W1 and W2.
DIAG_DIFFS = {
    # (z1 - z2bar) and (1 - z1 z2bar) applied to G1
    "g1-to-g2": (((0, -1), (1, 0)), ((0, 0), (1, -1))),
    # (z1 - z2) and (1 - z1 z2) applied to B
    "b-to-r": (((0, -1), (-1, 0)), ((0, 0), (-1, -1))),
}

# Tap pairs of the weighted diagonal predict: W1 pair, W2 pair.
DIAG_TAPS = {
    "generic": (((0, 0), (1, 1)), ((0, 1), (1, 0))),
    "g1-to-g2": (((0, 0), (1, -1)), ((0, -1), (1, 0))),
    "b-to-r": (((0, 0), (-1, -1)), ((0, -1), (-1, 0))),
}

# (plane, a, b) for W1 and W2 of the horizontal-vertical predicts.
HV_DIFFS = {
    "to-r": (("g2", (0, 0), (-1, 0)), ("g1", (0, 0), (0, -1))),
    "to-b": (("g1", (0, 0), (1, 0)), ("g2", (0, 0), (0, 1))),
}

# Horizontal (W1) and vertical (W2) tap groups.
HV_TAPS = {
    "to-r": (("g1", ((0, 0), (0, -1))), ("g2", ((0, 0), (-1, 0)))),
    "to-b": (("g2", ((0, 0), (0, 1))), ("g1", ((0, 0), (1, 0)))),
}


@dataclass(frozen=True)
class EdgeParams:
    gamma: float = 1.0
    epsilon: float = EPSILON

    def __post_init__(self):
        if self.gamma < 0:
            raise ConfigError(f"gamma must be >= 0, got {self.gamma}")
        if not self.epsilon > 0:
            raise ConfigError(f"epsilon must be > 0, got {self.epsilon}")

    @classmethod
    def for_mode(cls, mode: str) -> "EdgeParams":
        return cls(gamma=1.0 if mode == INTEGER else 0.5)


@dataclass(frozen=True, eq=False)
class WeightField:
    w1: np.ndarray
    w2: np.ndarray

    def __post_init__(self):
        if self.w1.shape != self.w2.shape:
            raise DimensionError("w1 and w2 differ in shape")
        total = self.w1 + self.w2
        object.__setattr__(self, "fraction", self.w1 / total)
        object.__setattr__(self, "complement", self.w2 / total)

    @property
    def shape(self):
        return self.w1.shape


def _accumulate(padded, shape, a, b, gamma, epsilon):
    acc = np.zeros(shape)
    for zy, zx in NEIGHBOURHOOD:
        d = window(padded, shape, zy + a[0], zx + a[1]) - window(padded, shape, zy + b[0], zx + b[1])
        acc = acc + np.abs(d) ** gamma
    return acc + epsilon


def weight_diag(source: np.ndarray, kind: str, params: EdgeParams = EdgeParams()) -> WeightField:
    try:
        (a1, b1), (a2, b2) = DIAG_DIFFS[kind]
    except KeyError:
        raise ConfigError(f"unknown diagonal weight kind {kind!r}") from None
    src = np.asarray(source, dtype=np.float64)
    p = pad(src, PAD)
    return WeightField(
        _accumulate(p, src.shape, a1, b1, params.gamma, params.epsilon),
        _accumulate(p, src.shape, a2, b2, params.gamma, params.epsilon),
    )


def weight_hv(g1: np.ndarray, g2: np.ndarray, kind: str, params: EdgeParams = EdgeParams()) -> WeightField:
    if np.shape(g1) != np.shape(g2):
        raise DimensionError(f"green planes differ in shape: {np.shape(g1)} vs {np.shape(g2)}")
    try:
        spec = HV_DIFFS[kind]
    except KeyError:
        raise ConfigError(f"unknown horizontal-vertical weight kind {kind!r}") from None
    padded = {
        "g1": pad(np.asarray(g1, dtype=np.float64), PAD),
        "g2": pad(np.asarray(g2, dtype=np.float64), PAD),
    }
    shape = np.shape(g1)
    w = [_accumulate(padded[name], shape, a, b, params.gamma, params.epsilon) for name, a, b in spec]
    return WeightField(w[0], w[1])


def weighted_diag_stencil(p: float, field: WeightField, orientation: str = "generic") -> list:
    """Per-pixel taps ``(dy, dx, weight_plane)`` of the weighted diagonal predict."""
    pair1, pair2 = DIAG_TAPS[orientation]
    return [(dy, dx, p * field.fraction) for dy, dx in pair1] + [
        (dy, dx, p * field.complement) for dy, dx in pair2
    ]


def weighted_hv_stencil(p: float, field: WeightField, kind: str) -> list:
    """Per-pixel taps ``(plane, dy, dx, weight_plane)``; horizontal taps carry W1."""
    (hname, htaps), (vname, vtaps) = HV_TAPS[kind]
    return [(hname, dy, dx, p * field.fraction) for dy, dx in htaps] + [
        (vname, dy, dx, p * field.complement) for dy, dx in vtaps
    ]
