"""Bayer mosaics and their quarter-resolution channel/subband planes.

A mosaic is RGGB: within each 2x2 macropixel the top row holds R then G1,
the bottom row holds G2 then B. ``G1`` is therefore the green sharing a row
with red and ``G2`` the green sharing a row with blue.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError, RangeError

INTEGER = "integer-lossless"
REAL = "real-lossy"
MODES = (INTEGER, REAL)

PHASES = ("RGGB",)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class BayerMosaic:
    samples: np.ndarray
    bit_depth: int
    phase: str = "RGGB"

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.ndim != 2:
            raise DimensionError(f"mosaic must be 2-D, got shape {s.shape}")
        h, w = s.shape
        if h == 0 or w == 0 or h % 2 or w % 2:
            raise DimensionError(f"mosaic dimensions must be even and non-zero, got {w}x{h}")
        if not 8 <= self.bit_depth <= 16:
            raise ConfigError(f"bit depth must be in [8, 16], got {self.bit_depth}")
        if self.phase not in PHASES:
            raise ConfigError(f"unsupported CFA phase {self.phase!r}")
        if not np.issubdtype(s.dtype, np.integer):
            if not np.all(np.floor(s) == s):
                raise RangeError("mosaic samples must be integers")
        s = s.astype(np.int64)
        if s.size and (s.min() < 0 or s.max() >= 1 << self.bit_depth):
            raise RangeError(
                f"samples must lie in [0, {(1 << self.bit_depth) - 1}], "
                f"got [{s.min()}, {s.max()}]"
            )
        object.__setattr__(self, "samples", _frozen(s))

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    def __eq__(self, other):
        if not isinstance(other, BayerMosaic):
            return NotImplemented
        return (
            self.bit_depth == other.bit_depth
            and self.phase == other.phase
            and np.array_equal(self.samples, other.samples)
        )


def _check_planes(planes) -> None:
    shapes = {p.shape for p in planes}
    if len(shapes) != 1:
        raise DimensionError(f"planes have mismatched shapes {sorted(shapes)}")
    (shape,) = shapes
    if len(shape) != 2 or 0 in shape:
        raise DimensionError(f"planes must be non-empty 2-D arrays, got {shape}")


def _plane_mode(planes) -> str:
    if all(np.issubdtype(p.dtype, np.integer) for p in planes):
        return INTEGER
    return REAL


@dataclass(frozen=True, eq=False)
class ChannelQuad:
    """The four macropixel planes in slot order (G1, G2, B, R)."""

    g1: np.ndarray
    g2: np.ndarray
    b: np.ndarray
    r: np.ndarray

    def __post_init__(self):
        planes = [np.asarray(p) for p in (self.g1, self.g2, self.b, self.r)]
        _check_planes(planes)
        dtype = np.int64 if _plane_mode(planes) == INTEGER else np.float64
        for name, p in zip(("g1", "g2", "b", "r"), planes):
            object.__setattr__(self, name, _frozen(p.astype(dtype)))

    @classmethod
    def from_planes(cls, planes) -> "ChannelQuad":
        return cls(*planes)

    @property
    def planes(self) -> tuple:
        return (self.g1, self.g2, self.b, self.r)

    @property
    def shape(self) -> tuple:
        return self.g1.shape

    @property
    def mode(self) -> str:
        return _plane_mode(self.planes)

    def __eq__(self, other):
        if not isinstance(other, ChannelQuad):
            return NotImplemented
        return all(np.array_equal(a, b) for a, b in zip(self.planes, other.planes))


@dataclass(frozen=True, eq=False)
class SubbandQuad:
    """Decorrelated planes (Y, Dg, C1, C2).

    ``dc_offset`` is zero for in-memory subbands; the container format adds
    it to the three difference planes so they can be stored unsigned.
    """

    y: np.ndarray
    dg: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    mode: str = INTEGER
    bit_depth: int = 16
    dc_offset: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}")
        planes = [np.asarray(p) for p in (self.y, self.dg, self.c1, self.c2)]
        _check_planes(planes)
        if self.mode == INTEGER:
            for p in planes:
                if not np.issubdtype(p.dtype, np.integer) and not np.all(np.floor(p) == p):
                    raise RangeError("integer-mode subbands must hold integers")
            dtype = np.int64
        else:
            dtype = np.float64
        for name, p in zip(("y", "dg", "c1", "c2"), planes):
            object.__setattr__(self, name, _frozen(p.astype(dtype)))

    @property
    def planes(self) -> tuple:
        return (self.y, self.dg, self.c1, self.c2)

    @property
    def shape(self) -> tuple:
        return self.y.shape

    def __eq__(self, other):
        if not isinstance(other, SubbandQuad):
            return NotImplemented
        return self.mode == other.mode and all(
            np.array_equal(a, b) for a, b in zip(self.planes, other.planes)
        )


def split_mosaic(m: BayerMosaic) -> ChannelQuad:
    s = m.samples
    return ChannelQuad(g1=s[0::2, 1::2], g2=s[1::2, 0::2], b=s[1::2, 1::2], r=s[0::2, 0::2])


def merge_quad(q: ChannelQuad, bit_depth: int) -> BayerMosaic:
    """Interleave an integer quad back into an RGGB mosaic."""
    if q.mode != INTEGER:
        raise RangeError("only integer quads can be merged into a mosaic")
    hi = 1 << bit_depth
    for name, p in zip(("g1", "g2", "b", "r"), q.planes):
        if p.min() < 0 or p.max() >= hi:
            raise RangeError(
                f"plane {name} has values in [{p.min()}, {p.max()}], outside [0, {hi - 1}]"
            )
    h, w = q.shape
    out = np.empty((2 * h, 2 * w), dtype=np.int64)
    out[0::2, 0::2] = q.r
    out[0::2, 1::2] = q.g1
    out[1::2, 0::2] = q.g2
    out[1::2, 1::2] = q.b
    return BayerMosaic(out, bit_depth)
