"""Lifting-step primitives on macropixel planes.

Offsets are ``(dy, dx)`` pairs on the quarter-resolution grid. The delay
``z1`` reads the left neighbour and ``z2`` the top neighbour, so the monomial
``z1**a * z2**b`` maps to the offset ``(-b, -a)``.

A stage adds ``coeff * sum_t share_t * sum(source_t[offsets_t])`` to its
target. In integer mode the increment is rounded once per pixel: update
stages add ``floor(inc)``, predict stages subtract ``floor(-inc)`` (the
floored prediction). Both are undone exactly by recomputing the same
increment from the untouched sources.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import ConfigError, DimensionError

Z1 = (0, -1)
Z2 = (-1, 0)
ONE = (0, 0)

PREDICT = "predict"
UPDATE = "update"

PAD = 2


def inv(o):
    return (-o[0], -o[1])


def mul(*offsets):
    return (sum(o[0] for o in offsets), sum(o[1] for o in offsets))


@dataclass(frozen=True)
class WaveletCoeffs:
    name: str
    p: tuple
    u: tuple

    def __post_init__(self):
        if len(self.p) != len(self.u):
            raise ConfigError("predict and update coefficient lists differ in length")

    @property
    def steps(self) -> int:
        return len(self.p)

    @property
    def single_tap(self) -> bool:
        return self.name == "haar"


HAAR = WaveletCoeffs("haar", (-1.0,), (0.5,))
LEGALL53 = WaveletCoeffs("5/3", (-0.5,), (0.25,))
CDF97 = WaveletCoeffs(
    "9/7",
    (-1.58613434205992, 0.882911075530940),
    (-0.05298011857295, 0.443506852043967),
)

WAVELETS = {w.name: w for w in (HAAR, LEGALL53, CDF97)}


def get_wavelet(name: str) -> WaveletCoeffs:
    try:
        return WAVELETS[name.lower()]
    except KeyError:
        raise ConfigError(f"unknown wavelet {name!r}; expected one of {sorted(WAVELETS)}") from None


@dataclass(frozen=True)
class Term:
    """One source channel read at a group of offsets, scaled by ``share``."""

    source: int
    offsets: tuple
    share: float = 1.0


@dataclass(frozen=True)
class Stencil:
    """Flat tap list ``(source, dy, dx, weight)`` of a stage."""

    taps: tuple

    @property
    def dc_gain(self) -> dict:
        gains: dict = {}
        for src, _, _, w in self.taps:
            gains[src] = gains.get(src, 0.0) + w
        return gains


@dataclass(frozen=True)
class LiftingStage:
    role: str
    target: int
    terms: tuple
    coeff: float
    rounding: str = "floor"
    weighting: str = "none"
    weight_kind: Optional[str] = None
    name: str = ""

    def __post_init__(self):
        if self.role not in (PREDICT, UPDATE):
            raise ConfigError(f"bad stage role {self.role!r}")
        if self.rounding not in ("floor", "none"):
            raise ConfigError(f"bad rounding {self.rounding!r}")
        if self.weighting not in ("none", "diag", "hv"):
            raise ConfigError(f"bad weighting {self.weighting!r}")
        if any(t.source == self.target for t in self.terms):
            raise ConfigError("a lifting stage may not read its own target")
        if self.weighting != "none" and len(self.terms) != 2:
            raise ConfigError("weighted stages need exactly two terms")

    @property
    def sources(self) -> tuple:
        return tuple(dict.fromkeys(t.source for t in self.terms))

    def stencil(self) -> Stencil:
        return Stencil(
            tuple(
                (t.source, dy, dx, self.coeff * t.share)
                for t in self.terms
                for dy, dx in t.offsets
            )
        )


@lru_cache(maxsize=256)
def _reflect(n: int, lo: int, hi: int) -> np.ndarray:
    idx = np.arange(lo, hi)
    if n == 1:
        return np.zeros_like(idx)
    period = 2 * (n - 1)
    m = np.mod(idx, period)
    return np.where(m < n, m, period - m)


def reflect_index(idx, n: int):
    """Whole-sample symmetric index reflection (-1 -> 1, n -> n-2)."""
    if n == 1:
        return np.zeros_like(idx) if isinstance(idx, np.ndarray) else 0
    period = 2 * (n - 1)
    m = np.mod(idx, period)
    return np.where(m < n, m, period - m) if isinstance(idx, np.ndarray) else (m if m < n else period - m)


def shifted_sample(plane: np.ndarray, x: int, y: int, dx: int, dy: int):
    h, w = plane.shape
    return plane[reflect_index(y + dy, h), reflect_index(x + dx, w)]


def pad(plane: np.ndarray, r: int = PAD) -> np.ndarray:
    h, w = plane.shape
    return plane[np.ix_(_reflect(h, -r, h + r), _reflect(w, -r, w + r))]


def window(padded: np.ndarray, shape, dy: int, dx: int, r: int = PAD) -> np.ndarray:
    h, w = shape
    return padded[r + dy : r + dy + h, r + dx : r + dx + w]


def shifted(plane: np.ndarray, dy: int, dx: int) -> np.ndarray:
    """The whole plane read at ``(i + dy, j + dx)`` with reflection."""
    h, w = plane.shape
    return plane[np.ix_(_reflect(h, dy, h + dy), _reflect(w, dx, w + dx))]


def stage_increment(planes: Sequence[np.ndarray], stage: LiftingStage, shares=None) -> np.ndarray:
    """Unrounded per-pixel increment of ``stage``.

    ``shares`` overrides the per-term shares (one scalar or plane per term);
    edge-aware stages pass their weight fractions here.
    """
    shape = planes[stage.target].shape
    cache: dict = {}
    acc = None
    for k, term in enumerate(stage.terms):
        if term.source not in cache:
            cache[term.source] = pad(np.asarray(planes[term.source], dtype=np.float64))
        src = cache[term.source]
        s = None
        for dy, dx in term.offsets:
            v = window(src, shape, dy, dx)
            s = v.copy() if s is None else s + v
        share = term.share if shares is None else shares[k]
        part = share * s
        acc = part if acc is None else acc + part
    return stage.coeff * acc


def _delta(planes, stage: LiftingStage, weights):
    if stage.weighting == "none":
        if weights is not None:
            raise ConfigError(f"stage {stage.name!r} is unweighted but weights were given")
        shares = None
    else:
        if weights is None:
            raise ConfigError(f"stage {stage.name!r} needs a weight field")
        if weights.fraction.shape != planes[stage.target].shape:
            raise DimensionError(
                f"weight field {weights.fraction.shape} does not match plane "
                f"{planes[stage.target].shape}"
            )
        shares = (weights.fraction, weights.complement)
    inc = stage_increment(planes, stage, shares)
    if stage.rounding == "none":
        if np.issubdtype(planes[stage.target].dtype, np.integer):
            raise ConfigError(f"stage {stage.name!r} has no rounding but planes are integer")
        return inc
    if stage.role == PREDICT:
        inc = -np.floor(-inc)
    else:
        inc = np.floor(inc)
    if np.issubdtype(planes[stage.target].dtype, np.integer):
        return inc.astype(np.int64)
    return inc


def _check(planes, stage):
    if len(planes) != 4:
        raise DimensionError("expected four planes")
    shapes = {np.shape(p) for p in planes}
    if len(shapes) != 1:
        raise DimensionError(f"planes have mismatched shapes {sorted(shapes)}")


def apply_stage(planes: Sequence[np.ndarray], stage: LiftingStage, weights=None) -> tuple:
    _check(planes, stage)
    out = list(planes)
    out[stage.target] = planes[stage.target] + _delta(planes, stage, weights)
    return tuple(out)


def invert_stage(planes: Sequence[np.ndarray], stage: LiftingStage, weights=None) -> tuple:
    _check(planes, stage)
    out = list(planes)
    out[stage.target] = planes[stage.target] - _delta(planes, stage, weights)
    return tuple(out)


def dc_matrix(stages: Sequence[LiftingStage], outputs: Sequence[int] = (0, 1, 2, 3)) -> np.ndarray:
    """Linear operator of the cascade with every delay set to one, no rounding.

    Columns are the input slots (G1, G2, B, R); rows follow ``outputs``.
    """
    m = np.eye(4)
    for stage in stages:
        s = np.eye(4)
        for src, gain in stage.stencil().dc_gain.items():
            s[stage.target, src] += gain
        m = s @ m
    return m[list(outputs)]
