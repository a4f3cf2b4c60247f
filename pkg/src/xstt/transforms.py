"""Spectral-spatial transform catalog: three WSSTs, XSTT-I and XSTT-II.

Every family is a cascade of lifting stages over four physical slots that
start out as (G1, G2, B, R). Channel permutations between wavelet blocks are
folded into slot bookkeeping, so no data moves; the final slot order gives
(Y, Dg, C1, C2).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .cfa import INTEGER, MODES, REAL, BayerMosaic, ChannelQuad, SubbandQuad, merge_quad, split_mosaic
from .edge import EPSILON, EdgeParams, WeightField, weight_diag, weight_hv
from .errors import ConfigError
from .lifting import (
    LEGALL53, ONE, PREDICT, UPDATE, Z1, Z2, LiftingStage, Term, WaveletCoeffs,
    apply_stage, dc_matrix, get_wavelet, inv, invert_stage, mul, shifted,
)

FAMILIES = ("WSST-YDgCbCr", "WSST-YDgCoCg", "WSST-YDgCoCg2", "XSTT-I", "XSTT-II")
XSTT_FAMILIES = ("XSTT-I", "XSTT-II")

ZB1 = inv(Z1)
ZB2 = inv(Z2)

# slot permutations applied between wavelet blocks
PERMUTATIONS = {
    0: ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
    1: ((0, 0, 1, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1)),
    2: ((1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (0, 1, 0, 0)),
    3: ((0, 0, 1, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 1, 0, 0)),
    4: ((0, 1, 0, 0), (0, 0, 1, 0), (1, 0, 0, 0), (0, 0, 0, 1)),
    5: ((0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1)),
}

# diagonal weight orientation by the arguments of the 2-D predict
_DIAG_KIND = {(ZB1, Z2): "g1-to-g2", (ZB1, ZB2): "b-to-r"}


@dataclass(frozen=True)
class TransformSpec:
    family: str
    wavelet: str = "5/3"
    edge_aware: bool = False
    gamma: Optional[float] = None
    epsilon: float = EPSILON
    mode: str = INTEGER

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        object.__setattr__(self, "wavelet", get_wavelet(self.wavelet).name)
        if self.gamma is None:
            object.__setattr__(self, "gamma", EdgeParams.for_mode(self.mode).gamma)
        EdgeParams(self.gamma, self.epsilon)

    @property
    def coeffs(self) -> WaveletCoeffs:
        return get_wavelet(self.wavelet)

    @property
    def edge_params(self) -> EdgeParams:
        return EdgeParams(self.gamma, self.epsilon)

    @property
    def label(self) -> str:
        prefix = "E" if self.edge_aware and self.family in XSTT_FAMILIES else ""
        tag = "+edge" if self.edge_aware and not prefix else ""
        return f"{prefix}{self.family}{tag}/{self.wavelet}"


@dataclass
class WeightLog:
    """Weight fields in the order they were computed, keyed by stage index."""

    entries: List[tuple] = field(default_factory=list)

    def add(self, index: int, stage: LiftingStage, weights: WeightField) -> None:
        self.entries.append((index, stage.name, weights))

    def ordered(self) -> list:
        return sorted(self.entries, key=lambda e: e[0])

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class StagePlan:
    stages: tuple
    outputs: tuple  # physical slots holding (Y, Dg, C1, C2)


# -- polynomial stencils ------------------------------------------------------

def _p1(w, wav):
    return (ONE,) if wav.single_tap else (ONE, inv(w))


def _u1(w, wav):
    return (ONE,) if wav.single_tap else (ONE, w)


def _p2_pairs(w1, w2, wav):
    if wav.single_tap:
        return ((ONE,),)
    return ((ONE, mul(inv(w1), inv(w2))), (inv(w1), inv(w2)))


def _u2(w1, w2, wav):
    return (ONE,) if wav.single_tap else (ONE, w1, w2, mul(w1, w2))


class _Builder:
    def __init__(self, rounding: str, edge_aware: bool):
        self.pos = [0, 1, 2, 3]
        self.stages: list = []
        self.rounding = rounding
        self.edge_aware = edge_aware

    def slot(self, logical):
        return self.pos[logical]

    def permute(self, j):
        self.pos = [self.pos[row.index(1)] for row in PERMUTATIONS[j]]

    def add(self, role, target, terms, coeff, name, rounding=None, weighting="none", kind=None):
        self.stages.append(
            LiftingStage(
                role, target, tuple(terms), coeff,
                rounding=rounding or self.rounding,
                weighting=weighting, weight_kind=kind, name=name,
            )
        )

    def dwt1d(self, a, b, w, wav, tag):
        sa, sb = self.slot(a), self.slot(b)
        for k in range(wav.steps):
            self.add(PREDICT, sb, [Term(sa, _p1(w, wav))], wav.p[k], f"{tag}.P{k}")
            self.add(UPDATE, sa, [Term(sb, _u1(w, wav))], wav.u[k], f"{tag}.U{k}")

    def dwt2d(self, a, b, w1, w2, wav, tag):
        sa, sb = self.slot(a), self.slot(b)
        pairs = _p2_pairs(w1, w2, wav)
        weighted = self.edge_aware and len(pairs) == 2
        for k in range(wav.steps):
            if len(pairs) == 2:
                terms = [Term(sa, pairs[0], 0.5), Term(sa, pairs[1], 0.5)]
            else:
                terms = [Term(sa, pairs[0], 1.0)]
            self.add(
                PREDICT, sb, terms, wav.p[k], f"{tag}.P{k}",
                weighting="diag" if weighted else "none",
                kind=_DIAG_KIND[(w1, w2)] if weighted else None,
            )
            share = 1.0 if wav.single_tap else 0.5
            self.add(UPDATE, sa, [Term(sb, _u2(w1, w2, wav), share)], wav.u[k], f"{tag}.U{k}")

    def dwt3(self, a, b, c, w1, w2, wav, tag):
        sa, sb, sc = self.slot(a), self.slot(b), self.slot(c)
        for k in range(wav.steps):
            self.add(PREDICT, sb, [Term(sa, _p1(w1, wav))], wav.p[k], f"{tag}.P{k}b")
            self.add(PREDICT, sc, [Term(sa, _p1(w2, wav))], wav.p[k], f"{tag}.P{k}c")
            self.add(
                UPDATE, sa,
                [Term(sb, _u1(w1, wav), 0.5), Term(sc, _u1(w2, wav), 0.5)],
                wav.u[k], f"{tag}.U{k}",
            )

    def wp(self, k, wav, rounding=None):
        g1, g2, b, r = (self.slot(i) for i in range(4))
        weighting = "hv" if self.edge_aware else "none"
        # horizontal term first: it carries W1
        self.add(
            PREDICT, b, [Term(g2, _p1(Z1, wav), 0.5), Term(g1, _p1(Z2, wav), 0.5)],
            wav.p[k], f"Wp{k}.B", rounding, weighting, "to-b" if self.edge_aware else None,
        )
        self.add(
            PREDICT, r, [Term(g1, _p1(ZB1, wav), 0.5), Term(g2, _p1(ZB2, wav), 0.5)],
            wav.p[k], f"Wp{k}.R", rounding, weighting, "to-r" if self.edge_aware else None,
        )

    def wu(self, k, wav, rounding=None, reduced=False):
        g1, g2, b, r = (self.slot(i) for i in range(4))
        self.add(
            UPDATE, g1, [Term(b, _u1(Z2, wav), 0.5), Term(r, _u1(ZB1, wav), 0.5)],
            wav.u[k], f"Wu{k}.G1", rounding,
        )
        if not reduced:
            self.add(
                UPDATE, g2, [Term(b, _u1(Z1, wav), 0.5), Term(r, _u1(ZB2, wav), 0.5)],
                wav.u[k], f"Wu{k}.G2", rounding,
            )


def build_plan(spec: TransformSpec) -> StagePlan:
    wav = spec.coeffs
    b = _Builder("floor" if spec.mode == INTEGER else "none", spec.edge_aware)
    fam = spec.family
    if fam == "WSST-YDgCbCr":
        b.dwt2d(0, 1, ZB1, Z2, wav, "G")
        b.permute(0)
        b.dwt3(1, 2, 3, ZB1, Z2, wav, "L")
        b.permute(0)
    elif fam == "WSST-YDgCoCg":
        b.dwt2d(0, 1, ZB1, Z2, wav, "G")
        b.dwt2d(2, 3, ZB1, ZB2, wav, "BR")
        b.permute(1)
        b.dwt1d(0, 1, ZB2, wav, "L")
        b.permute(2)
    elif fam == "WSST-YDgCoCg2":
        b.permute(2)
        b.dwt1d(0, 1, Z2, wav, "V1")
        b.dwt1d(2, 3, Z2, wav, "V0")
        b.permute(3)
        b.dwt1d(0, 1, Z1, wav, "HL")
        b.dwt1d(2, 3, Z1, wav, "HH")
        b.permute(4)
        b.dwt2d(0, 1, ZB1, Z2, wav, "D")
        b.permute(5)
    elif fam == "XSTT-I":
        for k in range(wav.steps):
            b.wp(k, wav)
            b.wu(k, wav)
        b.dwt2d(0, 1, ZB1, Z2, wav, "G")
    else:  # XSTT-II
        if wav.steps > 1:
            # only the middle block takes N >= 2; the outer steps stay 5/3
            outer, rounding = LEGALL53, "floor"
        else:
            outer, rounding = wav, None
        b.wp(0, outer, rounding)
        b.dwt2d(0, 1, ZB1, Z2, wav, "G")
        b.wu(0, outer, rounding, reduced=True)
    return StagePlan(tuple(b.stages), tuple(b.pos))


def build_stages(spec: TransformSpec) -> tuple:
    return build_plan(spec).stages


def spec_dc_matrix(spec: TransformSpec) -> np.ndarray:
    plan = build_plan(spec)
    return dc_matrix(plan.stages, plan.outputs)


# -- execution ------------------------------------------------------------------

def stage_weights(planes, stage: LiftingStage, params: EdgeParams) -> Optional[WeightField]:
    """Weight field for ``stage`` from the current state of its sources."""
    if stage.weighting == "diag":
        return weight_diag(planes[stage.terms[0].source], stage.weight_kind, params)
    if stage.weighting == "hv":
        first, second = stage.terms[0].source, stage.terms[1].source
        if stage.weight_kind == "to-r":
            g1, g2 = first, second
        else:
            g2, g1 = first, second
        return weight_hv(planes[g1], planes[g2], stage.weight_kind, params)
    return None


def run_forward(planes, plan: StagePlan, params: EdgeParams, log: Optional[WeightLog] = None) -> tuple:
    planes = tuple(planes)
    for i, stage in enumerate(plan.stages):
        w = stage_weights(planes, stage, params)
        if w is not None and log is not None:
            log.add(i, stage, w)
        planes = apply_stage(planes, stage, w)
    return planes


def run_inverse(planes, plan: StagePlan, params: EdgeParams, log: Optional[WeightLog] = None) -> tuple:
    planes = tuple(planes)
    for i in reversed(range(len(plan.stages))):
        stage = plan.stages[i]
        if stage.rounding == "floor" and not np.issubdtype(planes[stage.target].dtype, np.integer):
            # Rounded stages inside a real-valued cascade only ever read
            # integer-valued planes on the encoder side; snap the decoded
            # sources back so float residue cannot flip a floor.
            planes = tuple(np.rint(p) if k in stage.sources else p for k, p in enumerate(planes))
        w = stage_weights(planes, stage, params)
        if w is not None and log is not None:
            log.add(i, stage, w)
        planes = invert_stage(planes, stage, w)
    return planes


def forward_quad(quad: ChannelQuad, spec: TransformSpec, bit_depth: int = 16):
    dtype = np.int64 if spec.mode == INTEGER else np.float64
    plan = build_plan(spec)
    log = WeightLog()
    out = run_forward([p.astype(dtype) for p in quad.planes], plan, spec.edge_params, log)
    sub = SubbandQuad(*(out[s] for s in plan.outputs), mode=spec.mode, bit_depth=bit_depth)
    return sub, log


def forward(m: BayerMosaic, spec: TransformSpec):
    """Decorrelate a mosaic; returns the subbands and the encoder weight log."""
    return forward_quad(split_mosaic(m), spec, m.bit_depth)


def inverse_quad(s: SubbandQuad, spec: TransformSpec):
    """Undo the transform, recomputing edge weights from the decoded planes.

    Returns the channel quad (integer or real, per mode) and the decoder-side
    weight log.
    """
    if s.mode != spec.mode:
        raise ConfigError(f"subbands are {s.mode} but the transform is {spec.mode}")
    plan = build_plan(spec)
    planes: list = [None] * 4
    for slot, plane in zip(plan.outputs, s.planes):
        planes[slot] = plane
    log = WeightLog()
    out = run_inverse(planes, plan, spec.edge_params, log)
    return ChannelQuad(*out), log


def inverse(s: SubbandQuad, spec: TransformSpec) -> BayerMosaic:
    quad, _ = inverse_quad(s, spec)
    if spec.mode == REAL:
        hi = (1 << s.bit_depth) - 1
        quad = ChannelQuad(*(np.clip(np.rint(p), 0, hi).astype(np.int64) for p in quad.planes))
    return merge_quad(quad, s.bit_depth)


# -- direct Star-Tetrix reference --------------------------------------------------

def stt_forward_direct(m: BayerMosaic) -> SubbandQuad:
    """Star-Tetrix transform written out sample by sample from its four steps.

    Neighbours are addressed in the full-resolution mosaic and translated to
    macropixel offsets; borders use the same symmetric extension as lifting.
    ``Y1`` sits on the red-row green, ``Y2`` on the blue-row green.
    """
    q = split_mosaic(m)
    g_r, g_b, b, r = (p.astype(np.int64) for p in q.planes)
    s = shifted
    # step 1: chroma from the four surrounding greens
    cb = b - (s(g_b, 0, 0) + s(g_b, 0, 1) + s(g_r, 0, 0) + s(g_r, 1, 0)) // 4
    cr = r - (s(g_r, 0, -1) + s(g_r, 0, 0) + s(g_b, -1, 0) + s(g_b, 0, 0)) // 4
    # step 2: greens updated from the surrounding chroma
    y1 = g_r + (s(cr, 0, 0) + s(cr, 0, 1) + s(cb, -1, 0) + s(cb, 0, 0)) // 8
    y2 = g_b + (s(cr, 0, 0) + s(cr, 1, 0) + s(cb, 0, -1) + s(cb, 0, 0)) // 8
    # step 3: Y1 predicted from its four diagonal Y2 neighbours
    delta = y1 - (s(y2, -1, 0) + s(y2, -1, 1) + s(y2, 0, 0) + s(y2, 0, 1)) // 4
    # step 4: Y2 updated from its four diagonal deltas
    y = y2 + (s(delta, 0, -1) + s(delta, 0, 0) + s(delta, 1, -1) + s(delta, 1, 0)) // 8
    return SubbandQuad(y, delta, cb, cr, mode=INTEGER, bit_depth=m.bit_depth)
