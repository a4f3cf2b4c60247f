"""Rate/distortion harness: Dg energy, entropy proxy, dead-zone quantizer.

Rates here are zeroth-order entropies of subband samples (or quantizer
indices), not the output of a real wavelet codec. They rank transforms
against each other on the same image and nothing more. PSNR is measured on
the raw mosaic, before any development pipeline.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from .cfa import REAL, BayerMosaic, SubbandQuad
from .errors import ConfigError
from .transforms import TransformSpec, WeightLog, forward, inverse_quad

PSNR_CAP = 200.0


@dataclass
class RateReport:
    entropy_y: float
    entropy_dg: float
    entropy_c1: float
    entropy_c2: float
    bpp: float
    dg_energy: float
    psnr: Optional[float] = None
    quant_step: Optional[float] = None
    weight_divergence: Optional[float] = None

    @property
    def entropies(self) -> tuple:
        return (self.entropy_y, self.entropy_dg, self.entropy_c1, self.entropy_c2)

    def as_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def dg_energy(s: SubbandQuad) -> float:
    return float(np.mean(np.square(s.dg.astype(np.float64))))


def dg_improvement(edge_energy: float, base_energy: float) -> float:
    """Percent change of Dg energy; negative means the edge-aware variant wins."""
    if base_energy == 0:
        return 0.0 if edge_energy == 0 else math.inf
    return 100.0 * (edge_energy - base_energy) / base_energy


def entropy_bpp(plane) -> float:
    _, counts = np.unique(np.asarray(plane).ravel(), return_counts=True)
    if len(counts) <= 1:
        return 0.0
    p = counts / counts.sum()
    return float(-(p * np.log2(p)).sum())


def quantize(plane, step: float) -> np.ndarray:
    if not step > 0:
        raise ConfigError(f"quantizer step must be positive, got {step}")
    x = np.asarray(plane, dtype=np.float64)
    return (np.sign(x) * np.floor(np.abs(x) / step)).astype(np.int64)


def dequantize(indices, step: float) -> np.ndarray:
    if not step > 0:
        raise ConfigError(f"quantizer step must be positive, got {step}")
    q = np.asarray(indices)
    return np.sign(q) * (np.abs(q) + 0.5) * step


def psnr(reference: BayerMosaic, test: BayerMosaic) -> float:
    ref = reference.samples.astype(np.float64)
    mse = float(np.mean((ref - test.samples.astype(np.float64)) ** 2))
    if mse == 0:
        return PSNR_CAP
    peak = (1 << reference.bit_depth) - 1
    return min(PSNR_CAP, 10.0 * math.log10(peak * peak / mse))


def rate_report(s: SubbandQuad) -> RateReport:
    ent = [entropy_bpp(p) for p in s.planes]
    return RateReport(*ent, bpp=float(np.mean(ent)), dg_energy=dg_energy(s))


def weight_divergence(enc_log: WeightLog, dec_log: WeightLog) -> float:
    """Mean |encoder fraction - decoder fraction| over all edge-aware stages."""
    enc, dec = enc_log.ordered(), dec_log.ordered()
    if len(enc) != len(dec):
        raise ConfigError(f"weight logs hold {len(enc)} and {len(dec)} stages")
    if not enc:
        return 0.0
    total = 0.0
    count = 0
    for (i, name, we), (j, _, wd) in zip(enc, dec):
        if i != j:
            raise ConfigError(f"weight logs disagree on stage order at {name!r}")
        total += float(np.abs(we.fraction - wd.fraction).sum())
        count += we.fraction.size
    return total / count


def rd_sweep(m: BayerMosaic, spec: TransformSpec, steps: Sequence[float]) -> list:
    """Quantize the subbands at each step, decode, and measure rate and PSNR.

    The decoder recomputes edge weights from the dequantized planes, exactly
    as a real decoder without side information would.
    """
    if spec.mode != REAL:
        raise ConfigError("rd_sweep needs a real-lossy spec")
    from .transforms import inverse

    sub, enc_log = forward(m, spec)
    energy = dg_energy(sub)
    reports = []
    for step in steps:
        idx = [quantize(p, step) for p in sub.planes]
        deq = SubbandQuad(*(dequantize(q, step) for q in idx), mode=REAL, bit_depth=m.bit_depth)
        _, dec_log = inverse_quad(deq, spec)
        rec = inverse(deq, spec)
        ent = [entropy_bpp(q) for q in idx]
        reports.append(
            RateReport(
                *ent,
                bpp=float(np.mean(ent)),
                dg_energy=energy,
                psnr=psnr(m, rec),
                quant_step=float(step),
                weight_divergence=weight_divergence(enc_log, dec_log),
            )
        )
    return reports
