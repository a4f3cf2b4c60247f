"""Acceptance criteria, one test each. Every test prints a single
``criterion N: PASS|FAIL ...`` line (run with ``-s`` to see them)."""
import itertools
import time

import numpy as np
import pytest

from xstt.cfa import INTEGER, REAL, BayerMosaic
from xstt.lifting import WAVELETS
from xstt.metrics import dg_energy, dg_improvement, entropy_bpp, rd_sweep, weight_divergence
from xstt.selftest import HAAR_DC
from xstt.synth import random_mosaic, synth_mosaic
from xstt.transforms import (
    FAMILIES, XSTT_FAMILIES, TransformSpec, forward, inverse, inverse_quad,
    spec_dc_matrix, stt_forward_direct,
)

STEPS = [1, 2, 4, 8, 16, 32, 64]
# fixed after the first measurement (smallest reduction seen was 47.8 %)
EDGE_THRESHOLD_PCT = 10.0
RD_FIXTURES = ("diag-edge-45", "diag-edge-135", "noise")


def all_specs(mode=INTEGER):
    return [TransformSpec(f, w, e, mode=mode)
            for f, w, e in itertools.product(FAMILIES, WAVELETS, (False, True))]


def report(n, ok, detail):
    print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def random_mosaics(seed, count):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        h, w = (2 * int(v) for v in rng.integers(4, 33, size=2))
        out.append(random_mosaic(rng, h, w, int(rng.integers(8, 15))))
    return out


def test_criterion_1_perfect_reconstruction():
    ms = random_mosaics(2024, 200)
    specs = all_specs()
    t0 = time.perf_counter()
    bad = []
    for spec in specs:
        for k, m in enumerate(ms):
            if inverse(forward(m, spec)[0], spec) != m:
                bad.append(f"{spec.label}#{k}")
    elapsed = time.perf_counter() - t0
    report(1, not bad and elapsed < 30,
           f"{len(ms)} mosaics x {len(specs)} specs, {len(bad)} mismatches, {elapsed:.1f}s")


def test_criterion_2_stt_equivalence():
    spec = TransformSpec("XSTT-I", "5/3")
    ms = random_mosaics(7, 100)
    equal = sum(forward(m, spec)[0] == stt_forward_direct(m) for m in ms)
    report(2, equal == len(ms), f"{equal}/{len(ms)} mosaics bit-exact against the direct transform")


def test_criterion_3_haar_matrix_identities():
    errs = {}
    for fam in ("XSTT-I", "XSTT-II", "WSST-YDgCbCr"):
        errs[fam] = float(np.abs(spec_dc_matrix(TransformSpec(fam, "haar")) - HAAR_DC).max())
    report(3, max(errs.values()) <= 1e-12,
           ", ".join(f"{k} max error {v:.1e}" for k, v in errs.items()))


def test_criterion_4_weight_neutrality():
    ms = random_mosaics(11, 20) + [synth_mosaic(k, 64, 12) for k in
                                   ("diag-edge-45", "diag-edge-135", "h-stripes", "noise")]
    bad = []
    for fam, wav, mode in itertools.product(XSTT_FAMILIES, WAVELETS, (INTEGER, REAL)):
        plain = TransformSpec(fam, wav, mode=mode)
        edge = TransformSpec(fam, wav, True, gamma=0.0, mode=mode)
        if any(forward(m, plain)[0] != forward(m, edge)[0] for m in ms):
            bad.append(f"{edge.label}/{mode}")
    report(4, not bad, f"{len(ms)} mosaics, mismatching: {bad or 'none'}")


def test_criterion_5_edge_benefit():
    lines, ok = [], True
    for kind in ("diag-edge-45", "diag-edge-135", "constant"):
        m = synth_mosaic(kind, 64, 12)
        for fam, wav in itertools.product(XSTT_FAMILIES, ("5/3", "9/7")):
            base = dg_energy(forward(m, TransformSpec(fam, wav))[0])
            edge = dg_energy(forward(m, TransformSpec(fam, wav, True, gamma=1.0))[0])
            pct = dg_improvement(edge, base)
            good = pct == 0.0 if kind == "constant" else pct <= -EDGE_THRESHOLD_PCT
            ok &= good
            lines.append(f"{kind} E{fam}/{wav} {pct:+.1f}%")
    report(5, ok, "; ".join(lines))


def test_criterion_6_weight_divergence():
    lossless = []
    ms = random_mosaics(5, 10) + [synth_mosaic("diag-edge-45", 64, 12)]
    for fam, wav in itertools.product(XSTT_FAMILIES, WAVELETS):
        spec = TransformSpec(fam, wav, True)
        for m in ms:
            sub, enc = forward(m, spec)
            lossless.append(weight_divergence(enc, inverse_quad(sub, spec)[1]))
    edge = synth_mosaic("diag-edge-45", 64, 12)
    lossy, ok = [], all(d == 0.0 for d in lossless)
    for fam, wav in itertools.product(XSTT_FAMILIES, WAVELETS):
        r4, r64 = rd_sweep(edge, TransformSpec(fam, wav, True, mode=REAL), [4, 64])
        ok &= r64.weight_divergence >= r4.weight_divergence
        lossy.append(f"E{fam}/{wav} {r4.weight_divergence:.4f}->{r64.weight_divergence:.4f}")
    report(6, ok, f"lossless max {max(lossless)}; lossy step 4->64: " + ", ".join(lossy))


def test_criterion_7_rd_sanity():
    bad = []
    fixtures = [(k, synth_mosaic(k, 64, 12)) for k in RD_FIXTURES]
    for spec in all_specs(REAL):
        for kind, m in fixtures:
            reps = rd_sweep(m, spec, STEPS)
            bpp = [r.bpp for r in reps]
            ps = [r.psnr for r in reps]
            if any(b > a for a, b in zip(bpp, bpp[1:])) or any(b > a for a, b in zip(ps, ps[1:])):
                bad.append(f"{spec.label} on {kind}: bpp {np.round(bpp, 3).tolist()} "
                           f"psnr {np.round(ps, 2).tolist()}")
    report(7, not bad, f"{30 * len(fixtures)} sweeps, non-monotone: {bad or 'none'}")


def test_criterion_8_constant_signal_law():
    m = synth_mosaic("constant", 32, 12)
    bad = []
    for spec in all_specs(INTEGER) + all_specs(REAL):
        sub, _ = forward(m, spec)
        detail_zero = all(np.all(p == 0) for p in (sub.dg, sub.c1, sub.c2))
        entropy_zero = all(entropy_bpp(p) == 0 for p in sub.planes)
        if not (detail_zero and entropy_zero):
            peak = max(float(np.abs(p).max()) for p in (sub.dg, sub.c1, sub.c2))
            bad.append(f"{spec.label}/{spec.mode[:4]} peak {peak:.3g}")
    report(8, not bad, f"60 specs, violating: {bad or 'none'}")
