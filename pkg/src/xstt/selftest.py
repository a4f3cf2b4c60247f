"""Invariant checks run by ``xstt selftest``.

Each check yields ``(name, status, detail)`` with status ``pass``, ``fail``
or ``known``. ``known`` marks a comparison whose outcome is a documented
deviation; it is reported but does not fail the run.
"""
from __future__ import annotations

import itertools

import numpy as np

from .cfa import INTEGER, REAL
from .lifting import WAVELETS
from .synth import random_mosaic, synth_mosaic
from .transforms import (
    FAMILIES, XSTT_FAMILIES, TransformSpec, forward, inverse, spec_dc_matrix, stt_forward_direct,
)

HAAR_DC = np.array([
    [0.25, 0.25, 0.25, 0.25],
    [-1.0, 1.0, 0.0, 0.0],
    [-0.5, -0.5, 1.0, 0.0],
    [-0.5, -0.5, 0.0, 1.0],
])


def all_specs(mode=INTEGER):
    for fam, wav, edge in itertools.product(FAMILIES, WAVELETS, (False, True)):
        yield TransformSpec(fam, wav, edge, mode=mode)


def _mosaics(seed, count):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        h, w = (2 * int(v) for v in rng.integers(4, 17, size=2))
        yield random_mosaic(rng, h, w, int(rng.integers(8, 15)))


def _transposed(m):
    from .cfa import BayerMosaic

    return BayerMosaic(m.samples.T, m.bit_depth)


def check_round_trips(count=6, seed=1):
    ms = list(_mosaics(seed, count))
    for mode in (INTEGER, REAL):
        bad = [
            s.label for s in all_specs(mode)
            if any(inverse(forward(m, s)[0], s) != m for m in ms)
        ]
        yield f"round-trip-{mode}", "fail" if bad else "pass", ", ".join(bad) or f"{count} mosaics x 30 specs"


def check_stt(count=10, seed=2):
    spec = TransformSpec("XSTT-I", "5/3")
    ms = list(_mosaics(seed, count))
    transposed = literal = 0
    for m in ms:
        ref = stt_forward_direct(m)
        lifted, _ = forward(_transposed(m), spec)
        if all(np.array_equal(a, b.T) for a, b in zip(ref.planes, lifted.planes)):
            transposed += 1
        if forward(m, spec)[0] == ref:
            literal += 1
    yield "stt-transposed", "pass" if transposed == count else "fail", f"{transposed}/{count} equal"
    yield "stt-literal", "known", f"{literal}/{count} equal (greens are predicted in mirrored roles)"


def check_dc_matrices():
    for fam in ("XSTT-I", "XSTT-II", "WSST-YDgCbCr"):
        for wav in ("haar", "5/3"):
            err = float(np.abs(spec_dc_matrix(TransformSpec(fam, wav)) - HAAR_DC).max())
            yield f"dc-matrix-{fam}-{wav}", "pass" if err <= 1e-12 else "fail", f"max error {err:.3g}"


def check_weight_neutrality(count=4, seed=3):
    ms = list(_mosaics(seed, count)) + [synth_mosaic("diag-edge-45", 32, 12)]
    bad = []
    for fam, wav in itertools.product(XSTT_FAMILIES, WAVELETS):
        plain = TransformSpec(fam, wav)
        edge = TransformSpec(fam, wav, True, gamma=0.0)
        if any(forward(m, plain)[0] != forward(m, edge)[0] for m in ms):
            bad.append(edge.label)
    yield "weight-neutrality", "fail" if bad else "pass", ", ".join(bad) or "gamma=0 matches unweighted"


def check_constant_law():
    m = synth_mosaic("constant", 16, 12)
    for wav in WAVELETS:
        bad = []
        for fam, edge in itertools.product(FAMILIES, (False, True)):
            s = TransformSpec(fam, wav, edge)
            sub, _ = forward(m, s)
            if any(np.any(p != 0) for p in (sub.dg, sub.c1, sub.c2)):
                bad.append(s.label)
        status = "pass" if not bad else ("known" if wav == "9/7" else "fail")
        yield f"constant-law-{wav}", status, ", ".join(bad) or "zero Dg, C1, C2"


CHECKS = (check_round_trips, check_stt, check_dc_matrices, check_weight_neutrality, check_constant_law)


def run_selftest():
    results = []
    for check in CHECKS:
        results.extend(check())
    return results
