"""Command-line front end: ``xstt forward|inverse|analyze|rd|synth|selftest``.

Reports are key=value lines, one record per block, blank line between
records. Exit codes: 0 success, 2 usage, 3 I/O or data error, 4 selftest
failure.
"""
from __future__ import annotations

import argparse
import sys

from .cfa import INTEGER, MODES, REAL
from .container import read_pgm, read_ssq, spec_from_header, write_pgm, write_ssq
from .errors import ConfigError, XsttError
from .lifting import WAVELETS
from .metrics import dg_energy, dg_improvement, rate_report, rd_sweep
from .synth import KINDS, synth_mosaic
from .transforms import FAMILIES, TransformSpec, forward, inverse

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_SELFTEST = 0, 2, 3, 4

DEFAULT_STEPS = "1,2,4,8,16,32,64"


class UsageError(Exception):
    pass


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def emit(records, out=None):
    out = out or sys.stdout
    blocks = ["\n".join(f"{k}={_fmt(v)}" for k, v in rec.items()) for rec in records]
    out.write("\n\n".join(blocks) + "\n")


def _report_fields(rep):
    d = rep.as_dict()
    return {k: d[k] for k in (
        "quant_step", "entropy_y", "entropy_dg", "entropy_c1", "entropy_c2",
        "bpp", "dg_energy", "psnr", "weight_divergence") if k in d}


def parse_spec_list(text):
    pairs = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        fam, sep, wav = item.partition(":")
        if not sep:
            raise UsageError(f"spec {item!r} is not FAMILY:WAVELET")
        if fam not in FAMILIES:
            raise UsageError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")
        if wav.lower() not in WAVELETS:
            raise UsageError(f"unknown wavelet {wav!r}; expected one of {', '.join(WAVELETS)}")
        pairs.append((fam, wav.lower()))
    if not pairs:
        raise UsageError("empty spec list")
    return pairs


def parse_steps(text):
    try:
        steps = [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad step list {text!r}") from None
    if not steps or any(s <= 0 for s in steps):
        raise UsageError("steps must be a non-empty list of positive numbers")
    return steps


def _make_spec(family, wavelet, edge, gamma, epsilon, mode):
    try:
        return TransformSpec(family, wavelet, edge, gamma, epsilon, mode)
    except ConfigError as e:
        raise UsageError(str(e)) from None


def cmd_forward(args):
    spec = _make_spec(args.family, args.wavelet, args.edge_aware, args.gamma, args.epsilon, args.mode)
    m = read_pgm(args.input)
    sub, _ = forward(m, spec)
    write_ssq(args.output, sub, spec)
    rec = {"input": args.input, "spec": spec.label, "mode": spec.mode}
    rec.update(_report_fields(rate_report(sub)))
    emit([rec])
    return EXIT_OK


def cmd_inverse(args):
    box = read_ssq(args.input)
    spec = spec_from_header(box.header)
    write_pgm(args.output, inverse(box.subbands, spec))
    return EXIT_OK


def cmd_analyze(args):
    m = read_pgm(args.input)
    records = []
    for fam, wav in parse_spec_list(args.specs):
        plain = _make_spec(fam, wav, False, args.gamma, args.epsilon, args.mode)
        edge = _make_spec(fam, wav, True, args.gamma, args.epsilon, args.mode)
        e_plain = dg_energy(forward(m, plain)[0])
        e_edge = dg_energy(forward(m, edge)[0])
        records.append({
            "spec": plain.label,
            "edge_spec": edge.label,
            "gamma": edge.gamma,
            "dg_energy": e_plain,
            "edge_dg_energy": e_edge,
            "improvement_pct": dg_improvement(e_edge, e_plain),
        })
    emit(records)
    return EXIT_OK


def cmd_rd(args):
    (fam, wav), *rest = parse_spec_list(args.spec)
    if rest:
        raise UsageError("rd takes a single FAMILY:WAVELET spec")
    spec = _make_spec(fam, wav, args.edge_aware, args.gamma, args.epsilon, REAL)
    m = read_pgm(args.input)
    records = []
    for rep in rd_sweep(m, spec, parse_steps(args.steps)):
        rec = {"spec": spec.label}
        rec.update(_report_fields(rep))
        records.append(rec)
    emit(records)
    return EXIT_OK


def cmd_synth(args):
    try:
        m = synth_mosaic(args.kind, args.size, args.bit_depth, args.seed)
    except ConfigError as e:
        raise UsageError(str(e)) from None
    write_pgm(args.output, m)
    return EXIT_OK


def cmd_selftest(args):
    from .selftest import run_selftest

    results = run_selftest()
    emit([{"check": name, "status": status, "detail": detail} for name, status, detail in results])
    return EXIT_SELFTEST if any(s == "fail" for _, s, _ in results) else EXIT_OK


def _add_spec_flags(p, family=True):
    if family:
        p.add_argument("--family", choices=FAMILIES, default="XSTT-I")
        p.add_argument("--wavelet", choices=tuple(WAVELETS), default="5/3")
    p.add_argument("--gamma", type=float, default=None,
                   help="edge-weight exponent (default 1 lossless, 0.5 lossy)")
    p.add_argument("--epsilon", type=float, default=1e-8)


def build_parser():
    parser = argparse.ArgumentParser(prog="xstt", description="Spectral-spatial transforms for Bayer mosaics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forward", help="transform a PGM mosaic into an SSQ1 container")
    p.add_argument("input")
    p.add_argument("output")
    _add_spec_flags(p)
    p.add_argument("--edge-aware", action="store_true")
    p.add_argument("--mode", choices=MODES, default=INTEGER)
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("inverse", help="reconstruct a PGM mosaic from an SSQ1 container")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("analyze", help="Dg energy with and without edge-aware weights")
    p.add_argument("input")
    p.add_argument("--specs", default="XSTT-I:5/3,XSTT-II:5/3,XSTT-I:9/7,XSTT-II:9/7",
                   help="comma-separated FAMILY:WAVELET list")
    _add_spec_flags(p, family=False)
    p.add_argument("--mode", choices=MODES, default=INTEGER)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("rd", help="rate/PSNR sweep over quantizer steps (real-lossy mode)")
    p.add_argument("input")
    p.add_argument("--spec", default="XSTT-I:5/3", help="FAMILY:WAVELET")
    p.add_argument("--steps", default=DEFAULT_STEPS)
    p.add_argument("--edge-aware", action="store_true")
    _add_spec_flags(p, family=False)
    p.set_defaults(func=cmd_rd)

    p = sub.add_parser("synth", help="write a synthetic RGGB mosaic")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("output")
    p.add_argument("--size", type=int, default=64)
    p.add_argument("--bit-depth", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("selftest", help="run the invariant suite")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as e:
        print(f"xstt {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (XsttError, OSError) as e:
        print(f"xstt {args.command}: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
