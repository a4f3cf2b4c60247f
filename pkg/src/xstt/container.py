"""File formats: binary PGM (P5) mosaics and the SSQ1 subband container."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cfa import INTEGER, MODES, BayerMosaic, SubbandQuad
from .errors import FormatError

MAGIC = b"SSQ1\n"
HEADER_KEYS = (
    "width", "height", "bit_depth", "family", "wavelet", "edge_aware",
    "mode", "gamma", "epsilon", "dc_offset",
)
INT32 = np.dtype("<i4")


# -- PGM ------------------------------------------------------------------------

def _where(data: bytes, pos: int) -> str:
    line = data.count(b"\n", 0, pos) + 1
    return f"line {line}, byte {pos}"


def _token(data: bytes, pos: int):
    """Next whitespace-delimited header token, skipping '#' comments."""
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c == b"#":
            end = data.find(b"\n", pos)
            pos = n if end < 0 else end + 1
        elif c.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise FormatError(f"PGM header truncated at {_where(data, start)}")
    return data[start:pos], start, pos


def parse_pgm(data: bytes) -> BayerMosaic:
    if not data.startswith(b"P5"):
        got = data[:2].decode("latin-1") or "<empty>"
        raise FormatError(f"not a binary PGM: magic {got!r} at line 1, byte 0 (expected 'P5')")
    pos = 2
    values = []
    for label in ("width", "height", "maxval"):
        tok, start, pos = _token(data, pos)
        if not tok.isdigit():
            raise FormatError(f"PGM {label} {tok.decode('latin-1')!r} is not a number at {_where(data, start)}")
        values.append(int(tok))
    width, height, maxval = values
    if not 0 < maxval <= 65535:
        raise FormatError(f"PGM maxval {maxval} outside 1..65535 at {_where(data, start)}")
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise FormatError(f"missing whitespace after maxval at {_where(data, pos)}")
    pos += 1
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    need = width * height * dtype.itemsize
    have = len(data) - pos
    if have < need:
        raise FormatError(
            f"PGM raster truncated: need {need} bytes from byte {pos}, have {have}"
        )
    samples = np.frombuffer(data, dtype=dtype, count=width * height, offset=pos).reshape(height, width)
    bit_depth = max(8, int(maxval).bit_length())
    if samples.size and int(samples.max()) > maxval:
        raise FormatError(f"PGM sample exceeds maxval {maxval}")
    return BayerMosaic(samples, bit_depth)


def format_pgm(m: BayerMosaic) -> bytes:
    maxval = (1 << m.bit_depth) - 1
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    head = f"P5\n{m.width} {m.height}\n{maxval}\n".encode("ascii")
    return head + m.samples.astype(dtype).tobytes()


def read_pgm(path) -> BayerMosaic:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror}") from e
    try:
        return parse_pgm(data)
    except FormatError as e:
        raise FormatError(f"{path}: {e}") from None


def write_pgm(path, m: BayerMosaic) -> None:
    Path(path).write_bytes(format_pgm(m))


# -- SSQ1 -------------------------------------------------------------------------

@dataclass(frozen=True)
class SubbandContainer:
    header: dict
    subbands: SubbandQuad


def make_header(s: SubbandQuad, spec) -> dict:
    h, w = s.shape
    return {
        "width": 2 * w,
        "height": 2 * h,
        "bit_depth": s.bit_depth,
        "family": spec.family,
        "wavelet": spec.wavelet,
        "edge_aware": int(spec.edge_aware),
        "mode": spec.mode,
        "gamma": repr(float(spec.gamma)),
        "epsilon": repr(float(spec.epsilon)),
        "dc_offset": 1 << s.bit_depth,
    }


def format_header(header: dict) -> bytes:
    missing = [k for k in HEADER_KEYS if k not in header]
    if missing:
        raise FormatError(f"header lacks {missing}")
    return "".join(f"{k}={header[k]}\n" for k in HEADER_KEYS).encode("ascii") + b"\n"


def parse_header(data: bytes):
    """Return (header dict with typed values, payload offset)."""
    if not data.startswith(MAGIC):
        raise FormatError(f"not an SSQ1 container: magic {data[:4]!r} at byte 0")
    end = data.find(b"\n\n", len(MAGIC) - 1)
    if end < 0:
        raise FormatError("SSQ1 header is not terminated by a blank line")
    lines = data[len(MAGIC) : end].decode("ascii", errors="replace").split("\n")
    raw = {}
    for lineno, line in enumerate(lines, start=2):
        key, sep, value = line.partition("=")
        if not sep:
            raise FormatError(f"SSQ1 header line {lineno} has no '=': {line!r}")
        raw[key] = value
    if tuple(raw) != HEADER_KEYS:
        raise FormatError(f"SSQ1 header keys {tuple(raw)} differ from {HEADER_KEYS}")
    try:
        header = {
            "width": int(raw["width"]),
            "height": int(raw["height"]),
            "bit_depth": int(raw["bit_depth"]),
            "family": raw["family"],
            "wavelet": raw["wavelet"],
            "edge_aware": int(raw["edge_aware"]),
            "mode": raw["mode"],
            "gamma": repr(float(raw["gamma"])),
            "epsilon": repr(float(raw["epsilon"])),
            "dc_offset": int(raw["dc_offset"]),
        }
    except ValueError as e:
        raise FormatError(f"bad SSQ1 header value: {e}") from None
    if header["mode"] not in MODES:
        raise FormatError(f"unknown mode {header['mode']!r} in SSQ1 header")
    if header["width"] % 2 or header["height"] % 2 or header["width"] <= 0 or header["height"] <= 0:
        raise FormatError(f"bad SSQ1 dimensions {header['width']}x{header['height']}")
    return header, end + 2


def serialize(s: SubbandQuad, spec) -> bytes:
    header = make_header(s, spec)
    off = header["dc_offset"]
    planes = [np.rint(p).astype(np.int64) for p in s.planes]
    planes = [planes[0]] + [p + off for p in planes[1:]]
    lo, hi = np.iinfo(INT32).min, np.iinfo(INT32).max
    if any(p.min() < lo or p.max() > hi for p in planes):
        raise FormatError("subband values do not fit in 32-bit samples")
    payload = b"".join(p.astype(INT32).tobytes() for p in planes)
    return MAGIC + format_header(header) + payload


def deserialize(data: bytes) -> SubbandContainer:
    header, pos = parse_header(data)
    h, w = header["height"] // 2, header["width"] // 2
    need = 4 * h * w * INT32.itemsize
    if len(data) - pos != need:
        raise FormatError(f"SSQ1 payload is {len(data) - pos} bytes from byte {pos}, expected {need}")
    flat = np.frombuffer(data, dtype=INT32, offset=pos).astype(np.int64).reshape(4, h, w)
    off = header["dc_offset"]
    planes = [flat[0]] + [p - off for p in flat[1:]]
    if header["mode"] != INTEGER:
        planes = [p.astype(np.float64) for p in planes]
    sub = SubbandQuad(*planes, mode=header["mode"], bit_depth=header["bit_depth"], dc_offset=off)
    return SubbandContainer(header, sub)


def spec_from_header(header: dict):
    from .transforms import TransformSpec

    return TransformSpec(
        header["family"], header["wavelet"], bool(header["edge_aware"]),
        float(header["gamma"]), float(header["epsilon"]), header["mode"],
    )


def write_ssq(path, s: SubbandQuad, spec) -> None:
    Path(path).write_bytes(serialize(s, spec))


def read_ssq(path) -> SubbandContainer:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror}") from e
    try:
        return deserialize(data)
    except FormatError as e:
        raise FormatError(f"{path}: {e}") from None
