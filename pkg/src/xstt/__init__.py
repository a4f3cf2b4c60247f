"""Reversible spectral-spatial transforms for RGGB Bayer mosaics."""
from .cfa import INTEGER, REAL, BayerMosaic, ChannelQuad, SubbandQuad, merge_quad, split_mosaic
from .edge import EdgeParams, WeightField
from .errors import ConfigError, DimensionError, FormatError, RangeError, XsttError
from .metrics import RateReport, dg_energy, entropy_bpp, rate_report, rd_sweep, weight_divergence
from .synth import synth_mosaic
from .transforms import FAMILIES, TransformSpec, WeightLog, forward, inverse, inverse_quad

__all__ = [
    "INTEGER", "REAL", "BayerMosaic", "ChannelQuad", "SubbandQuad", "merge_quad", "split_mosaic",
    "EdgeParams", "WeightField", "ConfigError", "DimensionError", "FormatError", "RangeError",
    "XsttError", "RateReport", "dg_energy", "entropy_bpp", "rate_report", "rd_sweep",
    "weight_divergence", "synth_mosaic", "FAMILIES", "TransformSpec", "WeightLog", "forward",
    "inverse", "inverse_quad",
]
