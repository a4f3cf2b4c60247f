import numpy as np
import pytest

from xstt.errors import ConfigError, DimensionError
from xstt.synth import KINDS, random_mosaic, synth_mosaic


@pytest.mark.parametrize("kind", KINDS)
def test_kinds_respect_bit_depth(kind):
    m = synth_mosaic(kind, 32, 10)
    assert m.samples.shape == (32, 32)
    assert m.samples.min() >= 0 and m.samples.max() < 1 << 10


def test_noise_is_seeded():
    a = synth_mosaic("noise", 16, 12, seed=7)
    b = synth_mosaic("noise", 16, 12, seed=7)
    c = synth_mosaic("noise", 16, 12, seed=8)
    assert a == b
    assert a != c


def test_constant_is_mid_grey():
    m = synth_mosaic("constant", 8, 12)
    assert np.all(m.samples == 2048)


def test_bad_arguments():
    with pytest.raises(ConfigError):
        synth_mosaic("checkerboard")
    with pytest.raises(DimensionError):
        synth_mosaic("ramp", 7)


def test_random_mosaic_shape():
    m = random_mosaic(np.random.default_rng(0), 6, 10, 9)
    assert m.samples.shape == (6, 10) and m.bit_depth == 9
