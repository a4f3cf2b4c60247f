import numpy as np
import pytest
from hypothesis import strategies as st

from xstt.cfa import BayerMosaic


@st.composite
def mosaics(draw, min_half=1, max_half=16, min_bits=8, max_bits=14):
    h = 2 * draw(st.integers(min_half, max_half))
    w = 2 * draw(st.integers(min_half, max_half))
    bits = draw(st.integers(min_bits, max_bits))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return BayerMosaic(rng.integers(0, 1 << bits, size=(h, w)), bits)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
