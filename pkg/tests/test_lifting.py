import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xstt.errors import ConfigError, DimensionError
from xstt.lifting import (
    CDF97, LEGALL53, PREDICT, UPDATE, LiftingStage, Term, apply_stage, dc_matrix,
    get_wavelet, invert_stage, pad, reflect_index, shifted, shifted_sample, stage_increment,
)


@given(st.integers(2, 12), st.integers(2, 12), st.integers(0, 2**31))
@settings(max_examples=60, deadline=None)
def test_padding_matches_numpy_reflect(h, w, seed):
    x = np.random.default_rng(seed).integers(0, 100, size=(h, w))
    assert np.array_equal(pad(x, 2), np.pad(x, 2, mode="reflect"))


def test_reflect_index_examples():
    assert reflect_index(-1, 5) == 1
    assert reflect_index(5, 5) == 3
    assert reflect_index(-2, 1) == 0
    assert reflect_index(np.array([-3, 0, 7]), 4).tolist() == [3, 0, 1]


def test_shifted_matches_per_sample_lookup(rng):
    x = rng.integers(0, 50, size=(5, 6))
    for dy, dx in [(-1, 0), (0, -1), (1, 1), (-1, 1)]:
        plane = shifted(x, dy, dx)
        for i in range(5):
            for j in range(6):
                assert plane[i, j] == shifted_sample(x, j, i, dx, dy)


def _stage(**kw):
    base = dict(role=PREDICT, target=1, terms=(Term(0, ((0, 0), (0, 1))),), coeff=-0.5)
    base.update(kw)
    return LiftingStage(**base)


def test_increment_matches_loop_oracle(rng):
    planes = [rng.integers(-99, 99, size=(4, 5)) for _ in range(4)]
    stage = _stage(terms=(Term(0, ((0, 0), (-1, 1)), 0.5), Term(2, ((1, 0),), 0.5)), coeff=0.3)
    inc = stage_increment(planes, stage)
    for i in range(4):
        for j in range(5):
            s = 0.5 * (planes[0][i, j] + shifted_sample(planes[0], j, i, 1, -1))
            s += 0.5 * shifted_sample(planes[2], j, i, 0, 1)
            assert inc[i, j] == pytest.approx(0.3 * s)


def _legall_oracle(even, odd):
    """Integer 5/3 on a row with the same symmetric extension of each phase."""
    n = len(even)
    r = lambda k: reflect_index(k, n)
    d = [odd[k] - (even[k] + even[r(k + 1)]) // 2 for k in range(n)]
    s = [even[k] + (d[k] + d[r(k - 1)]) // 4 for k in range(n)]
    return s, d


def test_integer_legall_matches_row_oracle(rng):
    even = rng.integers(0, 4096, size=9)
    odd = rng.integers(0, 4096, size=9)
    planes = (even[None, :], odd[None, :], np.zeros((1, 9), int), np.zeros((1, 9), int))
    planes = apply_stage(planes, _stage(terms=(Term(0, ((0, 0), (0, 1))),), coeff=-0.5))
    planes = apply_stage(planes, _stage(role=UPDATE, target=0, terms=(Term(1, ((0, 0), (0, -1))),), coeff=0.25))
    s, d = _legall_oracle(even.tolist(), odd.tolist())
    assert planes[0][0].tolist() == s
    assert planes[1][0].tolist() == d


@given(st.integers(0, 2**31), st.sampled_from(["floor", "none"]), st.sampled_from([PREDICT, UPDATE]))
@settings(max_examples=60, deadline=None)
def test_stage_inverts(seed, rounding, role):
    rng = np.random.default_rng(seed)
    dtype = np.int64 if rounding == "floor" else np.float64
    planes = tuple(rng.integers(-500, 500, size=(3, 4)).astype(dtype) for _ in range(4))
    stage = _stage(role=role, rounding=rounding, coeff=float(rng.uniform(-2, 2)),
                   terms=(Term(0, ((0, 0), (0, 1)), 0.5), Term(3, ((1, 0),), 0.5)))
    back = invert_stage(apply_stage(planes, stage), stage)
    for a, b in zip(planes, back):
        if rounding == "floor":
            assert np.array_equal(a, b)
        else:
            assert np.allclose(a, b, rtol=0, atol=1e-9)


def test_predict_rounds_prediction_down():
    # b - floor((a0 + a1) / 2): prediction 2.5 floors to 2
    planes = (np.array([[2, 3]]), np.array([[10, 10]]), np.zeros((1, 2), int), np.zeros((1, 2), int))
    out = apply_stage(planes, _stage())
    # the right neighbour of the last column reflects back onto the first
    assert out[1].tolist() == [[8, 8]]


def test_integer_vs_real_stage_differ_by_less_than_one(rng):
    planes = tuple(rng.integers(0, 4096, size=(6, 6)) for _ in range(4))
    for role in (PREDICT, UPDATE):
        st_int = _stage(role=role, coeff=CDF97.p[0])
        st_real = _stage(role=role, coeff=CDF97.p[0], rounding="none")
        a = apply_stage(planes, st_int)[1]
        b = apply_stage(tuple(p.astype(float) for p in planes), st_real)[1]
        assert np.abs(a - b).max() < 1


def test_stage_validation():
    with pytest.raises(ConfigError):
        _stage(terms=(Term(1, ((0, 0),)),))
    with pytest.raises(ConfigError):
        _stage(weighting="diag")
    with pytest.raises(ConfigError):
        _stage(role="guess")
    planes = tuple(np.zeros((2, 2), int) for _ in range(4))
    with pytest.raises(ConfigError):
        apply_stage(planes, _stage(rounding="none"))
    with pytest.raises(DimensionError):
        apply_stage(planes[:3] + (np.zeros((3, 2), int),), _stage())


def test_unknown_wavelet():
    with pytest.raises(ConfigError):
        get_wavelet("db4")
    assert get_wavelet("5/3") is LEGALL53


def test_stencil_taps_annihilate_constants():
    for wav in (LEGALL53, CDF97):
        stage = _stage(coeff=wav.p[0])
        assert sum(w for *_, w in stage.stencil().taps) == pytest.approx(2 * wav.p[0])
        planes = tuple(np.full((3, 3), 7.0) for _ in range(4))
        out = apply_stage(planes, LiftingStage(PREDICT, 1, stage.terms, -0.5, rounding="none"))
        assert np.all(out[1] == 0)


def test_dc_matrix_of_one_predict():
    m = dc_matrix([_stage()])
    expect = np.eye(4)
    expect[1, 0] = -1.0
    assert np.array_equal(m, expect)
