import numpy as np
import pytest
from hypothesis import given, strategies as st

from tsad_eval.analytic import (
    CurveSpec,
    RandomModelParams,
    f1_curve,
    max_f1,
    pa_precision,
    pa_recall,
    padf_precision,
    padf_recall,
)

THETAS = np.linspace(0, 1, 101)


def finite_sum_recall(theta, n, d):
    """Decayed recall of the uniform model summed term by term."""
    return sum(d**i * (1 - theta) * theta**i for i in range(n))


def params(theta, n, a=0.05, d=1.0):
    return RandomModelParams(theta, n, a, d)


def test_pa_recall_examples():
    assert pa_recall(params(0.5, 2)) == 0.75
    assert pa_recall(params(0.0, 7)) == 1.0
    assert pa_recall(params(1.0, 7)) == 0.0


def test_pa_precision_examples():
    assert pa_precision(params(1.0, 3)) == 0.0
    assert pa_precision(params(0.0, 1)) == pytest.approx(0.05, abs=1e-15)
    # 0.75*0.05 / (0.75*0.05 + 0.5*0.95)
    expected = 0.0375 / (0.0375 + 0.475)
    assert pa_precision(params(0.5, 2)) == pytest.approx(expected, abs=1e-15)
    assert pa_precision(params(0.5, 2)) == pytest.approx(0.0732, abs=5e-5)


def test_padf_recall_examples():
    assert padf_recall(params(0.5, 2, d=0.9)) == pytest.approx(finite_sum_recall(0.5, 2, 0.9), abs=1e-15)
    assert padf_recall(params(0.5, 2, d=0.9)) == pytest.approx(0.725, abs=1e-15)
    assert padf_recall(params(1.0, 5, d=0.9)) == 0.0
    assert padf_recall(params(1.0, 5, d=1.0)) == 0.0


def test_padf_precision_examples():
    assert padf_precision(params(0.0, 1, d=0.9)) == pytest.approx(0.05, abs=1e-15)
    expected = 0.05 * 0.725 / (0.5 * 0.95 + 0.75 * 0.05)
    assert padf_precision(params(0.5, 2, d=0.9)) == pytest.approx(expected, abs=1e-15)
    assert padf_precision(params(0.5, 2, d=0.9)) == pytest.approx(0.070732, abs=1e-6)
    assert padf_precision(params(1.0, 2, d=0.9)) == 0.0


@given(st.floats(0, 1), st.integers(1, 300), st.floats(0.01, 1.0))
def test_padf_recall_matches_finite_sum(theta, n, d):
    assert padf_recall(params(theta, n, d=d)) == pytest.approx(
        finite_sum_recall(theta, n, d), rel=1e-9, abs=1e-12
    )


@given(st.floats(0, 1), st.integers(1, 1000), st.floats(0.001, 0.999))
def test_d1_reduces_to_pa(theta, n, a):
    p = params(theta, n, a, 1.0)
    assert abs(padf_recall(p) - pa_recall(p)) < 1e-12
    assert abs(padf_precision(p) - pa_precision(p)) < 1e-12


@given(st.floats(0, 1), st.integers(1, 500), st.floats(0.01, 1.0), st.floats(0.001, 0.999))
def test_bounds_and_attenuation(theta, n, d, a):
    p = params(theta, n, a, d)
    for v in (pa_recall(p), pa_precision(p), padf_recall(p), padf_precision(p)):
        assert 0.0 <= v <= 1.0 + 1e-12
    assert padf_recall(p) <= pa_recall(p) + 1e-12


@given(st.floats(0, 1), st.floats(0, 1), st.integers(1, 200))
def test_pa_recall_monotone(t1, t2, n):
    lo, hi = sorted((t1, t2))
    assert pa_recall(params(hi, n)) <= pa_recall(params(lo, n))
    assert pa_recall(params(lo, n)) <= pa_recall(params(lo, n + 1))


def test_params_validation():
    for bad in [(-0.1, 5), (1.1, 5), (0.5, 0), (0.5, 2.5)]:
        with pytest.raises(ValueError):
            RandomModelParams(*bad)
    with pytest.raises(ValueError):
        RandomModelParams(0.5, 5, 0.0)
    with pytest.raises(ValueError):
        RandomModelParams(0.5, 5, 0.05, 0.0)


def test_curve_d1_equals_pa_curve():
    pa = f1_curve(THETAS, [CurveSpec("pa", 500)])
    padf = f1_curve(THETAS, [CurveSpec("padf", 500, d=1.0)])
    assert max(abs(a.f1 - b.f1) for a, b in zip(pa, padf)) < 1e-12


def test_curve_max_ordering_and_endpoint():
    grid = np.linspace(0, 1, 1001)
    best = {d: max_f1(f1_curve(grid, [CurveSpec("padf", 500, 0.05, d)])) for d in (0.7, 0.9, 1.0)}
    assert best[0.7] < best[0.9] < best[1.0]
    rows = f1_curve([1.0], [CurveSpec("pa", 20), CurveSpec("padf", 500, d=0.7)])
    assert all(r.f1 == 0.0 and r.degenerate for r in rows)


def test_curve_rejects_empty_grid():
    with pytest.raises(ValueError):
        f1_curve([], [CurveSpec()])
    with pytest.raises(ValueError):
        CurveSpec("pak")
