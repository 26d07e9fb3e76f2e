import numpy as np
import pytest

from conftest import random_instance
from tsad_eval.core import DecaySpec, PredictionSeries
from tsad_eval.oracle import (
    oracle_adjust,
    oracle_confusion,
    oracle_padf_binary,
    oracle_padf_expectation,
)
from tsad_eval.protocols import (
    ADJUSTED,
    DECAYED,
    ProtocolConfig,
    adjust_pa,
    adjust_pak,
    score,
    score_padf_binary,
    score_padf_probabilistic,
)


def test_oracle_adjust_examples():
    labels, preds = [0, 1, 1, 1, 0], [0, 0, 1, 0, 0]
    assert oracle_adjust(labels, preds, "pa") == adjust_pa(labels, preds).values.tolist()
    assert oracle_adjust([0, 0, 0], [1, 0, 1], "pa") == [1, 0, 1]
    assert oracle_adjust([0, 0, 0], [1, 0, 1], "pak", 20) == [1, 0, 1]
    with pytest.raises(ValueError):
        oracle_adjust([0, 1], [0], "pa")
    with pytest.raises(ValueError):
        oracle_adjust([0, 1], [0, 1], "pak", 101)


def test_differential_adjustment():
    rng = np.random.default_rng(20240611)
    for _ in range(1000):
        labels, preds = random_instance(rng)
        k = float(rng.choice([0, 5, 20, 33.3, 50, 99, 100, rng.uniform(0, 100)]))
        assert adjust_pa(labels, preds).values.tolist() == oracle_adjust(labels, preds, "pa")
        assert adjust_pak(labels, preds, k).values.tolist() == oracle_adjust(labels, preds, "pak", k)
        tp, fp = oracle_confusion(labels, oracle_adjust(labels, preds, "pa"))
        c = score(labels, preds, ProtocolConfig("pa"))
        assert (c.etp, c.efp) == (tp, fp)


def test_differential_padf_binary():
    rng = np.random.default_rng(7)
    for _ in range(500):
        labels, preds = random_instance(rng)
        d = float(rng.uniform(0.05, 1.0))
        c = score_padf_binary(labels, preds, DecaySpec.exponential(d))
        etp, efp, detected = oracle_padf_binary(labels, preds, d)
        assert c.etp == pytest.approx(etp, rel=1e-12, abs=1e-12)
        assert (c.efp, c.adjusted_positives) == (efp, detected)


def test_expectation_examples():
    c = oracle_padf_expectation([1, 1], [0.5, 0.5], DecaySpec.exponential(0.9))
    assert c.etp / c.total_anomaly == pytest.approx(0.725, abs=1e-15)
    c = oracle_padf_expectation([0, 1, 1, 0], [0.0] * 4)
    assert (c.etp, c.efp, c.adjusted_positives) == (0.0, 0.0, 0.0)
    labels = [0, 1, 1, 0, 1]
    c = oracle_padf_expectation(labels, [1.0] * 5)
    b = score_padf_binary(labels, [1] * 5)
    assert (c.etp, c.efp, c.adjusted_positives) == (b.etp, b.efp, b.adjusted_positives)
    with pytest.raises(ValueError):
        oracle_padf_expectation([0] * 15, [0.5] * 15)


@pytest.mark.parametrize("mode", [DECAYED, ADJUSTED])
def test_expectation_matches_probabilistic_path(mode):
    rng = np.random.default_rng(11)
    for _ in range(60):
        labels, _ = random_instance(rng, max_len=9)
        probs = rng.random(len(labels))
        probs[rng.random(len(labels)) < 0.2] = rng.choice([0.0, 1.0])
        decay = DecaySpec.exponential(float(rng.uniform(0.1, 1.0)))
        fast = score_padf_probabilistic(labels, PredictionSeries(probs, "probabilistic"), decay, mode)
        slow = oracle_padf_expectation(labels, probs, decay, mode)
        for a, b in [(fast.etp, slow.etp), (fast.efp, slow.efp),
                     (fast.adjusted_positives, slow.adjusted_positives)]:
            assert abs(a - b) < 1e-9
