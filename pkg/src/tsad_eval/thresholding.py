"""Score binarization and best-F threshold search."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PredictionSeries, as_labels, as_scores, check_same_length, extract_segments
from .metrics import MetricReport, compute_metrics
from .protocols import ProtocolConfig, score_with_segments

FIXED, SWEEP = "fixed", "sweep"
UNIQUE, QUANTILE = "unique", "quantile"


@dataclass(frozen=True)
class ThresholdSpec:
    """How to turn scores into decisions.

    ``fixed`` uses ``value``. ``sweep`` tries every candidate and keeps the best
    F-beta; candidates are either every distinct score plus a sentinel below
    the minimum (``unique``) or ``m`` score quantiles (``quantile``).
    """

    mode: str = SWEEP
    value: float | None = None
    candidates: str = UNIQUE
    m: int = 1000

    def __post_init__(self):
        if self.mode == FIXED:
            if self.value is None or not math.isfinite(self.value):
                raise ValueError("a fixed threshold needs a finite value")
        elif self.mode == SWEEP:
            if self.candidates not in (UNIQUE, QUANTILE):
                raise ValueError(f"unknown candidate set {self.candidates!r}")
            if self.candidates == QUANTILE and self.m < 2:
                raise ValueError("quantile grid needs m >= 2")
        else:
            raise ValueError(f"unknown threshold mode {self.mode!r}")

    @classmethod
    def fixed(cls, value: float) -> "ThresholdSpec":
        return cls(FIXED, float(value))


def binarize(scores, theta: float) -> PredictionSeries:
    """Flag every point whose score is strictly greater than ``theta``."""
    if not math.isfinite(theta):
        raise ValueError(f"threshold must be finite, got {theta}")
    s = as_scores(scores).values
    return PredictionSeries((s > theta).astype(np.int8))


def candidate_thresholds(scores, spec: ThresholdSpec | None = None) -> np.ndarray:
    """Sorted candidate thresholds for a sweep."""
    spec = spec or ThresholdSpec()
    s = as_scores(scores).values
    if spec.candidates == QUANTILE:
        return np.unique(np.quantile(s, np.linspace(0.0, 1.0, spec.m)))
    values = np.unique(s)
    # sentinel: strictly below the minimum, so every point is flagged
    sentinel = np.nextafter(values[0], -np.inf)
    return np.concatenate(([sentinel], values))


def best_f1(
    labels,
    scores,
    config: ProtocolConfig | None = None,
    spec: ThresholdSpec | None = None,
    candidates=None,
) -> tuple[float, MetricReport]:
    """Return the threshold with the highest F-beta and its report.

    Ties go to the smallest threshold. ``candidates`` overrides the set built
    from ``spec``.
    """
    config = config or ProtocolConfig()
    labels = as_labels(labels)
    scores = as_scores(scores)
    check_same_length(labels, scores)
    if spec is not None and spec.mode == FIXED:
        raise ValueError("best_f1 needs a sweep threshold spec")
    if candidates is None:
        candidates = candidate_thresholds(scores, spec)
    else:
        candidates = np.unique(np.asarray(candidates, dtype=float))
    if candidates.size == 0:
        raise ValueError("no candidate thresholds to evaluate")

    y = labels.values
    segments = extract_segments(labels)
    s = scores.values
    best_theta, best_report = None, None
    for theta in candidates:
        preds = PredictionSeries((s > theta).astype(np.int8))
        counts = score_with_segments(y, segments, preds, config)
        report = compute_metrics(counts, config.beta, protocol=config, threshold=float(theta))
        # candidates ascend, so strict > keeps the smallest maximiser
        if best_report is None or report.f_beta > best_report.f_beta:
            best_theta, best_report = float(theta), report
    return best_theta, best_report


def evaluate_scores(
    labels, scores, config: ProtocolConfig, spec: ThresholdSpec
) -> tuple[float, MetricReport]:
    """Fixed or swept evaluation of a score series; returns (theta, report)."""
    if spec.mode == FIXED:
        preds = binarize(scores, spec.value)
        labels = as_labels(labels)
        check_same_length(labels, preds)
        counts = score_with_segments(labels.values, extract_segments(labels), preds, config)
        return spec.value, compute_metrics(counts, config.beta, protocol=config, threshold=spec.value)
    return best_f1(labels, scores, config, spec)
