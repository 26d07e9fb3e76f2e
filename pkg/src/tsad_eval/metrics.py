"""Precision, recall and F-beta from effective counts."""

from __future__ import annotations

from dataclasses import dataclass, field

from .protocols import EffectiveCounts, ProtocolConfig, score

NO_ANOMALIES = "no_anomalies"
NO_PREDICTIONS = "no_predictions"


@dataclass(frozen=True)
class MetricReport:
    precision: float
    recall: float
    f_beta: float
    beta: float = 1.0
    protocol: ProtocolConfig | None = None
    threshold: float | None = None
    flags: frozenset[str] = field(default_factory=frozenset)

    @property
    def f1(self) -> float:
        return self.f_beta


def f_beta_score(precision: float, recall: float, beta: float = 1.0) -> float:
    """Weighted harmonic mean of precision and recall; 0 when both are 0."""
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    b2 = beta * beta
    denom = b2 * precision + recall
    if denom == 0:
        return 0.0
    return (1 + b2) * precision * recall / denom


def compute_metrics(
    counts: EffectiveCounts,
    beta: float = 1.0,
    *,
    protocol: ProtocolConfig | None = None,
    threshold: float | None = None,
) -> MetricReport:
    """Turn effective counts into a report.

    Degenerate denominators give 0 and a flag instead of NaN, so a sweep over
    trivial thresholds never aborts.
    """
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    flags = set()
    if counts.total_anomaly == 0:
        recall = 0.0
        flags.add(NO_ANOMALIES)
    else:
        recall = counts.etp / counts.total_anomaly
    denom = counts.adjusted_positives + counts.efp
    if denom == 0:
        precision = 0.0
        flags.add(NO_PREDICTIONS)
    else:
        precision = counts.precision_numerator / denom
    # clamp float dust from probabilistic sums
    precision = min(max(precision, 0.0), 1.0)
    recall = min(max(recall, 0.0), 1.0)
    return MetricReport(
        precision=precision,
        recall=recall,
        f_beta=f_beta_score(precision, recall, beta),
        beta=beta,
        protocol=protocol,
        threshold=threshold,
        flags=frozenset(flags),
    )


def evaluate(labels, preds, config: ProtocolConfig | None = None, threshold=None) -> MetricReport:
    """Score ``preds`` against ``labels`` under ``config`` in one call."""
    config = config or ProtocolConfig()
    counts = score(labels, preds, config)
    return compute_metrics(counts, config.beta, protocol=config, threshold=threshold)
