"""Effective confusion counts under the raw, PA, PA%K and PAdf protocols.

PA marks a whole ground-truth segment as detected once any of its points is
flagged. PA%K does the same only when the flagged fraction of the segment
strictly exceeds K percent. PAdf credits a detected segment with
``N * D(delay)`` true positives, where ``delay`` is the offset of the first
flagged point from the segment start and ``D`` is a nonincreasing decay.

Every function here is pure. Multi-segment inputs are handled by summing the
per-segment contributions, with the decay restarting at each segment start.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    AnomalySegment,
    DecaySpec,
    LabelSeries,
    PredictionSeries,
    as_labels,
    as_predictions,
    check_same_length,
    decay_at,
    extract_segments,
)

RAW, PA, PAK, PADF = "raw", "pa", "pak", "padf"
PROTOCOLS = (RAW, PA, PAK, PADF)

DECAYED, ADJUSTED = "decayed", "adjusted"
PRECISION_MODES = (DECAYED, ADJUSTED)


@dataclass(frozen=True)
class EffectiveCounts:
    """Real-valued confusion totals after protocol adjustment.

    ``adjusted_positives`` is the predicted-positive mass inside anomaly
    segments (after adjustment). ``precision_mode`` records which numerator
    precision should use: ``etp`` for ``decayed`` and ``adjusted_positives``
    for ``adjusted``. The two coincide for every protocol except PAdf.
    """

    etp: float
    efp: float
    adjusted_positives: float
    total_anomaly: int
    total_points: int
    precision_mode: str = DECAYED

    def __post_init__(self):
        if self.precision_mode not in PRECISION_MODES:
            raise ValueError(f"unknown precision mode {self.precision_mode!r}")
        tol = 1e-9 * max(1, self.total_points)
        if not (
            -tol <= self.etp <= self.adjusted_positives + tol
            and self.adjusted_positives <= self.total_anomaly + tol
        ):
            raise ValueError(
                "counts violate 0 <= etp <= adjusted_positives <= total_anomaly: "
                f"{self.etp}, {self.adjusted_positives}, {self.total_anomaly}"
            )
        if not (-tol <= self.efp <= self.total_points - self.total_anomaly + tol):
            raise ValueError(f"efp {self.efp} outside [0, normal point count]")

    @property
    def precision_numerator(self) -> float:
        return self.etp if self.precision_mode == DECAYED else self.adjusted_positives


@dataclass(frozen=True)
class ProtocolConfig:
    protocol: str = PA
    k: float = 20.0
    decay: DecaySpec = field(default_factory=lambda: DecaySpec.exponential(0.9))
    precision_mode: str = DECAYED
    beta: float = 1.0

    def __post_init__(self):
        if self.protocol not in PROTOCOLS:
            raise ValueError(
                f"unknown protocol {self.protocol!r}; expected one of {', '.join(PROTOCOLS)}"
            )
        if not (0.0 <= self.k <= 100.0):
            raise ValueError(f"K must lie in [0, 100], got {self.k}")
        if self.precision_mode not in PRECISION_MODES:
            raise ValueError(f"unknown precision mode {self.precision_mode!r}")
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")

    @classmethod
    def padf(cls, d: float = 0.9, precision_mode: str = DECAYED, beta: float = 1.0):
        return cls(PADF, decay=DecaySpec.exponential(d), precision_mode=precision_mode, beta=beta)

    @property
    def params(self) -> str:
        """Compact parameter string, e.g. ``k=20`` or ``d=0.9;mode=decayed``."""
        if self.protocol == PAK:
            return f"k={self.k:g}"
        if self.protocol == PADF:
            if self.decay.kind == "exponential":
                decay = f"d={self.decay.rate:g}"
            else:
                decay = "d=table(" + "|".join(f"{v:g}" for v in self.decay.table) + ")"
            return f"{decay};mode={self.precision_mode}"
        return ""


def _binary_pair(labels, preds) -> tuple[LabelSeries, np.ndarray]:
    labels = as_labels(labels)
    preds = as_predictions(preds)
    if not preds.is_binary:
        raise ValueError("this protocol needs binary predictions; threshold them first")
    check_same_length(labels, preds)
    return labels, preds.values


def score_raw(labels, preds) -> EffectiveCounts:
    """Pointwise confusion counts with no adjustment."""
    labels, yhat = _binary_pair(labels, preds)
    y = labels.values
    tp = int(np.sum((yhat == 1) & (y == 1)))
    fp = int(np.sum((yhat == 1) & (y == 0)))
    return EffectiveCounts(tp, fp, tp, int(y.sum()), y.size)


def _adjust(y: np.ndarray, yhat: np.ndarray, segments, k: float | None) -> np.ndarray:
    out = yhat.copy()
    for seg in segments:
        hits = int(yhat[seg.as_slice()].sum())
        if hits == 0:
            continue
        if k is None or 100.0 * hits / seg.length > k:
            out[seg.as_slice()] = 1
    return out


def adjust_pa(labels, preds) -> PredictionSeries:
    labels, yhat = _binary_pair(labels, preds)
    return PredictionSeries(_adjust(labels.values, yhat, extract_segments(labels), None))


def adjust_pak(labels, preds, k: float = 20.0) -> PredictionSeries:
    """PA applied only to segments whose flagged percentage strictly exceeds ``k``."""
    if not (0.0 <= k <= 100.0):
        raise ValueError(f"K must lie in [0, 100], got {k}")
    labels, yhat = _binary_pair(labels, preds)
    return PredictionSeries(_adjust(labels.values, yhat, extract_segments(labels), k))


def _padf_binary(
    y: np.ndarray,
    yhat: np.ndarray,
    segments: list[AnomalySegment],
    decay: DecaySpec,
    precision_mode: str,
) -> EffectiveCounts:
    etp = 0.0
    detected = 0
    for seg in segments:
        hits = np.flatnonzero(yhat[seg.as_slice()])
        if hits.size == 0:
            continue
        etp += seg.length * decay_at(decay, int(hits[0]))
        detected += seg.length
    efp = int(np.sum((yhat == 1) & (y == 0)))
    return EffectiveCounts(etp, efp, detected, int(y.sum()), y.size, precision_mode)


def score_padf_binary(
    labels, preds, decay: DecaySpec | None = None, precision_mode: str = DECAYED
) -> EffectiveCounts:
    labels, yhat = _binary_pair(labels, preds)
    decay = decay or DecaySpec.exponential(0.9)
    return _padf_binary(labels.values, yhat, extract_segments(labels), decay, precision_mode)


def _padf_probabilistic(
    y: np.ndarray,
    q: np.ndarray,
    segments: list[AnomalySegment],
    decay: DecaySpec,
    precision_mode: str,
) -> EffectiveCounts:
    # q is the anomaly probability; 1 - q is the chance of a "normal" call
    p = 1.0 - q
    etp = 0.0
    adjusted = 0.0
    for seg in segments:
        p_seg = p[seg.as_slice()]
        survive = np.cumprod(p_seg)
        # probability that no earlier point in the segment was flagged
        before = np.concatenate(([1.0], survive[:-1]))
        first_hit = q[seg.as_slice()] * before
        etp += seg.length * float(np.dot(decay.weights(seg.length), first_hit))
        adjusted += seg.length * (1.0 - float(survive[-1]))
    efp = float(q[y == 0].sum())
    return EffectiveCounts(etp, efp, adjusted, int(y.sum()), y.size, precision_mode)


def score_padf_probabilistic(
    labels, preds, decay: DecaySpec | None = None, precision_mode: str = DECAYED
) -> EffectiveCounts:
    """Expected PAdf counts when each timestamp is flagged independently.

    ``preds`` holds per-timestamp anomaly probabilities. The result equals the
    Bernoulli-weighted average of the binary PAdf counts over every possible
    outcome vector.
    """
    labels = as_labels(labels)
    preds = as_predictions(preds, "probabilistic")
    check_same_length(labels, preds)
    decay = decay or DecaySpec.exponential(0.9)
    q = preds.values.astype(float)
    return _padf_probabilistic(labels.values, q, extract_segments(labels), decay, precision_mode)


def score_with_segments(
    y: np.ndarray,
    segments: list[AnomalySegment],
    preds: PredictionSeries,
    config: ProtocolConfig,
) -> EffectiveCounts:
    """Dispatch on validated arrays; ``segments`` must come from ``y``.

    Threshold sweeps call this directly so segments are extracted once.
    """
    if config.protocol == PADF:
        if preds.is_binary:
            return _padf_binary(y, preds.values, segments, config.decay, config.precision_mode)
        return _padf_probabilistic(
            y, preds.values.astype(float), segments, config.decay, config.precision_mode
        )
    if not preds.is_binary:
        raise ValueError(
            f"protocol {config.protocol!r} needs binary predictions; "
            "threshold the probabilities or use padf"
        )
    yhat = preds.values
    if config.protocol == PA:
        yhat = _adjust(y, yhat, segments, None)
    elif config.protocol == PAK:
        yhat = _adjust(y, yhat, segments, config.k)
    tp = int(np.sum((yhat == 1) & (y == 1)))
    fp = int(np.sum((yhat == 1) & (y == 0)))
    return EffectiveCounts(tp, fp, tp, int(y.sum()), y.size)


def score(labels, preds, config: ProtocolConfig | None = None) -> EffectiveCounts:
    config = config or ProtocolConfig()
    labels = as_labels(labels)
    preds = as_predictions(preds)
    check_same_length(labels, preds)
    return score_with_segments(labels.values, extract_segments(labels), preds, config)
