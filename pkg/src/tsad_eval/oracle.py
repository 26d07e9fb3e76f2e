"""Brute-force reference implementations for differential testing.

Deliberately slow and written without the segment machinery used in
``protocols``: every timestamp rediscovers its own segment by scanning, and
probabilistic expectations are computed by enumerating all outcomes.
"""

from __future__ import annotations

import itertools

from .core import DecaySpec, PredictionSeries
from .protocols import DECAYED, EffectiveCounts, score_padf_binary

MAX_ENUMERATION_LENGTH = 14


def _segment_bounds(labels: list[int], t: int) -> tuple[int, int]:
    lo = t
    while lo > 0 and labels[lo - 1] == 1:
        lo -= 1
    hi = t
    while hi < len(labels) - 1 and labels[hi + 1] == 1:
        hi += 1
    return lo, hi


def oracle_adjust(labels, preds, protocol: str = "pa", k: float = 20.0) -> list[int]:
    labels = [int(v) for v in labels]
    preds = [int(v) for v in preds]
    if len(labels) != len(preds):
        raise ValueError("length mismatch")
    if protocol not in ("pa", "pak"):
        raise ValueError(f"oracle adjusts pa or pak, not {protocol!r}")
    if protocol == "pak" and not (0 <= k <= 100):
        raise ValueError("K out of range")
    out = []
    for t in range(len(labels)):
        if labels[t] == 0:
            out.append(preds[t])
            continue
        lo, hi = _segment_bounds(labels, t)
        hits = sum(preds[i] for i in range(lo, hi + 1))
        size = hi - lo + 1
        if protocol == "pa":
            adjust = hits > 0
        else:
            adjust = hits > 0 and hits * 100 > k * size
        out.append(1 if adjust else preds[t])
    return out


def oracle_confusion(labels, preds) -> tuple[int, int]:
    tp = fp = 0
    for y, yhat in zip(labels, preds):
        if yhat == 1 and y == 1:
            tp += 1
        elif yhat == 1:
            fp += 1
    return tp, fp


def oracle_padf_binary(labels, preds, rate: float) -> tuple[float, int, int]:
    """(etp, efp, detected anomaly points) for exponential decay, by scanning."""
    labels = [int(v) for v in labels]
    preds = [int(v) for v in preds]
    etp = 0.0
    detected = 0
    efp = 0
    for t in range(len(labels)):
        if labels[t] == 0:
            efp += preds[t]
            continue
        lo, hi = _segment_bounds(labels, t)
        first = next((i for i in range(lo, hi + 1) if preds[i] == 1), None)
        if first is not None:
            # each point of the segment carries the segment's decayed credit
            etp += rate ** (first - lo)
            detected += 1
    return etp, efp, detected


def oracle_padf_expectation(
    labels, probs, decay: DecaySpec | None = None, precision_mode: str = DECAYED
) -> EffectiveCounts:
    """Expected PAdf counts by enumerating all 2**tau binary outcomes."""
    labels = [int(v) for v in labels]
    probs = [float(v) for v in probs]
    tau = len(labels)
    if tau != len(probs):
        raise ValueError("length mismatch")
    if tau > MAX_ENUMERATION_LENGTH:
        raise ValueError(f"enumeration limited to {MAX_ENUMERATION_LENGTH} points, got {tau}")
    decay = decay or DecaySpec.exponential(0.9)
    etp = efp = adjusted = 0.0
    for outcome in itertools.product((0, 1), repeat=tau):
        weight = 1.0
        for flag, q in zip(outcome, probs):
            weight *= q if flag else 1.0 - q
        if weight == 0.0:
            continue
        counts = score_padf_binary(labels, PredictionSeries(outcome), decay, precision_mode)
        etp += weight * counts.etp
        efp += weight * counts.efp
        adjusted += weight * counts.adjusted_positives
    return EffectiveCounts(etp, efp, adjusted, sum(labels), tau, precision_mode)
