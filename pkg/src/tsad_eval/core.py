"""Series containers, anomaly segments and decay functions.

All containers hold read-only numpy arrays and are safe to share between
threads. Indices are 0-based; a segment's ``start`` is the first anomalous
timestamp of a run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

BINARY = "binary"
PROBABILISTIC = "probabilistic"


def _frozen(values: Iterable, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class LabelSeries:
    """Ground-truth anomaly labels (1 = anomalous timestamp)."""

    values: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.values)
        if raw.ndim != 1:
            raw = raw.reshape(-1)
        if raw.size == 0:
            raise ValueError("label series must contain at least one point")
        if raw.dtype.kind not in "biuf":
            raise ValueError(f"labels must be numeric, got dtype {raw.dtype}")
        bad = ~np.isin(raw, (0, 1))
        if bad.any():
            idx = int(np.flatnonzero(bad)[0])
            raise ValueError(f"label at index {idx} is {raw[idx]!r}, expected 0 or 1")
        object.__setattr__(self, "values", _frozen(raw, np.int8))

    def __len__(self) -> int:
        return self.values.size

    @property
    def anomaly_ratio(self) -> float:
        return float(self.values.sum()) / self.values.size


@dataclass(frozen=True, eq=False)
class ScoreSeries:
    """Real-valued anomaly scores; larger means more anomalous."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float).reshape(-1)
        if arr.size == 0:
            raise ValueError("score series must contain at least one point")
        if not np.all(np.isfinite(arr)):
            idx = int(np.flatnonzero(~np.isfinite(arr))[0])
            raise ValueError(f"score at index {idx} is not finite")
        object.__setattr__(self, "values", _frozen(arr, float))

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True, eq=False)
class PredictionSeries:
    """Detector output.

    In ``binary`` mode values are 0/1 decisions. In ``probabilistic`` mode each
    value is the probability that the timestamp is anomalous, so the
    probability of a "normal" call is ``1 - value``.
    """

    values: np.ndarray
    mode: str = BINARY

    def __post_init__(self):
        if self.mode not in (BINARY, PROBABILISTIC):
            raise ValueError(f"unknown prediction mode {self.mode!r}")
        arr = np.asarray(self.values, dtype=float).reshape(-1)
        if arr.size == 0:
            raise ValueError("prediction series must contain at least one point")
        if self.mode == BINARY:
            bad = ~np.isin(arr, (0.0, 1.0))
            if bad.any():
                idx = int(np.flatnonzero(bad)[0])
                raise ValueError(f"binary prediction at index {idx} is {arr[idx]!r}")
            object.__setattr__(self, "values", _frozen(arr, np.int8))
        else:
            bad = ~((arr >= 0.0) & (arr <= 1.0))  # also catches NaN
            if bad.any():
                idx = int(np.flatnonzero(bad)[0])
                raise ValueError(
                    f"probability at index {idx} is {arr[idx]!r}, outside [0, 1]"
                )
            object.__setattr__(self, "values", _frozen(arr, float))

    def __len__(self) -> int:
        return self.values.size

    @property
    def is_binary(self) -> bool:
        return self.mode == BINARY


@dataclass(frozen=True, order=True)
class AnomalySegment:
    start: int
    end: int

    def __post_init__(self):
        if self.start < 0 or self.end < self.start:
            raise ValueError(f"invalid segment [{self.start}, {self.end}]")

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def as_slice(self) -> slice:
        return slice(self.start, self.end + 1)


EXPONENTIAL = "exponential"
CUSTOM_TABLE = "custom-table"


@dataclass(frozen=True)
class DecaySpec:
    """Weight given to a segment as a function of detection delay.

    ``exponential`` weights a first detection ``offset`` steps after the segment
    start by ``rate ** offset``. ``custom-table`` looks the weight up in
    ``table`` and holds the last entry for offsets past its end.
    """

    kind: str = EXPONENTIAL
    rate: float = 0.9
    table: tuple[float, ...] | None = field(default=None)

    def __post_init__(self):
        if self.kind == EXPONENTIAL:
            if not (0.0 < self.rate <= 1.0):
                raise ValueError(f"decay rate must lie in (0, 1], got {self.rate}")
        elif self.kind == CUSTOM_TABLE:
            if not self.table:
                raise ValueError("custom decay table must be non-empty")
            table = tuple(float(v) for v in self.table)
            if table[0] != 1.0:
                raise ValueError("custom decay table must start at 1.0")
            if any(not (0.0 < v <= 1.0) for v in table):
                raise ValueError("custom decay values must lie in (0, 1]")
            if any(b > a for a, b in zip(table, table[1:])):
                raise ValueError("custom decay table must be nonincreasing")
            object.__setattr__(self, "table", table)
        else:
            raise ValueError(f"unknown decay kind {self.kind!r}")

    @classmethod
    def exponential(cls, rate: float) -> "DecaySpec":
        return cls(EXPONENTIAL, float(rate))

    @classmethod
    def from_table(cls, table: Sequence[float]) -> "DecaySpec":
        return cls(CUSTOM_TABLE, 1.0, tuple(table))

    @property
    def is_constant(self) -> bool:
        if self.kind == EXPONENTIAL:
            return self.rate == 1.0
        return all(v == 1.0 for v in self.table)

    def weights(self, length: int) -> np.ndarray:
        """Decay weights for offsets ``0 .. length-1``."""
        offsets = np.arange(length)
        if self.kind == EXPONENTIAL:
            return np.power(self.rate, offsets, dtype=float)
        table = np.asarray(self.table, dtype=float)
        return table[np.minimum(offsets, table.size - 1)]


def decay_at(spec: DecaySpec, offset: int) -> float:
    if offset < 0:
        raise ValueError(f"offset must be nonnegative, got {offset}")
    if spec.kind == EXPONENTIAL:
        return float(spec.rate**offset)
    return spec.table[min(offset, len(spec.table) - 1)]


def as_labels(labels) -> LabelSeries:
    return labels if isinstance(labels, LabelSeries) else LabelSeries(labels)


def as_scores(scores) -> ScoreSeries:
    return scores if isinstance(scores, ScoreSeries) else ScoreSeries(scores)


def as_predictions(preds, mode: str = BINARY) -> PredictionSeries:
    if isinstance(preds, PredictionSeries):
        return preds
    return PredictionSeries(preds, mode)


def check_same_length(labels: LabelSeries, other) -> None:
    if len(labels) != len(other):
        raise ValueError(
            f"length mismatch: {len(labels)} labels vs {len(other)} values"
        )


def extract_segments(labels) -> list[AnomalySegment]:
    """Maximal runs of 1s in ``labels``, sorted by start."""
    y = as_labels(labels).values
    padded = np.concatenate(([0], y, [0])).astype(np.int8)
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1) - 1
    return [AnomalySegment(int(s), int(e)) for s, e in zip(starts, ends)]
