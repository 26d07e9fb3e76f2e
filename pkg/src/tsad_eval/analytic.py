"""Closed-form metrics for the uniform random-score detector.

A detector that emits i.i.d. ``U(0, 1)`` scores and flags points whose score
exceeds ``theta`` calls each point normal with probability ``theta``. For one
anomaly segment of length ``n`` inside a series whose anomaly fraction is
``anomaly_ratio`` this yields exact recall/precision curves for PA and PAdf
with exponential decay.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .metrics import f_beta_score
from .protocols import PA, PADF


@dataclass(frozen=True)
class RandomModelParams:
    theta: float
    n: int
    anomaly_ratio: float = 0.05
    d: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= 1.0):
            raise ValueError(f"theta must lie in [0, 1], got {self.theta}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"segment length must be a positive integer, got {self.n}")
        if not (0.0 < self.anomaly_ratio < 1.0):
            raise ValueError(f"anomaly ratio must lie in (0, 1), got {self.anomaly_ratio}")
        if not (0.0 < self.d <= 1.0):
            raise ValueError(f"decay rate must lie in (0, 1], got {self.d}")


def pa_recall(params: RandomModelParams) -> float:
    return 1.0 - params.theta**params.n


def _precision(recall: float, params: RandomModelParams) -> float:
    a, theta = params.anomaly_ratio, params.theta
    denom = (1.0 - theta) * (1.0 - a) + (1.0 - theta**params.n) * a
    if denom == 0.0:
        return 0.0
    return a * recall / denom


def pa_precision(params: RandomModelParams) -> float:
    """PA precision; 0 at ``theta == 1`` where nothing is ever flagged."""
    return _precision(pa_recall(params), params)


def padf_recall(params: RandomModelParams) -> float:
    """Expected decayed recall: sum over n of d^n (1 - theta) theta^n."""
    theta, d, n = params.theta, params.d, params.n
    ratio = theta * d
    if ratio == 1.0:
        # theta == d == 1: geometric sum degenerates to n * (1 - theta) = 0
        return n * (1.0 - theta)
    return (1.0 - theta) * (1.0 - ratio**n) / (1.0 - ratio)


def padf_precision(params: RandomModelParams) -> float:
    return _precision(padf_recall(params), params)


def is_degenerate(params: RandomModelParams) -> bool:
    """True when the model never flags anything (precision is 0/0)."""
    return params.theta == 1.0


@dataclass(frozen=True)
class CurveSpec:
    protocol: str = PADF
    n: int = 500
    anomaly_ratio: float = 0.05
    d: float = 1.0

    def __post_init__(self):
        if self.protocol not in (PA, PADF):
            raise ValueError(f"analytic curves exist for pa and padf, not {self.protocol!r}")


@dataclass(frozen=True)
class CurvePoint:
    spec: CurveSpec
    theta: float
    precision: float
    recall: float
    f1: float
    degenerate: bool


def f1_curve(
    thetas: Sequence[float] | np.ndarray, specs: Iterable[CurveSpec], beta: float = 1.0
) -> list[CurvePoint]:
    """Analytic F-beta for every (spec, theta) pair, grouped by spec in input order."""
    thetas = list(thetas)
    specs = list(specs)
    if not thetas or not specs:
        raise ValueError("curve grid is empty")
    rows = []
    for spec in specs:
        d = spec.d if spec.protocol == PADF else 1.0
        for theta in thetas:
            params = RandomModelParams(float(theta), spec.n, spec.anomaly_ratio, d)
            if spec.protocol == PA:
                r, p = pa_recall(params), pa_precision(params)
            else:
                r, p = padf_recall(params), padf_precision(params)
            rows.append(
                CurvePoint(spec, float(theta), p, r, f_beta_score(p, r, beta), is_degenerate(params))
            )
    return rows


def max_f1(points: Iterable[CurvePoint]) -> float:
    return max(pt.f1 for pt in points)
