"""Evaluation protocols for time-series anomaly detection.

Raw pointwise scoring, point adjustment (PA), PA%K and point adjustment with
a decay function (PAdf), plus closed-form random-detector curves, Monte-Carlo
baselines and best-F threshold search.
"""

from .analytic import (
    CurveSpec,
    RandomModelParams,
    f1_curve,
    pa_precision,
    pa_recall,
    padf_precision,
    padf_recall,
)
from .core import (
    AnomalySegment,
    DecaySpec,
    LabelSeries,
    PredictionSeries,
    ScoreSeries,
    decay_at,
    extract_segments,
)
from .metrics import MetricReport, compute_metrics, evaluate, f_beta_score
from .protocols import (
    EffectiveCounts,
    ProtocolConfig,
    adjust_pa,
    adjust_pak,
    score,
    score_padf_binary,
    score_padf_probabilistic,
    score_raw,
)
from .simulate import ScenarioSpec, SegmentPlan, TrialStats, build_scenario, random_scores, run_baseline
from .thresholding import ThresholdSpec, best_f1, binarize

__version__ = "0.1.0"

__all__ = [
    "AnomalySegment",
    "CurveSpec",
    "DecaySpec",
    "EffectiveCounts",
    "LabelSeries",
    "MetricReport",
    "PredictionSeries",
    "ProtocolConfig",
    "RandomModelParams",
    "ScenarioSpec",
    "ScoreSeries",
    "SegmentPlan",
    "ThresholdSpec",
    "TrialStats",
    "adjust_pa",
    "adjust_pak",
    "best_f1",
    "binarize",
    "build_scenario",
    "compute_metrics",
    "decay_at",
    "evaluate",
    "extract_segments",
    "f1_curve",
    "f_beta_score",
    "pa_precision",
    "pa_recall",
    "padf_precision",
    "padf_recall",
    "random_scores",
    "run_baseline",
    "score",
    "score_padf_binary",
    "score_padf_probabilistic",
    "score_raw",
]
