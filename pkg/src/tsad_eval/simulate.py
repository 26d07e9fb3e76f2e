"""Monte-Carlo random-score baselines and synthetic detection scenarios.

Random scores come from numpy's PCG64 bit generator seeded through
``SeedSequence``; trial ``i`` of a run seeded with ``seed`` uses the child
stream ``SeedSequence(seed, spawn_key=(i,))``, which is identical to
``SeedSequence(seed).spawn(n)[i]`` and reproducible across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import LabelSeries, PredictionSeries, ScoreSeries, as_labels, extract_segments
from .metrics import MetricReport, evaluate
from .protocols import ProtocolConfig
from .thresholding import ThresholdSpec, evaluate_scores

METRICS = ("precision", "recall", "f1")
DEFAULT_TRIALS = 5


def trial_rng(seed: int, trial: int | None = None) -> np.random.Generator:
    if trial is None:
        ss = np.random.SeedSequence(seed)
    else:
        ss = np.random.SeedSequence(seed, spawn_key=(trial,))
    return np.random.Generator(np.random.PCG64(ss))


def random_scores(tau: int, seed: int, trial: int | None = None) -> ScoreSeries:
    """``tau`` i.i.d. uniform [0, 1) scores."""
    if tau < 1:
        raise ValueError(f"tau must be >= 1, got {tau}")
    return ScoreSeries(trial_rng(seed, trial).random(tau))


@dataclass
class RunningStats:
    """Streaming mean and (population) variance; ``merge`` is associative."""

    n: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def push(self, x: float) -> None:
        self.n += 1
        delta = x - self.mean
        self.mean += delta / self.n
        self.m2 += delta * (x - self.mean)

    def merge(self, other: "RunningStats") -> "RunningStats":
        n = self.n + other.n
        if n == 0:
            return RunningStats()
        delta = other.mean - self.mean
        mean = self.mean + delta * other.n / n
        m2 = self.m2 + other.m2 + delta * delta * self.n * other.n / n
        return RunningStats(n, mean, m2)

    @property
    def variance(self) -> float:
        return max(self.m2 / self.n, 0.0) if self.n else 0.0


@dataclass(frozen=True)
class TrialStats:
    n: int
    seed: int
    mean: dict[str, float]
    variance: dict[str, float]
    protocol: ProtocolConfig | None = None
    threshold: ThresholdSpec | None = None

    def stderr(self, metric: str) -> float:
        # variance is the population one; rescale to the unbiased estimate
        if self.n < 2:
            return 0.0
        return math.sqrt(self.variance[metric] / (self.n - 1))


def run_baseline(
    labels,
    config: ProtocolConfig | None = None,
    n_trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    threshold: ThresholdSpec | float | None = None,
) -> TrialStats:
    """Evaluate ``n_trials`` independent random-score detectors on ``labels``.

    ``threshold`` is a fixed value, a ``ThresholdSpec``, or ``None`` for a
    best-F sweep per trial.
    """
    if n_trials < 1:
        raise ValueError(f"n_trials must be >= 1, got {n_trials}")
    labels = as_labels(labels)
    config = config or ProtocolConfig()
    if threshold is None:
        spec = ThresholdSpec()
    elif isinstance(threshold, ThresholdSpec):
        spec = threshold
    else:
        spec = ThresholdSpec.fixed(threshold)
    stats = {m: RunningStats() for m in METRICS}
    for trial in range(n_trials):
        scores = random_scores(len(labels), seed, trial)
        _, report = evaluate_scores(labels, scores, config, spec)
        for m in METRICS:
            stats[m].push(getattr(report, m))
    return TrialStats(
        n=n_trials,
        seed=seed,
        mean={m: stats[m].mean for m in METRICS},
        variance={m: stats[m].variance for m in METRICS},
        protocol=config,
        threshold=spec,
    )


@dataclass(frozen=True)
class SegmentPlan:
    """One anomaly segment and how the detector treats it.

    ``delay`` is the offset of the first flagged point (``None`` = missed);
    ``extra_hits`` are further flagged offsets, all later than ``delay``.
    """

    start: int
    length: int
    delay: int | None = None
    extra_hits: tuple[int, ...] = ()


@dataclass(frozen=True)
class ScenarioSpec:
    tau: int
    segments: tuple[SegmentPlan, ...] = ()
    false_positives: tuple[int, ...] = field(default=())

    def validate(self) -> None:
        if self.tau < 1:
            raise ValueError("tau must be >= 1")
        prev_end = -2
        for plan in sorted(self.segments, key=lambda p: p.start):
            if plan.length < 1:
                raise ValueError(f"segment at {plan.start} has length {plan.length}")
            if plan.start < 0 or plan.start + plan.length > self.tau:
                raise ValueError(f"segment at {plan.start} does not fit in tau={self.tau}")
            # touching segments would merge into one run
            if plan.start <= prev_end + 1:
                raise ValueError(f"segment at {plan.start} overlaps or touches its neighbour")
            prev_end = plan.start + plan.length - 1
            if plan.delay is not None and not (0 <= plan.delay < plan.length):
                raise ValueError(
                    f"delay {plan.delay} outside segment of length {plan.length}"
                )
            for hit in plan.extra_hits:
                if plan.delay is None or not (plan.delay < hit < plan.length):
                    raise ValueError(f"extra hit {hit} must come after the first hit")
        inside = set()
        for plan in self.segments:
            inside.update(range(plan.start, plan.start + plan.length))
        for t in self.false_positives:
            if not (0 <= t < self.tau) or t in inside:
                raise ValueError(f"false positive at {t} is not a normal timestamp")


def build_scenario(spec: ScenarioSpec) -> tuple[LabelSeries, PredictionSeries]:
    spec.validate()
    y = np.zeros(spec.tau, dtype=np.int8)
    yhat = np.zeros(spec.tau, dtype=np.int8)
    for plan in spec.segments:
        y[plan.start : plan.start + plan.length] = 1
        if plan.delay is not None:
            yhat[plan.start + plan.delay] = 1
            for hit in plan.extra_hits:
                yhat[plan.start + hit] = 1
    yhat[list(spec.false_positives)] = 1
    return LabelSeries(y), PredictionSeries(yhat)


def scenario_layout(labels) -> list[tuple[int, int]]:
    return [(seg.start, seg.length) for seg in extract_segments(labels)]


@dataclass(frozen=True)
class Case:
    name: str
    description: str
    spec: ScenarioSpec


def _case(name, description, delay=None, extra=(), fps=()):
    plan = SegmentPlan(_SEG_START, _SEG_LEN, delay, tuple(extra))
    return Case(name, description, ScenarioSpec(_TAU, (plan,), tuple(fps)))


_TAU, _SEG_START, _SEG_LEN = 24, 8, 7
_SEG_END = _SEG_START + _SEG_LEN - 1


def delay_fp_suite() -> list[Case]:
    """Sixteen single-segment cases probing delay, late follow-ups and false alarms.

    The anomaly segment covers 7 points. Cases b-h move a single detection from
    the first to the last point; i-l detect immediately and then again later
    (l adds one trailing false alarm); m flags only normal points; n-p flag a
    run that starts with the segment and spills 3, 2 and 0 points past it.
    """
    cases = [_case("a", "no detections")]
    for j in range(_SEG_LEN):
        cases.append(_case(chr(ord("b") + j), f"single detection at delay {j}", delay=j))
    cases += [
        _case("i", "immediate detection, follow-up at delay 3", 0, (3,)),
        _case("j", "immediate detection, follow-up at delay 6", 0, (6,)),
        _case("k", "immediate detection, follow-ups at delays 3-6", 0, (3, 4, 5, 6)),
        _case("l", "immediate detection, follow-up at delay 6, one trailing false alarm",
              0, (6,), (_SEG_END + 2,)),
        _case("m", "false alarms only", fps=tuple(range(_SEG_END + 2, _SEG_END + 8))),
        _case("n", "run over the segment plus 3 trailing points",
              0, tuple(range(1, _SEG_LEN)), tuple(range(_SEG_END + 1, _SEG_END + 4))),
        _case("o", "run over the segment plus 2 trailing points",
              0, tuple(range(1, _SEG_LEN)), tuple(range(_SEG_END + 1, _SEG_END + 3))),
        _case("p", "run exactly over the segment", 0, tuple(range(1, _SEG_LEN))),
    ]
    return cases


SUITES = {"appendix-d": delay_fp_suite, "delay-fp": delay_fp_suite}


def run_suite(name: str, config: ProtocolConfig) -> list[tuple[Case, MetricReport]]:
    try:
        factory = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}") from None
    rows = []
    for case in factory():
        labels, preds = build_scenario(case.spec)
        rows.append((case, evaluate(labels, preds, config)))
    return rows
