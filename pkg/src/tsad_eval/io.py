"""Reading series files and writing evaluation reports.

Series files are either a headered single-column CSV (UTF-8, one value per
line) or a flat JSON array. Reports are JSON or CSV with a fixed column order
and metrics printed to 6 decimals, so repeated runs are byte-identical.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

from .analytic import CurvePoint
from .core import BINARY, PROBABILISTIC, LabelSeries, PredictionSeries, ScoreSeries
from .metrics import MetricReport
from .protocols import PADF, PAK
from .simulate import METRICS, TrialStats

KINDS = ("labels", "scores", "predictions-binary", "predictions-prob")
REPORT_COLUMNS = ("protocol", "params", "threshold", "precision", "recall", "f1")


class SeriesFormatError(ValueError):
    """A series file could not be parsed; ``line`` is 1-based when known."""

    def __init__(self, path, message: str, line: int | None = None):
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


def _parse_csv(path: Path, text: str) -> list[tuple[int, float]]:
    lines = text.splitlines()
    if not lines:
        raise SeriesFormatError(path, "empty file")
    rows = []
    # line 1 is the header
    for lineno, raw in enumerate(lines[1:], start=2):
        cell = raw.strip()
        if not cell:
            continue
        if "," in cell:
            raise SeriesFormatError(path, f"expected one value, got {cell!r}", lineno)
        try:
            value = float(cell)
        except ValueError:
            raise SeriesFormatError(path, f"not a number: {cell!r}", lineno) from None
        rows.append((lineno, value))
    return rows


def _parse_json(path: Path, text: str) -> list[tuple[int | None, float]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SeriesFormatError(path, f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(data, list):
        raise SeriesFormatError(path, "expected a flat JSON array")
    rows = []
    for i, value in enumerate(data):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SeriesFormatError(path, f"element {i} is not a number: {value!r}")
        rows.append((None, float(value)))
    return rows


def _check_domain(path, rows, kind: str) -> None:
    for pos, (lineno, v) in enumerate(rows):
        if kind in ("labels", "predictions-binary"):
            ok = v in (0.0, 1.0)
            expected = "0 or 1"
        elif kind == "predictions-prob":
            ok = 0.0 <= v <= 1.0
            expected = "a probability in [0, 1]"
        else:
            ok = math.isfinite(v)
            expected = "a finite number"
        if not ok:
            detail = "" if lineno is not None else f" (element {pos})"
            raise SeriesFormatError(path, f"value {v!r} is not {expected}{detail}", lineno)


def read_series(path, kind: str):
    """Load a labels/scores/predictions file and return the validated series."""
    if kind not in KINDS:
        raise ValueError(f"unknown series kind {kind!r}")
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        rows = _parse_json(path, text)
    else:
        rows = _parse_csv(path, text)
    if not rows:
        raise SeriesFormatError(path, "series has no values")
    _check_domain(path, rows, kind)
    values = [v for _, v in rows]
    if kind == "labels":
        return LabelSeries(values)
    if kind == "scores":
        return ScoreSeries(values)
    return PredictionSeries(values, BINARY if kind == "predictions-binary" else PROBABILISTIC)


def write_series(path, series, header: str | None = None) -> None:
    path = Path(path)
    values = series.values
    integral = values.dtype.kind in "iu"
    if path.suffix.lower() == ".json":
        data = [int(v) for v in values] if integral else [float(v) for v in values]
        path.write_text(json.dumps(data) + "\n", encoding="utf-8")
        return
    if header is None:
        header = "label" if isinstance(series, LabelSeries) else (
            "score" if isinstance(series, ScoreSeries) else "prediction"
        )
    body = [str(int(v)) if integral else repr(float(v)) for v in values]
    path.write_text("\n".join([header, *body]) + "\n", encoding="utf-8")


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def report_record(report: MetricReport) -> dict:
    """Ordered JSON-ready mapping for one report."""
    cfg = report.protocol
    rec = {"protocol": cfg.protocol if cfg else None}
    if cfg is not None and cfg.protocol == PAK:
        rec["k"] = cfg.k
    if cfg is not None and cfg.protocol == PADF:
        rec["d"] = cfg.decay.rate if cfg.decay.kind == "exponential" else list(cfg.decay.table)
        rec["precision_mode"] = cfg.precision_mode
    if report.beta != 1.0:
        rec["beta"] = report.beta
    rec["threshold"] = report.threshold
    rec["precision"] = round(report.precision, 6)
    rec["recall"] = round(report.recall, 6)
    rec["f1"] = round(report.f_beta, 6)
    rec["flags"] = sorted(report.flags)
    return rec


def _report_row(report: MetricReport) -> list[str]:
    cfg = report.protocol
    return [
        cfg.protocol if cfg else "",
        cfg.params if cfg else "",
        "" if report.threshold is None else repr(float(report.threshold)),
        _fmt(report.precision),
        _fmt(report.recall),
        _fmt(report.f_beta),
    ]


def csv_text(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _format_for(path: Path, fmt: str | None) -> str:
    fmt = fmt or path.suffix.lower().lstrip(".")
    if fmt not in ("json", "csv"):
        raise ValueError(f"report format must be json or csv, got {fmt!r}")
    return fmt


def write_report(reports, path, fmt: str | None = None) -> None:
    """Write one report (JSON object) or several (JSON array / CSV rows)."""
    single = isinstance(reports, MetricReport)
    reports = [reports] if single else list(reports)
    if not reports:
        raise ValueError("no reports to write")
    path = Path(path)
    fmt = _format_for(path, fmt)
    if fmt == "json":
        records = [report_record(r) for r in reports]
        payload = records[0] if single else records
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = csv_text(REPORT_COLUMNS, (_report_row(r) for r in reports))
    path.write_text(text, encoding="utf-8")


def write_curve(points: Sequence[CurvePoint], path) -> None:
    """Write analytic curve rows.

    A single curve is written as ``theta,f1``; several curves get identifying
    ``protocol,n,d,anomaly_ratio`` columns in front.
    """
    points = list(points)
    if not points:
        raise ValueError("no curve points to write")
    specs = {pt.spec for pt in points}
    if len(specs) == 1:
        header = ("theta", "f1")
        rows = ((f"{pt.theta:.10g}", _fmt(pt.f1)) for pt in points)
    else:
        header = ("protocol", "n", "d", "anomaly_ratio", "theta", "f1")
        rows = (
            (pt.spec.protocol, str(pt.spec.n), f"{pt.spec.d:g}", f"{pt.spec.anomaly_ratio:g}",
             f"{pt.theta:.10g}", _fmt(pt.f1))
            for pt in points
        )
    Path(path).write_text(csv_text(header, rows), encoding="utf-8")


def stats_record(stats: TrialStats) -> dict:
    cfg = stats.protocol
    rec = {"protocol": cfg.protocol if cfg else None, "params": cfg.params if cfg else ""}
    spec = stats.threshold
    if spec is not None:
        rec["threshold"] = spec.value if spec.mode == "fixed" else "sweep"
    rec["trials"] = stats.n
    rec["seed"] = stats.seed
    rec["mean"] = {m: round(stats.mean[m], 6) for m in METRICS}
    rec["variance"] = {m: float(f"{stats.variance[m]:.6e}") for m in METRICS}
    return rec


def write_stats(stats: Sequence[TrialStats], path, fmt: str | None = None) -> None:
    stats = list(stats)
    if not stats:
        raise ValueError("no statistics to write")
    path = Path(path)
    fmt = _format_for(path, fmt)
    if fmt == "json":
        text = json.dumps([stats_record(s) for s in stats], indent=2) + "\n"
    else:
        header = ["protocol", "params", "trials", "seed"]
        header += [f"{m}_mean" for m in METRICS] + [f"{m}_var" for m in METRICS]
        rows = []
        for s in stats:
            cfg = s.protocol
            rows.append(
                [cfg.protocol, cfg.params, str(s.n), str(s.seed)]
                + [_fmt(s.mean[m]) for m in METRICS]
                + [f"{s.variance[m]:.6e}" for m in METRICS]
            )
        text = csv_text(header, rows)
    path.write_text(text, encoding="utf-8")
