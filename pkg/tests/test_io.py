import json

import pytest
from hypothesis import given, settings, strategies as st

from tsad_eval import io
from tsad_eval.analytic import CurveSpec, f1_curve
from tsad_eval.core import LabelSeries, PredictionSeries, ScoreSeries
from tsad_eval.metrics import evaluate
from tsad_eval.protocols import ProtocolConfig


def test_read_csv_labels(tmp_path):
    path = tmp_path / "labels.csv"
    path.write_text("label\n0\n1\n1\n")
    labels = io.read_series(path, "labels")
    assert isinstance(labels, LabelSeries)
    assert labels.values.tolist() == [0, 1, 1]


def test_read_json_scores(tmp_path):
    path = tmp_path / "scores.json"
    path.write_text("[0.2, 0.9]")
    scores = io.read_series(path, "scores")
    assert isinstance(scores, ScoreSeries)
    assert scores.values.tolist() == [0.2, 0.9]


def test_bad_label_names_line(tmp_path):
    path = tmp_path / "labels.csv"
    path.write_text("label\n0\n1\n2\n")
    with pytest.raises(io.SeriesFormatError, match=r"labels\.csv:4") as err:
        io.read_series(path, "labels")
    assert err.value.line == 4


@pytest.mark.parametrize(
    "text, kind, match",
    [
        ("label\n", "labels", "no values"),
        ("", "labels", "empty"),
        ("score\n0.1\nabc\n", "scores", ":3"),
        ("score\n0.1,0.2\n", "scores", ":2"),
        ("p\n0.5\n1.5\n", "predictions-prob", ":3"),
        ("p\n0.5\n", "predictions-binary", ":2"),
        ("score\nnan\n", "scores", ":2"),
    ],
)
def test_csv_errors(tmp_path, text, kind, match):
    path = tmp_path / "x.csv"
    path.write_text(text)
    with pytest.raises(io.SeriesFormatError, match=match):
        io.read_series(path, kind)


@pytest.mark.parametrize("text", ["{\"a\": 1}", "[1, \"x\"]", "[0, true]", "[1,", "[]"])
def test_json_errors(tmp_path, text):
    path = tmp_path / "x.json"
    path.write_text(text)
    with pytest.raises(io.SeriesFormatError):
        io.read_series(path, "labels")


def test_unknown_kind(tmp_path):
    with pytest.raises(ValueError):
        io.read_series(tmp_path / "x.csv", "weights")


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        io.read_series(tmp_path / "absent.csv", "labels")


@settings(max_examples=50)
@given(
    st.lists(st.integers(0, 1), min_size=1, max_size=40),
    st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=40),
    st.sampled_from([".csv", ".json"]),
)
def test_round_trip(tmp_path_factory, labels, scores, suffix):
    d = tmp_path_factory.mktemp("rt")
    io.write_series(d / f"l{suffix}", LabelSeries(labels))
    assert io.read_series(d / f"l{suffix}", "labels").values.tolist() == labels
    io.write_series(d / f"s{suffix}", ScoreSeries(scores))
    assert io.read_series(d / f"s{suffix}", "scores").values.tolist() == scores
    io.write_series(d / f"p{suffix}", PredictionSeries(labels))
    assert io.read_series(d / f"p{suffix}", "predictions-binary").values.tolist() == labels


def _reports():
    labels = [0, 1, 1, 1, 0, 0, 1, 0]
    preds = [0, 0, 1, 0, 1, 0, 1, 0]
    return [
        evaluate(labels, preds, ProtocolConfig("raw")),
        evaluate(labels, preds, ProtocolConfig("pak", k=20)),
        evaluate(labels, preds, ProtocolConfig.padf(0.9), threshold=0.5),
    ]


def test_single_padf_report_json(tmp_path):
    report = _reports()[2]
    path = tmp_path / "r.json"
    io.write_report(report, path)
    data = json.loads(path.read_text())
    assert list(data) == ["protocol", "d", "precision_mode", "threshold", "precision", "recall", "f1", "flags"]
    assert data["protocol"] == "padf" and data["d"] == 0.9 and data["threshold"] == 0.5
    assert data["f1"] == round(report.f1, 6)


def test_multi_report_csv(tmp_path):
    path = tmp_path / "r.csv"
    io.write_report(_reports(), path)
    lines = path.read_text().splitlines()
    assert lines[0] == "protocol,params,threshold,precision,recall,f1"
    assert lines[1].startswith("raw,,,")
    assert lines[2].startswith("pak,k=20,,")
    assert lines[3].startswith("padf,d=0.9;mode=decayed,0.5,")
    assert all(len(cell.split(".")[1]) == 6 for cell in lines[3].split(",")[3:])


def test_report_output_is_byte_stable(tmp_path):
    io.write_report(_reports(), tmp_path / "a.json")
    io.write_report(_reports(), tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_report_errors(tmp_path):
    with pytest.raises(ValueError):
        io.write_report([], tmp_path / "r.json")
    with pytest.raises(ValueError):
        io.write_report(_reports(), tmp_path / "r.txt")
    with pytest.raises(OSError):
        io.write_report(_reports(), tmp_path / "missing" / "r.json")


def test_curve_csv(tmp_path):
    path = tmp_path / "c.csv"
    io.write_curve(f1_curve([0.0, 0.5, 1.0], [CurveSpec("pa", 20)]), path)
    lines = path.read_text().splitlines()
    assert lines[0] == "theta,f1"
    assert lines[-1] == "1,0.000000"
    io.write_curve(f1_curve([0.0, 1.0], [CurveSpec("pa", 20), CurveSpec("padf", 20, d=0.9)]), path)
    lines = path.read_text().splitlines()
    assert lines[0] == "protocol,n,d,anomaly_ratio,theta,f1"
    assert len(lines) == 5
