import numpy as np
import pytest
from hypothesis import strategies as st

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): exit criterion, reported in the summary")


def pytest_runtest_logreport(report):
    label = getattr(report, "acceptance_label", None)
    if label is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[label] = report.outcome


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        outcome.get_result().acceptance_label = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[0])):
        status = "PASS" if _ACCEPTANCE[label] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {label}")


@st.composite
def label_pred_pairs(draw, max_len=50):
    n = draw(st.integers(min_value=1, max_value=max_len))
    labels = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    preds = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return labels, preds


def random_instance(rng: np.random.Generator, max_len: int = 50):
    """Binary labels with a mix of long and short runs, plus independent predictions."""
    n = int(rng.integers(1, max_len + 1))
    p_label = rng.uniform(0.1, 0.9)
    # sticky labels give realistic multi-point segments
    labels = np.zeros(n, dtype=int)
    labels[0] = rng.random() < p_label
    for t in range(1, n):
        labels[t] = labels[t - 1] if rng.random() < 0.7 else int(rng.random() < p_label)
    preds = (rng.random(n) < rng.uniform(0.0, 0.6)).astype(int)
    return labels, preds
