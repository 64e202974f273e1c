import numpy as np
import pytest

import qinfo as q

# Reference states shared across the test modules.
RHO = np.array([[0.25, 0.25j], [-0.25j, 0.75]])
SIGMA = np.array([[0.4, 0.1j], [-0.1j, 0.6]])
PSI = (q.ket(0, 2) + q.ket(1, 2)) / np.sqrt(2)
PHI = 0.5 * q.ket(0, 2) + np.sqrt(3) / 2 * q.ket(1, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_state(d, rng):
    return q.HilbertSchmidtStates(d).sample(rng)


def random_kraus_channel(idim, odim, rng, rank=None):
    """CP-TP Kraus channel built from an isometry, independent of the Choi sampler."""
    rank = rank or idim * odim
    v = q.sample_haar_isometry(odim * rank, idim, rng)
    blocks = v.reshape(odim, rank, idim)
    return q.KrausOperators([blocks[:, k, :] for k in range(rank)])


# -- acceptance summary ----------------------------------------------------------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        _ACCEPTANCE[number] = (title, report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, outcome, seconds = _ACCEPTANCE[number]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  ({seconds:.1f}s)")
