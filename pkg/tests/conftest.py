import pytest

from tverberg import _pykernels, kernels

try:
    from tverberg import _kernels as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

BACKENDS = [pytest.param(_pykernels, id="python")]
if _compiled is not None:
    BACKENDS.append(pytest.param(_compiled, id="cython"))


@pytest.fixture(params=BACKENDS, scope="session")
def backend(request):
    return request.param


@pytest.fixture
def pure_python(monkeypatch):
    """Route the dispatcher to the fallback for one test."""
    monkeypatch.setattr(kernels, "_compiled", None)
    yield


_acceptance: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _acceptance[number] = (title, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, status = _acceptance[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}")
