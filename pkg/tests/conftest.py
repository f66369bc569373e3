import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {text}")


# --------------------------------------------------------------------------
# pipeline runs shared between modules (each is computed once per session)
# --------------------------------------------------------------------------

def _run(**kw):
    from scrollmaps.config import RunConfig
    from scrollmaps.scrolls.pipelines import run

    return run(RunConfig(**kw))


@pytest.fixture(scope="session")
def segre_projection_report():
    return _run(pipeline="prop11", prime=None)


@pytest.fixture(scope="session")
def bordiga_build():
    return _run(pipeline="build", variety="bordiga")


@pytest.fixture(scope="session")
def palatini_build():
    return _run(pipeline="build", variety="palatini")


@pytest.fixture(scope="session")
def bordiga_table():
    return _run(pipeline="table", variety="bordiga")


@pytest.fixture(scope="session")
def palatini_default():
    return _run(pipeline="thm31", variety="palatini", mode="two-skew-lines")


@pytest.fixture(scope="session")
def palatini_table():
    return _run(pipeline="table", variety="palatini")


@pytest.fixture(scope="session")
def cremona_general():
    return _run(pipeline="cremona")


@pytest.fixture(scope="session")
def cremona_special():
    return _run(pipeline="cremona", special=True)
