from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from slt.syntax import parse

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

settings.register_profile(
    "default", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", deadline=None, max_examples=1000)
settings.load_profile("default")

# filled in by test_acceptance.py, printed at the end of the session
ACCEPTANCE: dict = {}


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_fixture(name: str):
    return parse(fixture_path(name).read_text())


@pytest.fixture
def gift_global():
    return load_fixture("gift_global.lgt")


@pytest.fixture
def gift_decls():
    return load_fixture("gift_decls.lgt")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0][2:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
