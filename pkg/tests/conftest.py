import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gengraph.groups import GroupSpec
from gengraph.perm import Permutation

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def perms(draw, n=None, min_n=1, max_n=9):
    if n is None:
        n = draw(st.integers(min_value=min_n, max_value=max_n))
    return Permutation(tuple(draw(st.permutations(range(n)))))


@st.composite
def perm_pairs(draw, min_n=1, max_n=9, count=2):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    return tuple(draw(perms(n)) for _ in range(count))


@st.composite
def group_elements(draw, spec: GroupSpec):
    p = draw(perms(spec.n))
    if not spec.contains(p):
        p = p * Permutation.parse("(1 2)", spec.n)
    return p


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("GENGRAPH_CACHE_DIR", str(tmp_path / "cache"))


# one line per acceptance criterion, echoed after the run so it survives output capture
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
