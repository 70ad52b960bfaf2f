from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bellcomp.ring import MultiPoly

rationals = st.builds(
    Fraction,
    st.integers(min_value=-20, max_value=20),
    st.integers(min_value=1, max_value=12),
)

nonzero_rationals = rationals.filter(bool)

monomial_maps = st.dictionaries(
    st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=3), max_size=3
)

polys = st.lists(st.tuples(monomial_maps, rationals), max_size=4).map(
    lambda terms: sum((MultiPoly.term(c, m) for m, c in terms), MultiPoly())
)

ring_elements = st.one_of(rationals, polys)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" in getattr(rep, "nodeid", "") and rep.when == "call":
                doc = getattr(rep, "criterion", None) or rep.nodeid.split("::")[-1]
                lines.append((rep.location[1], f"{'PASS' if outcome == 'passed' else 'FAIL'}  {doc}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker:
        outcome.get_result().criterion = marker.args[0]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(text): acceptance criterion label")
