import itertools

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from twarrow import delta as dl
from twarrow import fincat as fc
from twarrow import fixtures

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("repo")


@st.composite
def simplex_maps(draw, max_dim=4, dom=None, cod=None):
    m = draw(st.integers(0, max_dim)) if dom is None else dom
    n = draw(st.integers(0, max_dim)) if cod is None else cod
    vals = sorted(draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1)))
    return dl.make(m, n, vals)


@st.composite
def composable_pairs(draw, max_dim=4):
    """``(f, g)`` with ``compose(f, g)`` defined."""
    g = draw(simplex_maps(max_dim))
    f = draw(simplex_maps(max_dim, dom=g.cod))
    return f, g


@st.composite
def posets(draw, max_size=4):
    """A random partial order on ``0..n-1`` refining the natural order."""
    n = draw(st.integers(1, max_size))
    pairs = [(a, b) for a, b in itertools.combinations(range(n), 2)]
    rel = {p for p in pairs if draw(st.booleans())}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return fc.poset(list(range(n)), sorted(rel), name=f"P{n}:{sorted(rel)}")


@pytest.fixture(scope="session")
def cats():
    return fixtures.categories()


@pytest.fixture(scope="session")
def zoo():
    return fixtures.ssets(5)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
