import pytest

from polycut.lattice import FaceLattice, make_simplex


def polyhedron(facets):
    """Lattice of a simple 3-polytope from its facets as cyclic vertex lists."""
    n = 1 + max(v for f in facets for v in f)
    rows = [(0, v, ()) for v in range(n)]
    edge_id = {}
    nxt = n
    for f in facets:
        for a, b in zip(f, f[1:] + f[:1]):
            e = frozenset((a, b))
            if e not in edge_id:
                edge_id[e] = nxt
                rows.append((1, nxt, tuple(sorted(e))))
                nxt += 1
    for f in facets:
        rows.append((2, nxt, [edge_id[frozenset((a, b))] for a, b in zip(f, f[1:] + f[:1])]))
        nxt += 1
    return FaceLattice.from_subfaces(3, rows)


PRISM_FACETS = [[0, 1, 2], [3, 4, 5], [0, 1, 4, 3], [1, 2, 5, 4], [2, 0, 3, 5]]
CUBE_FACETS = [[0, 1, 3, 2], [4, 5, 7, 6], [0, 1, 5, 4], [2, 3, 7, 6], [0, 2, 6, 4], [1, 3, 7, 5]]


@pytest.fixture
def tetra():
    return make_simplex(3)


@pytest.fixture
def prism():
    return polyhedron(PRISM_FACETS)


@pytest.fixture
def cube():
    return polyhedron(CUBE_FACETS)


# acceptance reporting: tests marked ``criterion(number, title)`` get a PASS/FAIL line

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    ok = _results.get(number, (title, True))[1]
    if rep.when == "call":
        _results[number] = (title, ok and rep.passed)
    elif rep.failed:
        _results[number] = (title, False)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, ok = _results[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}")
