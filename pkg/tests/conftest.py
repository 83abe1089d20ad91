import numpy as np
import pytest

from romancvd import Graph, gen_cluster_plus_k

EDGE_PROBS = (0.15, 0.3, 0.5, 0.7, 0.9)


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def small_corpus(count=320, max_n=10, max_k=4):
    """Fixed-seed cluster-plus-k graphs with n <= max_n, cycling k and edge_prob."""
    out = []
    for i in range(count):
        k = i % (max_k + 1)
        p = EDGE_PROBS[(i // (max_k + 1)) % len(EDGE_PROBS)]
        size_rng = np.random.default_rng(i)
        clique_vertices = int(size_rng.integers(1, max_n - k + 1))
        g, s = gen_cluster_plus_k(0, (1, 4), k, p, 1000 + i, total_clique_vertices=clique_vertices)
        out.append((g, s, p))
    return out


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()


# criterion pass/fail lines, printed in the terminal summary
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    number, title = mark.args
    prev = _CRITERIA.get(number, (title, True))
    _CRITERIA[number] = (title, prev[1] and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}")
