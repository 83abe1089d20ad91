"""Instance generators.

All randomness comes from numpy's PCG64 bit generator seeded through a
``SeedSequence``, so a given seed reproduces the same instance on any
platform. Child streams for sub-tasks come from ``SeedSequence.spawn``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Graph
from .scp import ScpInstance


def make_rng(seed) -> np.random.Generator:
    """PCG64 generator from an int seed or an already spawned ``SeedSequence``."""
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(seed))


def gen_cluster_plus_k(num_cliques: int, clique_size_range: tuple[int, int], k: int,
                       edge_prob: float, seed: int,
                       total_clique_vertices: int | None = None) -> tuple[Graph, frozenset[int]]:
    """Disjoint cliques plus ``k`` modulator vertices wired in at random.

    Clique vertices come first (0..), modulator vertices last. Every
    modulator-clique pair and every modulator-modulator pair becomes an edge
    independently with probability ``edge_prob``. With
    ``total_clique_vertices`` set, clique sizes are drawn until that many
    clique vertices exist (the last clique is truncated) and
    ``num_cliques`` is ignored.
    """
    lo, hi = clique_size_range
    if lo < 1 or hi < lo or k < 0 or num_cliques < 0 or not 0.0 <= edge_prob <= 1.0:
        raise ValueError("bad generator parameters")
    sizes_rng, edge_rng = (make_rng(s) for s in np.random.SeedSequence(seed).spawn(2))
    if total_clique_vertices is None:
        sizes = sizes_rng.integers(lo, hi + 1, size=num_cliques).tolist()
    else:
        sizes = []
        left = total_clique_vertices
        while left > 0:
            size = min(int(sizes_rng.integers(lo, hi + 1)), left)
            sizes.append(size)
            left -= size
    edges = []
    start = 0
    for size in sizes:
        edges.extend((start + a, start + b) for a in range(size) for b in range(a + 1, size))
        start += size
    nc = start
    n = nc + k
    modulator = list(range(nc, n))
    if k:
        hits = edge_rng.random((k, nc)) < edge_prob
        for i, j in zip(*np.nonzero(hits)):
            edges.append((int(j), nc + int(i)))
        inner = edge_rng.random((k, k)) < edge_prob
        for i in range(k):
            for j in range(i + 1, k):
                if inner[i, j]:
                    edges.append((nc + i, nc + j))
    return Graph.from_edges(n, edges), frozenset(modulator)


@dataclass(frozen=True)
class Reduction:
    graph: Graph
    universe_vertices: tuple[int, ...]   # a CVD set and a vertex cover of ``graph``
    first_copies: tuple[int, ...]
    second_copies: tuple[int, ...]


def hitting_set_to_rd_instance(universe_size: int, family: Sequence[Sequence[int]]) -> Reduction:
    """Split graph whose Roman domination number is twice the minimum hitting set.

    Element ``i`` becomes vertex ``i``; the elements form a clique. Set ``j``
    becomes two vertices ``n + j`` and ``n + m + j``, each adjacent to exactly
    the elements of the set.
    """
    n, m = universe_size, len(family)
    edges = [(a, b) for a in range(n) for b in range(a + 1, n)]
    for j, members in enumerate(family):
        members = set(members)
        if not members:
            raise ValueError(f"set {j} is empty; its vertices could never be dominated cheaply")
        if any(not 0 <= e < n for e in members):
            raise ValueError(f"set {j} has an element outside the universe")
        for e in sorted(members):
            edges.append((e, n + j))
            edges.append((e, n + m + j))
    g = Graph.from_edges(n + 2 * m, edges)
    return Reduction(g, tuple(range(n)), tuple(range(n, n + m)), tuple(range(n + m, n + 2 * m)))


def random_hitting_set(rng: np.random.Generator, max_universe: int, max_sets: int,
                       max_set_size: int) -> tuple[int, list[list[int]]]:
    n = int(rng.integers(1, max_universe + 1))
    m = int(rng.integers(0, max_sets + 1))
    family = []
    for _ in range(m):
        size = int(rng.integers(1, min(max_set_size, n) + 1))
        family.append(sorted(rng.choice(n, size=size, replace=False).tolist()))
    return n, family


def random_scp_instance(rng: np.random.Generator, max_universe: int = 6, max_sets: int = 10,
                        max_blocks: int = 4, flag_values: Sequence[int] = (0, 1, 2)) -> ScpInstance:
    u = int(rng.integers(0, max_universe + 1))
    q = int(rng.integers(1, max_blocks + 1))
    m = int(rng.integers(q, max(q, max_sets) + 1))
    # split m sets into q non-empty consecutive blocks
    cuts = sorted(rng.choice(np.arange(1, m), size=q - 1, replace=False).tolist()) if q > 1 else []
    bounds = [0] + cuts + [m]
    sizes = [b - a for a, b in zip(bounds, bounds[1:])]
    family = rng.integers(0, 1 << u, size=m).tolist()
    flags = [int(x) for x in rng.choice(list(flag_values), size=q)]
    return ScpInstance(u, tuple(family), tuple(sizes), tuple(flags))
