"""Cluster vertex deletion sets by bounded search over induced P3s."""

from __future__ import annotations

from typing import Iterable

from .graph import Graph, find_induced_p3, is_cluster


def verify_cvd(g: Graph, s: Iterable[int]) -> bool:
    s = set(s)
    if any(not 0 <= v < g.n for v in s):
        return False
    return is_cluster(g, s)


def find_cvd(g: Graph, k_max: int) -> frozenset[int] | None:
    """Return a minimum CVD set of size at most ``k_max``, or None.

    Budgets are tried in increasing order; for each budget the search
    branches on the lexicographically smallest induced P3, deleting its
    first, middle, then last vertex. Every CVD set hits every induced P3,
    so the first budget that succeeds is the minimum size.
    """
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    for budget in range(min(k_max, g.n) + 1):
        found = _branch(g, [], budget)
        if found is not None:
            return frozenset(found)
    return None


def _branch(g: Graph, deleted: list[int], budget: int) -> list[int] | None:
    p3 = find_induced_p3(g, deleted)
    if p3 is None:
        return list(deleted)
    if budget == 0:
        return None
    for v in p3:
        deleted.append(v)
        found = _branch(g, deleted, budget - 1)
        deleted.pop()
        if found is not None:
            return found
    return None
