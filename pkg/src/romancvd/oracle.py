"""Exhaustive reference solvers.

These are deliberately naive: they enumerate every candidate and keep the
best one. Speed only comes from evaluating whole chunks of candidates at a
time with numpy; no pruning or problem structure is used beyond what is
stated in each docstring.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .graph import Graph, RomanLabeling, is_cluster
from .scp import ScpInstance

DEFAULT_CAP = 14
TWOS_CAP = 26
HITTING_SET_CAP = 20
_CHUNK = 3 ** 11


class OracleRefused(ValueError):
    """Instance is larger than the configured enumeration cap."""


def _nbr_masks(g: Graph) -> list[int]:
    return [sum(1 << u for u in g.adj[v]) for v in range(g.n)]


def _enumerate_labelings(g: Graph, independent: bool, cap: int):
    if g.n > cap:
        raise OracleRefused(f"graph has {g.n} vertices; oracle cap is {cap} (3^n labelings)")
    n = g.n
    nbr = _nbr_masks(g)
    total = 3 ** n
    best_w, best_t = None, None
    pow3 = [3 ** (n - 1 - v) for v in range(n)]  # vertex 0 is the most significant digit
    for lo in range(0, total, _CHUNK):
        t = np.arange(lo, min(total, lo + _CHUNK), dtype=np.int64)
        labels = np.stack([(t // p) % 3 for p in pow3], axis=1) if n else np.zeros((len(t), 0), np.int64)
        twos = np.zeros(len(t), dtype=np.int64)
        nonzero = np.zeros(len(t), dtype=np.int64)
        for v in range(n):
            twos |= (labels[:, v] == 2).astype(np.int64) << v
            nonzero |= (labels[:, v] != 0).astype(np.int64) << v
        ok = np.ones(len(t), dtype=bool)
        for v in range(n):
            ok &= (labels[:, v] != 0) | ((twos & nbr[v]) != 0)
            if independent:
                ok &= (labels[:, v] == 0) | ((nonzero & nbr[v]) == 0)
        if not ok.any():
            continue
        weights = labels.sum(axis=1)
        weights = np.where(ok, weights, 2 * n + 1)
        i = int(np.argmin(weights))
        if best_w is None or weights[i] < best_w:
            best_w, best_t = int(weights[i]), int(t[i])
    labels = tuple((best_t // p) % 3 for p in pow3)
    return best_w, RomanLabeling(labels)


def brute_force_rd(g: Graph, cap: int | None = None, method: str = "labelings"):
    """Roman domination number by exhaustive search.

    ``method="labelings"`` walks all ``3**n`` labelings in base-3 order and
    returns the first of minimum weight. ``method="twos"`` walks the ``2**n``
    choices of the label-2 set instead: once that set is fixed, the cheapest
    valid labeling gives 1 to exactly the vertices it leaves undominated, so
    nothing is lost. It allows larger graphs (cap ``TWOS_CAP``). Ties again
    go to the lexicographically smallest labeling.
    """
    if method == "labelings":
        return _enumerate_labelings(g, independent=False, cap=cap or DEFAULT_CAP)
    if method == "twos":
        return _by_twos(g, cap=cap or TWOS_CAP)
    raise ValueError(f"unknown method {method!r}")


def brute_force_ird(g: Graph, cap: int | None = None):
    return _enumerate_labelings(g, independent=True, cap=cap or DEFAULT_CAP)


def _closed_unions(g: Graph) -> np.ndarray:
    """``out[X]`` = bitmask of N[X] for every vertex subset X."""
    n = g.n
    out = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        closed = (1 << v) | sum(1 << u for u in g.adj[v])
        out[1 << v: 1 << (v + 1)] = out[: 1 << v] | closed
    return out


def _by_twos(g: Graph, cap: int):
    n = g.n
    if n > cap:
        raise OracleRefused(f"graph has {n} vertices; oracle cap is {cap} (2^n label-2 sets)")
    full = (1 << n) - 1
    twos = np.arange(1 << n, dtype=np.int64)
    ones = full & ~_closed_unions(g)
    weight = 2 * np.bitwise_count(twos).astype(np.int64) + np.bitwise_count(ones)
    best = int(weight.min())
    cands = np.flatnonzero(weight == best)
    labelings = []
    for x in cands:
        x = int(x)
        o = int(ones[x])
        labelings.append(tuple(2 if x >> v & 1 else (1 if o >> v & 1 else 0) for v in range(n)))
    return best, RomanLabeling(min(labelings))


def brute_force_hitting_set(universe_size: int, family: Sequence[Sequence[int]],
                            cap: int = HITTING_SET_CAP) -> int | None:
    """Minimum number of universe elements meeting every family member (None if impossible)."""
    if universe_size > cap:
        raise OracleRefused(f"universe has {universe_size} elements; cap is {cap}")
    masks = [sum(1 << e for e in s) for s in family]
    for size in range(universe_size + 1):
        for chosen in itertools.combinations(range(universe_size), size):
            hit = sum(1 << e for e in chosen)
            if all(hit & s for s in masks):
                return size
    return None


def domination_number(g: Graph, cap: int = TWOS_CAP) -> int:
    if g.n > cap:
        raise OracleRefused(f"graph has {g.n} vertices; cap is {cap}")
    full = (1 << g.n) - 1
    sizes = np.bitwise_count(np.arange(1 << g.n, dtype=np.int64))
    dominating = _closed_unions(g) == full
    return int(sizes[dominating].min())


def min_cvd_size(g: Graph, cap: int = 16) -> int:
    if g.n > cap:
        raise OracleRefused(f"graph has {g.n} vertices; cap is {cap}")
    for size in range(g.n + 1):
        for s in itertools.combinations(range(g.n), size):
            if is_cluster(g, s):
                return size
    return g.n


def _subset_table(inst: ScpInstance):
    m = inst.m
    subs = np.arange(1 << m, dtype=np.int64)
    union = np.zeros(1 << m, dtype=np.int64)
    for i, s in enumerate(inst.family):
        union[1 << i: 1 << (i + 1)] = union[: 1 << i] | s
    full = (1 << inst.universe_size) - 1
    ok = union == full
    cost = 2 * np.bitwise_count(subs).astype(np.int64)
    counts = []
    for r in inst.blocks():
        bmask = sum(1 << i for i in r)
        counts.append(np.bitwise_count(subs & bmask).astype(np.int64))
    return subs, ok, cost, counts


def _best(subs, ok, objective):
    if not ok.any():
        return float("inf"), ()
    objective = np.where(ok, objective, np.iinfo(np.int64).max)
    i = int(np.argmin(objective))
    x = int(subs[i])
    return int(objective[i]), tuple(j for j in range(x.bit_length()) if x >> j & 1)


def brute_force_scp(inst: ScpInstance, cap: int = 16):
    """Minimum of 2|X| + untouched flag-1 blocks over all 2^m subfamilies X."""
    if inst.m > cap:
        raise OracleRefused(f"family has {inst.m} sets; cap is {cap}")
    subs, ok, cost, counts = _subset_table(inst)
    for f, cnt in zip(inst.flags, counts):
        if f == 2:
            ok &= cnt >= 1
        elif f == 1:
            cost = cost + (cnt == 0)
    return _best(subs, ok, cost)


def brute_force_iscp(inst: ScpInstance, cap: int = 16):
    if inst.m > cap:
        raise OracleRefused(f"family has {inst.m} sets; cap is {cap}")
    subs, ok, cost, counts = _subset_table(inst)
    for f, cnt in zip(inst.flags, counts):
        ok &= cnt <= 1
        if f == 2:
            ok &= cnt == 1
        elif f == 1:
            cost = cost + (cnt == 0)
    return _best(subs, ok, cost)
