"""Roman domination parameterized by a cluster vertex deletion set.

For every guess of the label-2 part ``S2`` and the label-1 part ``S1`` of the
modulator, the cliques of ``G - S`` are typed by how many of their vertices
``S2`` leaves undominated, and the rest of the problem becomes a set cover
with partition constraints (see :mod:`romancvd.scp`) over the modulator
vertices that still need a label-2 neighbor.

The value search runs one DP per ``S2``. Its universe is ``S - N[S2]``, and
its final layer prices every residual ``S - N[S2] - S1`` at once, so every
``S1`` is answered by a lookup. The winning guess is then rebuilt exactly
and solved again with witness tracking to produce the labeling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .cvd import verify_cvd
from .graph import ClusterDecomposition, Graph, RomanLabeling, clique_components, validate_rdf
from .pipeline import (Incumbent, InvariantError, ModulatorIndex, Solution, compress, expand,
                       merge_stats, reduce_blocks, run_chunks)
from .scp import ScpInstance, scp_all_targets, solve_scp


@dataclass(frozen=True)
class GuessContext:
    s1: frozenset[int]
    s2: frozenset[int]
    residual_s: frozenset[int]
    residual_budget: int | None = None

    @classmethod
    def make(cls, g: Graph, s: Iterable[int], s1: Iterable[int], s2: Iterable[int],
             budget: int | None = None) -> GuessContext:
        s, s1, s2 = frozenset(s), frozenset(s1), frozenset(s2)
        if not s1 <= s or not s2 <= s:
            raise ValueError("guesses must lie inside the modulator")
        dominated = g.closed_neighborhood(s2) & s
        if s1 & dominated:
            raise ValueError("S1 must avoid N[S2]")
        residual = s - dominated - s1
        rb = None if budget is None else budget - 2 * len(s2) - len(s1)
        return cls(s1, s2, frozenset(residual), rb)


@dataclass(frozen=True)
class CliqueClassification:
    flags: tuple[int, ...]
    orders: tuple[tuple[int, ...], ...]


def classify_cliques(g: Graph, decomp: ClusterDecomposition, s2: Iterable[int]) -> CliqueClassification:
    """Type 0/1/2 per clique by its number of vertices without a neighbor in ``s2``.

    A type-1 clique lists its one undominated vertex first.
    """
    s2 = set(s2)
    flags, orders = [], []
    for clique in decomp.cliques:
        free = [v for v in clique if not g.adj[v] & s2]
        flag = min(len(free), 2)
        order = tuple(clique)
        if flag == 1:
            order = (free[0],) + tuple(v for v in clique if v != free[0])
        flags.append(flag)
        orders.append(order)
    return CliqueClassification(tuple(flags), tuple(orders))


def build_rd_disjoint_cluster(g: Graph, decomp: ClusterDecomposition, ctx: GuessContext,
                              cls: CliqueClassification) -> ScpInstance:
    elems = sorted(ctx.residual_s)
    index = {v: i for i, v in enumerate(elems)}
    family = []
    for order in cls.orders:
        for v in order:
            family.append(sum(1 << index[u] for u in g.adj[v] if u in index))
    sizes = tuple(len(o) for o in cls.orders)
    if sum(sizes) != g.n - len(decomp.cvd_set):
        raise InvariantError("RD blocks must be exactly the cliques of G - S")
    return ScpInstance(len(elems), tuple(family), sizes, cls.flags, ctx.residual_budget)


def rd_guess_count(idx: ModulatorIndex) -> int:
    """Number of (S1, S2) guesses: sum over S2 of 2^|S - N[S2]|."""
    r = np.bitwise_count(idx.full & ~idx.closed_union)
    return int(np.sum(np.left_shift(1, r.astype(np.int64))))


def _evaluate_s2(idx: ModulatorIndex, s2: int, incumbent: Incumbent, stats: dict):
    """Best (value, s2, s1) for one label-2 guess, or None when pruned."""
    undominated = (idx.nbr & s2) == 0
    flags = np.minimum(idx.segment_count(undominated), 2)
    base = 2 * s2.bit_count()
    lower = base + int(flags.sum())  # every type-1 clique costs >= 1, type-2 >= 2
    if incumbent.exceeds(lower):
        stats["pruned_s2"] = stats.get("pruned_s2", 0) + 1
        return None
    rmask = idx.residual(s2)
    r = rmask.bit_count()
    if r == 0:
        return (lower, s2, 0)
    proj = compress(idx.nbr, rmask)
    family, sizes, bflags, const = reduce_blocks(proj, idx.block_of, flags, r, allow_flag0_merge=True)
    inst = ScpInstance(r, tuple(family), tuple(sizes), tuple(bflags))
    targets = scp_all_targets(inst)
    stats["scp_cells"] = stats.get("scp_cells", 0) + (3 * inst.m << r)
    stats["scp_solves"] = stats.get("scp_solves", 0) + 1
    s1_dense = np.arange(1 << r, dtype=np.int64)
    totals = base + const + np.bitwise_count(s1_dense).astype(np.int64) + targets[((1 << r) - 1) ^ s1_dense]
    i = int(np.argmin(totals))
    return (int(totals[i]), s2, expand(i, rmask))


def solve_rd(g: Graph, s: Iterable[int], budget: int | None = None, threads: int = 1) -> Solution:
    """Roman domination number of ``g`` given a CVD set ``s``, with an optimal labeling.

    Guesses are visited with ``S2`` ascending by subset index and ``S1``
    ascending within it; among equal-weight optima the first one wins. A
    guess is skipped when its lower bound already exceeds the best value
    found, which never discards a tied optimum.
    """
    s = frozenset(s)
    if not verify_cvd(g, s):
        raise ValueError("the given vertex set is not a cluster vertex deletion set")
    decomp = clique_components(g, s)
    idx = ModulatorIndex(g, decomp)
    incumbent = Incumbent()

    def work(chunk):
        stats: dict = {}
        for s2 in chunk:
            cand = _evaluate_s2(idx, s2, incumbent, stats)
            if cand is not None:
                incumbent.offer(cand)
        return stats

    parts = run_chunks(list(range(1 << idx.k)), work, threads)
    stats = merge_stats(parts)
    stats["guesses_enumerated"] = rd_guess_count(idx)
    value, s2m, s1m = incumbent.best

    s1, s2 = idx.vertices(s1m), idx.vertices(s2m)
    ctx = GuessContext.make(g, s, s1, s2, budget)
    cls = classify_cliques(g, decomp, s2)
    inst = build_rd_disjoint_cluster(g, decomp, ctx, cls)
    sol = solve_scp(inst)
    total = 2 * len(s2) + len(s1) + sol.value
    if total != value:
        raise InvariantError(f"witness instance gives {total}, value search gave {value}")

    labels = [0] * g.n
    for v in s2:
        labels[v] = 2
    for v in s1:
        labels[v] = 1
    flat = [v for order in cls.orders for v in order]
    picked = set(sol.witness)
    for j in picked:
        labels[flat[j]] = 2
    for r, flag, order in zip(inst.blocks(), cls.flags, cls.orders):
        if flag == 1 and not picked.intersection(r):
            labels[order[0]] = 1
    labeling = RomanLabeling(tuple(labels))
    if labeling.weight != value or not validate_rdf(g, labeling):
        raise InvariantError("reconstructed labeling is not an optimal Roman dominating function")
    return Solution("rd", value, labeling, tuple(sorted(s1)), tuple(sorted(s2)),
                    decomp.cvd_set, budget, stats)
