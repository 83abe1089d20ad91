"""Independent Roman domination parameterized by a cluster vertex deletion set.

Guesses ``S2`` and ``S1`` must be independent, with ``S1`` outside
``N[S2]``. Clique vertices next to ``S2`` or ``S1`` are forced to label 0
and leave the graph. What remains of each clique holds at most one nonzero
label, which turns the residual problem into ISCP.

One repair over the plain survivor-count typing: a clique that loses a
vertex to ``N(S1) - N(S2)`` must keep a label-2 survivor, because that
vertex gets label 0 and its only possible 2-neighbor is inside its clique.
Such cliques are typed 2 whatever their surviving size, and the guess is
rejected when nothing survives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .cvd import verify_cvd
from .graph import ClusterDecomposition, Graph, RomanLabeling, clique_components, validate_irdf
from .pipeline import (Incumbent, InvariantError, ModulatorIndex, Solution, compress, merge_stats,
                       reduce_blocks, run_chunks)
from .rd import CliqueClassification
from .scp import ScpInstance, solve_iscp


class GuessRejected(ValueError):
    """The guess leaves some 0-labeled clique vertex without a possible 2-neighbor."""


@dataclass(frozen=True)
class IrdGuessContext:
    s1: frozenset[int]
    s2: frozenset[int]
    residual_s: frozenset[int]
    residual_budget: int | None
    deleted_by_s1: tuple[frozenset[int], ...]   # per clique: N(S1) - N(S2) inside it
    surviving: tuple[tuple[int, ...], ...]      # per clique, ascending; may be empty

    @classmethod
    def make(cls, g: Graph, decomp: ClusterDecomposition, s1: Iterable[int], s2: Iterable[int],
             budget: int | None = None) -> IrdGuessContext:
        s = frozenset(decomp.cvd_set)
        s1, s2 = frozenset(s1), frozenset(s2)
        if not s1 <= s or not s2 <= s:
            raise ValueError("guesses must lie inside the modulator")
        if not g.is_independent(s2) or not g.is_independent(s1):
            raise ValueError("S1 and S2 must be independent")
        n2 = g.closed_neighborhood(s2)
        if s1 & n2:
            raise ValueError("S1 must avoid N[S2]")
        n1 = g.closed_neighborhood(s1)
        deleted, surviving = [], []
        for clique in decomp.cliques:
            deleted.append(frozenset(v for v in clique if v in n1 and v not in n2))
            surviving.append(tuple(v for v in clique if v not in n1 and v not in n2))
        rb = None if budget is None else budget - 2 * len(s2) - len(s1)
        return cls(s1, s2, frozenset(s - n2 - s1), rb, tuple(deleted), tuple(surviving))


def check_guess_validity(g: Graph, decomp: ClusterDecomposition, s1: Iterable[int],
                         s2: Iterable[int]) -> bool:
    """False iff a clique inside N[S1] u N[S2] has a vertex adjacent to S1 but not to S2."""
    s1, s2 = set(s1), set(s2)
    n1, n2 = g.closed_neighborhood(s1), g.closed_neighborhood(s2)
    for clique in decomp.cliques:
        if all(v in n1 or v in n2 for v in clique):
            if any(v in n1 and v not in n2 for v in clique):
                return False
    return True


def classify_surviving_cliques(ctx: IrdGuessContext) -> CliqueClassification:
    """Flags and orders for the surviving cliques, in clique order.

    Cliques with no survivors are dropped; if such a clique lost a vertex to
    ``N(S1) - N(S2)`` the guess is rejected.
    """
    flags, orders = [], []
    for survivors, lost in zip(ctx.surviving, ctx.deleted_by_s1):
        if not survivors:
            if lost:
                raise GuessRejected("a clique lies inside N[S1] and N[S2] with an S1-only neighbor")
            continue
        flags.append(2 if len(survivors) >= 2 or lost else 1)
        orders.append(survivors)
    return CliqueClassification(tuple(flags), tuple(orders))


def build_ird_disjoint_cluster(g: Graph, ctx: IrdGuessContext, cls: CliqueClassification) -> ScpInstance:
    elems = sorted(ctx.residual_s)
    index = {v: i for i, v in enumerate(elems)}
    family = [sum(1 << index[u] for u in g.adj[v] if u in index)
              for order in cls.orders for v in order]
    return ScpInstance(len(elems), tuple(family), tuple(len(o) for o in cls.orders), cls.flags,
                       ctx.residual_budget)


def ird_guess_count(idx: ModulatorIndex) -> int:
    """Number of guesses with S2 independent and S1 an independent subset of S - N[S2]."""
    indep = (idx.open_union & np.arange(1 << idx.k)) == 0
    total = 0
    for s2 in np.flatnonzero(indep).tolist():
        rmask = idx.residual(s2)
        total += sum(1 for s1 in _submasks(rmask) if indep[s1])
    return total


def _submasks(mask: int):
    """All submasks of ``mask`` in ascending order."""
    bits = [1 << i for i in range(mask.bit_length()) if mask >> i & 1]
    out = [0]
    for b in bits:
        out += [x | b for x in out]
    return sorted(out)


def _evaluate(idx: ModulatorIndex, s2: int, s1: int, incumbent: Incumbent, stats: dict):
    base = 2 * s2.bit_count() + s1.bit_count()
    if incumbent.exceeds(base):
        stats["pruned"] = stats.get("pruned", 0) + 1
        return None
    by2 = (idx.nbr & s2) != 0
    by1 = ((idx.nbr & s1) != 0) & ~by2
    alive = ~by2 & ~by1
    n_alive = idx.segment_count(alive)
    n_lost = idx.segment_count(by1)
    if np.any((n_alive == 0) & (n_lost > 0)):
        stats["rejected"] = stats.get("rejected", 0) + 1
        return None
    forced = (n_alive == 1) & (n_lost > 0)
    if forced.any():
        stats["repair_forced"] = stats.get("repair_forced", 0) + 1
    flags = np.where((n_alive >= 2) | (n_lost > 0), 2, 1)
    flags[n_alive == 0] = 0
    lower = base + int(flags.sum())
    if incumbent.exceeds(lower):
        stats["pruned"] = stats.get("pruned", 0) + 1
        return None
    umask = idx.residual(s2) & ~s1
    u = umask.bit_count()
    if u == 0:
        return (lower, s2, s1)
    keep = n_alive > 0
    proj = compress(idx.nbr[alive], umask)
    # renumber surviving blocks densely
    dense = np.cumsum(keep) - 1
    family, sizes, bflags, const = reduce_blocks(proj, dense[idx.block_of[alive]], flags[keep], u,
                                                 allow_flag0_merge=False)
    inst = ScpInstance(u, tuple(family), tuple(sizes), tuple(bflags))
    sol = solve_iscp(inst, witness=False)
    stats["scp_cells"] = stats.get("scp_cells", 0) + sol.cells
    stats["scp_solves"] = stats.get("scp_solves", 0) + 1
    if not sol.feasible:
        return None
    return (base + const + sol.value, s2, s1)


def solve_ird(g: Graph, s: Iterable[int], budget: int | None = None, threads: int = 1) -> Solution:
    """Independent Roman domination number of ``g`` given a CVD set ``s``."""
    s = frozenset(s)
    if not verify_cvd(g, s):
        raise ValueError("the given vertex set is not a cluster vertex deletion set")
    decomp = clique_components(g, s)
    idx = ModulatorIndex(g, decomp)
    incumbent = Incumbent()
    indep = (idx.open_union & np.arange(1 << idx.k)) == 0

    def work(chunk):
        stats: dict = {}
        for s2 in chunk:
            for s1 in _submasks(idx.residual(s2)):
                if not indep[s1]:
                    continue
                stats["guesses_enumerated"] = stats.get("guesses_enumerated", 0) + 1
                cand = _evaluate(idx, s2, s1, incumbent, stats)
                if cand is not None:
                    incumbent.offer(cand)
        return stats

    s2_list = np.flatnonzero(indep).tolist()
    stats = merge_stats(run_chunks(s2_list, work, threads))
    if incumbent.best is None:
        raise InvariantError("no valid guess; S1 = S2 = {} is always valid")
    value, s2m, s1m = incumbent.best

    s1, s2 = idx.vertices(s1m), idx.vertices(s2m)
    ctx = IrdGuessContext.make(g, decomp, s1, s2, budget)
    cls = classify_surviving_cliques(ctx)
    inst = build_ird_disjoint_cluster(g, ctx, cls)
    sol = solve_iscp(inst)
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
    if labeling.weight != value or not validate_irdf(g, labeling):
        raise InvariantError("reconstructed labeling is not an optimal independent Roman dominating function")
    return Solution("ird", value, labeling, tuple(sorted(s1)), tuple(sorted(s2)),
                    decomp.cvd_set, budget, stats)
