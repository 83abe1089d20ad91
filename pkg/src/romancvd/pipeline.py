"""Machinery shared by the RD and IRD solvers: modulator bit tables, block
reduction for value-only DP solves, and the parallel guess loop."""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .graph import ClusterDecomposition, Graph, RomanLabeling

SIGNATURE_BITS = 5  # block signatures are bitsets over 2**r masks; int64 holds r <= 5
CHUNK = 256


class InvariantError(RuntimeError):
    """An internal consistency check failed; the result must not be trusted."""


@dataclass
class Solution:
    variant: str
    value: int
    labeling: RomanLabeling
    s1: tuple[int, ...]
    s2: tuple[int, ...]
    cvd_set: tuple[int, ...]
    budget: int | None = None
    stats: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.budget is None or self.value <= self.budget

    def __iter__(self):
        # allows ``value, labeling = solve_rd(...)``
        return iter((self.value, self.labeling))

    def to_dict(self) -> dict:
        out = {
            "schema": "1",
            "variant": self.variant,
            "value": self.value,
            "labeling": list(self.labeling.labels),
            "guess": {"s1": list(self.s1), "s2": list(self.s2)},
            "cvd_set": list(self.cvd_set),
            "guesses_enumerated": self.stats.get("guesses_enumerated", 0),
        }
        if self.budget is not None:
            out["budget"] = self.budget
            out["feasible"] = self.feasible
        return out

    @classmethod
    def from_dict(cls, d: dict) -> Solution:
        if d.get("schema") != "1":
            raise ValueError(f"unsupported result schema {d.get('schema')!r}")
        return cls(d["variant"], int(d["value"]), RomanLabeling(tuple(d["labeling"])),
                   tuple(d["guess"]["s1"]), tuple(d["guess"]["s2"]), tuple(d["cvd_set"]),
                   d.get("budget"), {"guesses_enumerated": d["guesses_enumerated"]})


class ModulatorIndex:
    """Bitmask views of a graph around its CVD set ``S``.

    Bit ``i`` of every mask stands for ``S[i]`` (ascending vertex order), so
    S-subsets compare in the same order as their mask integers.
    """

    def __init__(self, g: Graph, decomp: ClusterDecomposition):
        self.g = g
        self.decomp = decomp
        self.s = decomp.cvd_set
        self.k = len(self.s)
        pos = {v: i for i, v in enumerate(self.s)}
        self.pos = pos
        self.full = (1 << self.k) - 1
        self.s_open = [sum(1 << pos[u] for u in g.adj[v] if u in pos) for v in self.s]
        self.order = np.array([v for c in decomp.cliques for v in c], dtype=np.int64)
        sizes = [len(c) for c in decomp.cliques]
        self.sizes = np.array(sizes, dtype=np.int64)
        self.starts = np.concatenate(([0], np.cumsum(sizes)[:-1])).astype(np.int64) if sizes else np.zeros(0, np.int64)
        self.block_of = np.repeat(np.arange(len(sizes)), sizes)
        self.nbr = np.array([sum(1 << pos[u] for u in g.adj[v] if u in pos) for v in self.order],
                            dtype=np.int64)
        open_u = np.zeros(1 << self.k, dtype=np.int64)
        closed_u = np.zeros(1 << self.k, dtype=np.int64)
        for i in range(self.k):
            lo, hi = 1 << i, 1 << (i + 1)
            open_u[lo:hi] = open_u[:lo] | self.s_open[i]
            closed_u[lo:hi] = closed_u[:lo] | self.s_open[i] | lo
        self.open_union = open_u
        self.closed_union = closed_u

    def vertices(self, mask: int) -> tuple[int, ...]:
        return tuple(self.s[i] for i in range(self.k) if mask >> i & 1)

    def mask_of(self, vertices) -> int:
        return sum(1 << self.pos[v] for v in vertices)

    def residual(self, s2: int) -> int:
        """S minus N[S2], as a mask."""
        return self.full & ~int(self.closed_union[s2])

    def independent(self, mask: int) -> bool:
        return int(self.open_union[mask]) & mask == 0

    def segment_count(self, flags_bool: np.ndarray) -> np.ndarray:
        if not len(self.starts):
            return np.zeros(0, dtype=np.int64)
        return np.add.reduceat(flags_bool.astype(np.int64), self.starts)


def compress(values: np.ndarray, mask: int) -> np.ndarray:
    """Gather the bits of ``values`` selected by ``mask`` into the low bits (pext)."""
    out = np.zeros_like(values)
    i = 0
    bit = 0
    while mask >> bit:
        if mask >> bit & 1:
            out |= ((values >> bit) & 1) << i
            i += 1
        bit += 1
    return out


def expand(dense: int, mask: int) -> int:
    """Inverse of :func:`compress` for a single value (pdep)."""
    out = 0
    i = 0
    bit = 0
    while mask >> bit:
        if mask >> bit & 1:
            if dense >> i & 1:
                out |= 1 << bit
            i += 1
        bit += 1
    return out


def _superset_table(r: int) -> list[int]:
    size = 1 << r
    return [sum(1 << t for t in range(size) if t != m and t & m == m) for m in range(size)]


_SUPERSETS = {r: _superset_table(r) for r in range(SIGNATURE_BITS + 1)}


def reduce_blocks(proj: np.ndarray, block_ids: np.ndarray, flags: np.ndarray, r: int,
                  allow_flag0_merge: bool):
    """Shrink a block-partitioned family without changing the optimum.

    ``proj`` holds the family masks over an ``r``-bit universe, ``block_ids``
    the (non-decreasing) block index of each set, ``flags`` one flag per block.
    Returns ``(family, block_sizes, block_flags, constant)``; the optimum of
    the reduced instance plus ``constant`` equals the original optimum for
    every target subset of the universe.

    Within a block a set contained in another set of the same block is never
    needed. Blocks whose only set is empty contribute their flag as a constant.
    When ``r <= SIGNATURE_BITS``, identical blocks are merged: flag-0 blocks
    (SCP only) down to one copy, flag-1/2 blocks down to ``r`` copies, since
    an optimal solution touches at most ``r`` of them usefully.
    """
    nblocks = len(flags)
    if not nblocks:
        return [], [], [], 0
    if r <= SIGNATURE_BITS:
        bitsets = np.zeros(nblocks, dtype=np.int64)
        np.bitwise_or.at(bitsets, block_ids, np.left_shift(1, proj).astype(np.int64))
        for m, sup in enumerate(_SUPERSETS[r]):
            if sup:
                dominated = ((bitsets >> m) & 1).astype(bool) & ((bitsets & sup) != 0)
                bitsets[dominated] &= ~(1 << m)
        present = bitsets != 0
        constant_mask = present & (bitsets == 1)
        constant = int(flags[constant_mask].sum())
        keep = present & ~constant_mask
        keys = flags[keep].astype(np.int64) << (1 << r) | bitsets[keep]
        uniq, counts = np.unique(keys, return_counts=True)
        family, sizes, out_flags = [], [], []
        for key, c in zip(uniq.tolist(), counts.tolist()):
            f = key >> (1 << r)
            bits = key & ((1 << (1 << r)) - 1)
            masks = [m for m in range(1 << r) if bits >> m & 1]
            copies = 1 if (f == 0 and allow_flag0_merge) else min(c, r) if f else c
            constant += (c - copies) * f
            for _ in range(copies):
                family.extend(masks)
                sizes.append(len(masks))
                out_flags.append(f)
        return family, sizes, out_flags, constant

    keys = np.unique(block_ids.astype(np.int64) << r | proj)
    blocks = keys >> r
    masks = keys & ((1 << r) - 1)
    has_nonzero = np.zeros(nblocks, dtype=bool)
    has_nonzero[blocks[masks != 0]] = True
    present = np.zeros(nblocks, dtype=bool)
    present[blocks] = True
    constant = int(flags[present & ~has_nonzero].sum())
    keep = masks != 0
    blocks, masks = blocks[keep], masks[keep]
    if not len(blocks):
        return [], [], [], constant
    bid, sizes = np.unique(blocks, return_counts=True)
    return masks.tolist(), sizes.tolist(), flags[bid].tolist(), constant


class Incumbent:
    """Best (value, s2, s1) seen so far; shared by the workers of one solve."""

    def __init__(self):
        self.best = None
        self.lock = threading.Lock()

    @property
    def value(self):
        best = self.best
        return None if best is None else best[0]

    def offer(self, cand):
        with self.lock:
            if self.best is None or cand < self.best:
                self.best = cand

    def exceeds(self, bound: int) -> bool:
        v = self.value
        return v is not None and bound > v


def run_chunks(candidates: list[int], work: Callable[[list[int]], dict], threads: int) -> list[dict]:
    chunks = [candidates[i:i + CHUNK] for i in range(0, len(candidates), CHUNK)]
    if threads <= 1 or len(chunks) <= 1:
        return [work(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(work, chunks))


def merge_stats(parts: list[dict]) -> dict:
    out: dict = {}
    for p in parts:
        for key, val in p.items():
            out[key] = out.get(key, 0) + val
    return out
