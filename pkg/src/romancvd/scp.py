"""Subset dynamic programs for set cover with partition constraints.

Two problems share one instance type. A family of subsets of a small
universe is split into consecutive blocks, and every block carries a flag.
A solution picks a subfamily that covers the universe and pays 2 per pick
plus 1 for every flag-1 block it leaves untouched.

SCP (flags 0/1/2) requires every flag-2 block to be hit. ISCP (flags 1/2)
additionally allows at most one pick per block and requires exactly one in
every flag-2 block.

Subsets of the universe are bitmasks, and a DP layer is a numpy array
indexed by the mask ``W``. Each step vectorises over all ``2**|U|`` masks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


UNREACHABLE = 1 << 40


@dataclass(frozen=True)
class ScpInstance:
    universe_size: int
    family: tuple[int, ...]
    block_sizes: tuple[int, ...]
    flags: tuple[int, ...]
    budget: int | None = None
    block_of: tuple[int, ...] = field(init=False, repr=False, compare=False)
    block_starts: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.universe_size < 0:
            raise ValueError("universe_size must be non-negative")
        object.__setattr__(self, "family", tuple(int(s) for s in self.family))
        object.__setattr__(self, "block_sizes", tuple(self.block_sizes))
        object.__setattr__(self, "flags", tuple(self.flags))
        if len(self.flags) != len(self.block_sizes):
            raise ValueError("one flag per block required")
        if any(b <= 0 for b in self.block_sizes):
            raise ValueError("blocks must be non-empty")
        if sum(self.block_sizes) != len(self.family):
            raise ValueError("blocks must cover the family exactly")
        if any(f not in (0, 1, 2) for f in self.flags):
            raise ValueError("flags must be 0, 1 or 2")
        full = (1 << self.universe_size) - 1
        if any(s < 0 or s & ~full for s in self.family):
            raise ValueError("family member outside the universe")
        block_of, starts = [], []
        for x, size in enumerate(self.block_sizes):
            starts.append(len(block_of))
            block_of.extend([x] * size)
        object.__setattr__(self, "block_of", tuple(block_of))
        object.__setattr__(self, "block_starts", tuple(starts))

    @classmethod
    def from_blocks(cls, universe_size: int, blocks: Sequence[Sequence[Iterable[int]]],
                    flags: Sequence[int], budget: int | None = None) -> ScpInstance:
        """Build from blocks given as lists of element collections."""
        family = [sum(1 << e for e in set(s)) for block in blocks for s in block]
        return cls(universe_size, tuple(family), tuple(len(b) for b in blocks), tuple(flags), budget)

    @property
    def m(self) -> int:
        return len(self.family)

    @property
    def q(self) -> int:
        return len(self.block_sizes)

    def blocks(self) -> list[range]:
        return [range(s, s + size) for s, size in zip(self.block_starts, self.block_sizes)]

    def objective(self, picks: Iterable[int]) -> int:
        picks = set(picks)
        untouched = sum(1 for r, f in zip(self.blocks(), self.flags)
                        if f == 1 and not picks.intersection(r))
        return 2 * len(picks) + untouched

    def covers(self, picks: Iterable[int]) -> bool:
        union = 0
        for i in picks:
            union |= self.family[i]
        return union == (1 << self.universe_size) - 1

    def dumps(self) -> str:
        """Line-oriented text form: ``u``, optional ``budget``, then ``block``/``set`` lines."""
        lines = [f"u {self.universe_size}"]
        if self.budget is not None:
            lines.append(f"budget {self.budget}")
        for r, f in zip(self.blocks(), self.flags):
            lines.append(f"block {f}")
            for i in r:
                elems = [str(e) for e in range(self.universe_size) if self.family[i] >> e & 1]
                lines.append(" ".join(["set"] + elems))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> ScpInstance:
        u = None
        budget = None
        blocks: list[list[list[int]]] = []
        flags: list[int] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            parts = raw.split("#")[0].split()
            if not parts:
                continue
            try:
                if parts[0] == "u":
                    u = int(parts[1])
                elif parts[0] == "budget":
                    budget = int(parts[1])
                elif parts[0] == "block":
                    flags.append(int(parts[1]))
                    blocks.append([])
                elif parts[0] == "set":
                    if not blocks:
                        raise ValueError("'set' before any 'block'")
                    blocks[-1].append([int(x) for x in parts[1:]])
                else:
                    raise ValueError(f"unknown directive {parts[0]!r}")
            except (ValueError, IndexError) as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        if u is None:
            raise ValueError("missing 'u' line")
        return cls.from_blocks(u, blocks, flags, budget)


@dataclass(frozen=True)
class DpSolution:
    value: float | int
    witness: tuple[int, ...]
    feasible: bool
    cells: int = 0


def _pack(value: int, budget: int | None, witness: tuple[int, ...], cells: int, inf: int) -> DpSolution:
    if value >= inf:
        return DpSolution(math.inf, (), False, cells)
    feasible = budget is None or value <= budget
    return DpSolution(int(value), witness, feasible, cells)


def _infinity(inst: ScpInstance) -> int:
    # strictly above any attainable objective
    return 2 * inst.m + inst.q + 1


def _dtype(inf: int):
    return np.int16 if inf + 3 < np.iinfo(np.int16).max else np.int32


def _trivial(inst: ScpInstance) -> DpSolution | None:
    if inst.m:
        return None
    if inst.universe_size:
        return DpSolution(math.inf, (), False, 0)
    return DpSolution(0, (), inst.budget is None or inst.budget >= 0, 0)


def solve_scp(inst: ScpInstance, witness: bool = True) -> DpSolution:
    """Optimal SCP value (and one optimal pick set) by the block-flag DP.

    ``OPT[W, j, b]`` is the cheapest way to cover ``W`` with sets up to ``j``
    when the flag of the block containing ``j`` is overridden by ``b``.
    Ties prefer skipping a set over picking it.
    """
    trivial = _trivial(inst)
    if trivial is not None:
        return trivial
    layer, picks = _scp_layers(inst, record=witness)
    inf = _infinity(inst)
    full = (1 << inst.universe_size) - 1
    value = int(layer[inst.flags[-1], full])
    wit: tuple[int, ...] = ()
    if witness and value < inf:
        wit = _scp_retrace(inst, picks, full)
    return _pack(value, inst.budget, wit, inst.m * 3 << inst.universe_size, inf)


def scp_all_targets(inst: ScpInstance) -> np.ndarray:
    """Final-layer SCP values for every target ``W`` subset of the universe.

    Entry ``W`` is the optimum of the same instance with the universe
    restricted to ``W``. Unreachable targets hold ``UNREACHABLE``.
    """
    if not inst.m:
        out = np.full(1 << inst.universe_size, UNREACHABLE, dtype=np.int64)
        out[0] = 0
        return out
    layer, _ = _scp_layers(inst, record=False)
    out = layer[inst.flags[-1]].astype(np.int64)
    out[out >= _infinity(inst)] = UNREACHABLE
    return out


def _scp_layers(inst: ScpInstance, record: bool):
    u = inst.universe_size
    size = 1 << u
    inf = _infinity(inst)
    dt = _dtype(inf)
    masks = np.arange(size, dtype=np.int64)
    fam = inst.family
    flags = inst.flags
    block_of = inst.block_of
    starts = set(inst.block_starts)

    # base layer: S_1 alone
    s0 = fam[0]
    cur = np.full((3, size), inf, dtype=dt)
    coverable = (masks & ~s0) == 0
    cur[:, coverable] = 2
    cur[:, 0] = (0, 1, 2)
    picks = []
    if record:
        base = np.zeros((3, size), dtype=bool)
        base[:, 1:] = coverable[1:]
        base[2, 0] = True  # flag 2 with nothing to cover still forces S_1
        picks.append(np.packbits(base, axis=1))

    for j in range(1, len(fam)):
        gathered = cur[:, masks & ~fam[j]]
        if j not in starts:
            pick = np.minimum(gathered[0] + 2, inf)
            new = np.minimum(cur, pick)
            if record:
                picks.append(np.packbits(pick < cur, axis=1))
        else:
            fp = flags[block_of[j] - 1]
            prev = cur[fp]
            pick = np.minimum(gathered[fp] + 2, inf)
            skip1 = np.minimum(prev + 1, inf)
            new = np.empty_like(cur)
            new[0] = np.minimum(pick, prev)
            new[1] = np.minimum(pick, skip1)
            new[2] = pick
            if record:
                dec = np.empty((3, size), dtype=bool)
                dec[0] = pick < prev
                dec[1] = pick < skip1
                dec[2] = True
                picks.append(np.packbits(dec, axis=1))
        cur = new
    return cur, picks


def _bit(packed: np.ndarray, b: int, w: int) -> bool:
    return bool(packed[b, w >> 3] >> (7 - (w & 7)) & 1)


def _scp_retrace(inst: ScpInstance, picks, full: int) -> tuple[int, ...]:
    fam = inst.family
    starts = set(inst.block_starts)
    w, b = full, inst.flags[-1]
    chosen = []
    for j in range(len(fam) - 1, 0, -1):
        take = _bit(picks[j], b, w)
        if take:
            chosen.append(j)
            w &= ~fam[j]
        if j in starts:
            b = inst.flags[inst.block_of[j] - 1]
        elif take:
            b = 0
    if _bit(picks[0], b, w):
        chosen.append(0)
    return tuple(sorted(chosen))


def solve_iscp(inst: ScpInstance, witness: bool = True) -> DpSolution:
    """Optimal ISCP value: at most one pick per block, exactly one per flag-2 block.

    Within the first block a non-empty ``W`` costs 2 if some set so far
    contains it. Later, picking a set jumps straight to the last set of the
    previous block, which is what limits each block to one pick.
    """
    if any(f == 0 for f in inst.flags):
        raise ValueError("ISCP instances take flags 1 and 2 only")
    trivial = _trivial(inst)
    if trivial is not None:
        return trivial
    u = inst.universe_size
    size = 1 << u
    inf = _infinity(inst)
    dt = _dtype(inf)
    masks = np.arange(size, dtype=np.int64)
    fam = inst.family
    flags = inst.flags
    block_of = inst.block_of
    starts = set(inst.block_starts)

    # rows 1 and 2 are used; row 0 is padding so flags index directly
    cur = np.full((3, size), inf, dtype=dt)
    first_end = inst.block_sizes[0]
    picks = []
    covered = np.zeros(size, dtype=bool)
    for j in range(first_end):
        newly = ((masks & ~fam[j]) == 0) & ~covered
        covered |= newly
        cur[1:, covered] = 2
        cur[1:, 0] = (1, 2)
        if witness:
            dec = np.zeros((3, size), dtype=bool)
            dec[1:, newly] = True
            dec[1:, 0] = False
            dec[2, 0] = j == 0
            picks.append(np.packbits(dec, axis=1))
    prev_end = cur.copy()  # layer at the last set of the previous block

    for j in range(first_end, len(fam)):
        gathered = prev_end[:, masks & ~fam[j]]
        x = block_of[j]
        fp = flags[x - 1]
        pick = np.minimum(gathered[fp] + 2, inf)
        if j not in starts:
            new = np.minimum(cur, pick)
            new[0] = inf
            if witness:
                picks.append(np.packbits(pick < cur, axis=1))
        else:
            prev = prev_end[fp]
            new = np.full_like(cur, inf)
            new[1] = np.minimum(pick, np.minimum(prev + 1, inf))
            new[2] = pick
            if witness:
                dec = np.zeros((3, size), dtype=bool)
                dec[1] = pick < np.minimum(prev + 1, inf)
                dec[2] = True
                picks.append(np.packbits(dec, axis=1))
        cur = new
        if j + 1 == len(fam) or (j + 1) in starts:
            prev_end = cur.copy()

    full = size - 1
    value = int(cur[flags[-1], full])
    wit: tuple[int, ...] = ()
    if witness and value < inf:
        wit = _iscp_retrace(inst, picks, full)
    return _pack(value, inst.budget, wit, inst.m * 2 << u, inf)


def _iscp_retrace(inst: ScpInstance, picks, full: int) -> tuple[int, ...]:
    fam = inst.family
    starts = inst.block_starts
    ends = [s + size - 1 for s, size in zip(starts, inst.block_sizes)]
    w, b = full, inst.flags[-1]
    j = len(fam) - 1
    chosen = []
    first_end = inst.block_sizes[0]
    while j >= first_end:
        x = inst.block_of[j]
        if _bit(picks[j], b, w):
            chosen.append(j)
            w &= ~fam[j]
            b = inst.flags[x - 1]
            j = ends[x - 1]
        elif j == starts[x]:
            b = inst.flags[x - 1]
            j -= 1
        else:
            j -= 1
    # first block: walk down while an earlier set does the same job
    while j >= 0:
        if _bit(picks[j], b, w):
            chosen.append(j)
            break
        j -= 1
    return tuple(sorted(chosen))
