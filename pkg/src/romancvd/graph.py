"""Graph substrate: representation, edge-list parsing, clique machinery, validators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class ParseError(ValueError):
    """Malformed graph or labeling text. ``line`` is 1-based, or None for whole-document errors."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotClusterError(ValueError):
    """Raised when a vertex deletion leaves something other than disjoint cliques."""

    def __init__(self, witness: tuple[int, int, int]):
        self.witness = witness
        super().__init__(f"not a cluster graph: induced P3 on vertices {witness}")


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1.

    ``adj[v]`` is the neighbor set of ``v``. ``names`` optionally carries the
    identifiers the vertices had in the input file.
    """

    n: int
    adj: tuple[frozenset[int], ...]
    names: tuple[str | None, ...] | None = None

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise ValueError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n or v not in self.adj[u]:
                    raise ValueError(f"asymmetric or out-of-range edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], names=None) -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs), None if names is None else tuple(names))

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def closed_neighborhood(self, vertices: Iterable[int]) -> set[int]:
        out: set[int] = set()
        for v in vertices:
            out.add(v)
            out |= self.adj[v]
        return out

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(not (self.adj[v] & vs) for v in vs)

    def to_edge_list(self, comments: Sequence[str] = ()) -> str:
        lines = [f"c {c}" for c in comments]
        edges = self.edges()
        lines.append(f"p {self.n} {len(edges)}")
        lines.extend(f"e {u} {v}" for u, v in edges)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RomanLabeling:
    """A total map vertex -> {0, 1, 2}, stored in vertex-index order."""

    labels: tuple[int, ...]
    weight: int = field(init=False)

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        if any(x not in (0, 1, 2) for x in labels):
            raise ValueError("labels must be 0, 1 or 2")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "weight", sum(labels))

    @classmethod
    def parse(cls, text: str) -> RomanLabeling:
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(tok) for tok in text.split(",")))
        except ValueError as exc:
            raise ParseError(f"bad labeling {text!r}: {exc}") from None

    def __str__(self) -> str:
        return ",".join(map(str, self.labels))

    def __len__(self) -> int:
        return len(self.labels)

    def vertices_with(self, label: int) -> list[int]:
        return [v for v, x in enumerate(self.labels) if x == label]


@dataclass(frozen=True)
class ClusterDecomposition:
    """A CVD set together with the cliques of the remaining graph."""

    cvd_set: tuple[int, ...]
    cliques: tuple[tuple[int, ...], ...]
    vertex_to_clique: dict[int, int] = field(compare=False, repr=False)

    @property
    def q(self) -> int:
        return len(self.cliques)


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format.

    ``p <n> <m>`` declares the vertex and edge counts and is followed by ``m``
    lines ``e <u> <v>`` with 0-based endpoints. Lines starting with ``c`` are
    comments. The DIMACS header ``p edge <n> <m>`` (or ``p col``) switches to
    1-based endpoints. If any endpoint is not an integer, endpoints are read as
    vertex names and numbered in order of first appearance.
    """
    header = None
    raw_edges: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise ParseError("duplicate 'p' line", lineno)
            header = _parse_header(parts, lineno)
        elif parts[0] == "e":
            if header is None:
                raise ParseError("edge before 'p' line", lineno)
            if len(parts) != 3:
                raise ParseError(f"expected 'e <u> <v>', got {line!r}", lineno)
            raw_edges.append((lineno, parts[1], parts[2]))
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno)
    if header is None:
        raise ParseError("missing 'p <n> <m>' line")
    n, m, offset = header
    if len(raw_edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(raw_edges)}")

    named = any(not _is_int(tok) for _, a, b in raw_edges for tok in (a, b))
    names: list[str | None] | None = None
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, a, b in raw_edges:
        if named:
            ends = []
            for tok in (a, b):
                if tok not in index:
                    if len(index) == n:
                        raise ParseError(f"vertex {tok!r} exceeds declared count {n}", lineno)
                    index[tok] = len(index)
                ends.append(index[tok])
            u, v = ends
        else:
            u, v = int(a) - offset, int(b) - offset
            for x, tok in ((u, a), (v, b)):
                if not 0 <= x < n:
                    raise ParseError(f"endpoint {tok} out of range for n={n}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {a}", lineno)
        edges.append((u, v))
    if named:
        names = [None] * n
        for tok, i in index.items():
            names[i] = tok
    return Graph.from_edges(n, edges, names)


def _parse_header(parts: list[str], lineno: int) -> tuple[int, int, int]:
    offset = 0
    nums = parts[1:]
    if nums and not _is_int(nums[0]):
        # DIMACS: p edge <n> <m>, 1-based endpoints
        nums = nums[1:]
        offset = 1
    if len(nums) != 2 or not all(_is_int(x) for x in nums):
        raise ParseError(f"expected 'p <n> <m>', got {' '.join(parts)!r}", lineno)
    n, m = int(nums[0]), int(nums[1])
    if n < 0 or m < 0:
        raise ParseError("negative count in 'p' line", lineno)
    return n, m, offset


def _is_int(tok: str) -> bool:
    return tok.lstrip("-").isdigit()


def parse_vertex_set(text: str, n: int | None = None) -> frozenset[int]:
    """Read a vertex set written as whitespace- or comma-separated indices."""
    out = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#")[0].strip()
        if not line or line.startswith("c"):
            continue
        for tok in line.replace(",", " ").split():
            if not _is_int(tok):
                raise ParseError(f"bad vertex {tok!r}", lineno)
            v = int(tok)
            if v < 0 or (n is not None and v >= n):
                raise ParseError(f"vertex {v} out of range", lineno)
            out.add(v)
    return frozenset(out)


def _components(g: Graph, alive: set[int]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for start in sorted(alive):
        if start in seen:
            continue
        seen.add(start)
        stack = [start]
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in g.adj[v]:
                if u in alive and u not in seen:
                    seen.add(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def find_induced_p3(g: Graph, removed: Iterable[int] = ()) -> tuple[int, int, int] | None:
    """Lexicographically smallest sorted vertex triple inducing a P3 in G minus ``removed``."""
    dead = set(removed)
    alive = set(range(g.n)) - dead
    best = None
    for a in sorted(alive):
        na = {u for u in g.adj[a] if u > a and u not in dead}
        cands = []
        # a in the middle
        for b in sorted(na):
            for c in sorted(na):
                if c > b and c not in g.adj[b]:
                    cands.append((a, b, c))
                    break
        # a at an end: a - b - c with c not adjacent to a
        for b in na:
            for c in g.adj[b]:
                if c > a and c not in dead and c not in g.adj[a] and c != a:
                    cands.append((a,) + tuple(sorted((b, c))))
        if cands:
            best = min(cands)
            break
    return best


def is_cluster(g: Graph, removed: Iterable[int] = ()) -> bool:
    """True iff every component of G minus ``removed`` is complete."""
    alive = set(range(g.n)) - set(removed)
    for comp in _components(g, alive):
        size = len(comp)
        inner = sum(len(g.adj[v] & alive) for v in comp)
        if inner != size * (size - 1):
            return False
    return True


def clique_components(g: Graph, s: Iterable[int]) -> ClusterDecomposition:
    s = frozenset(s)
    alive = set(range(g.n)) - s
    comps = _components(g, alive)
    for comp in comps:
        size = len(comp)
        if sum(len(g.adj[v] & alive) for v in comp) != size * (size - 1):
            raise NotClusterError(find_induced_p3(g, s))
    index = {v: i for i, comp in enumerate(comps) for v in comp}
    return ClusterDecomposition(tuple(sorted(s)), tuple(tuple(c) for c in comps), index)


def _check_domain(g: Graph, f: RomanLabeling):
    if len(f) != g.n:
        raise ValueError(f"labeling has {len(f)} entries, graph has {g.n} vertices")


def validate_rdf(g: Graph, f: RomanLabeling) -> bool:
    _check_domain(g, f)
    lab = f.labels
    return all(lab[v] != 0 or any(lab[u] == 2 for u in g.adj[v]) for v in range(g.n))


def validate_irdf(g: Graph, f: RomanLabeling) -> bool:
    if not validate_rdf(g, f):
        return False
    lab = f.labels
    return all(lab[u] == 0 or lab[v] == 0 for u, v in g.edges())
