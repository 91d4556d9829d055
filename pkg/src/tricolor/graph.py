"""Core graph representation and degree-peeling primitives.

Everything downstream works on :class:`Graph`: an immutable simple undirected
graph with stable integer vertex ids.  Stability matters: induced subgraphs
keep the parent's ids, so colorings computed on pieces can be merged without
translation tables.
"""

from __future__ import annotations

import hashlib
import heapq
import json
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Sequence, Set, Tuple

from .errors import ContractViolationError, MalformedInputError

__all__ = [
    "Graph",
    "MultiGraph",
    "RemovalLog",
    "build_graph",
    "induced_subgraph",
    "peel_low_degree",
    "connected_components",
    "is_connected",
    "replay_removals",
]


class Graph:
    """Immutable simple undirected graph.

    Invariants: no self-loops, no parallel edges, symmetric adjacency, and
    ``m`` equals half the degree sum.  Instances are safe to share across
    threads; all construction goes through :func:`build_graph`,
    :func:`induced_subgraph` or :meth:`from_adjacency`.
    """

    __slots__ = ("_adj", "_vertices", "m")

    def __init__(self, adj: Dict[int, Tuple[int, ...]], m: int):
        # Private: callers use the factory functions below.
        self._adj = adj
        self._vertices = tuple(sorted(adj))
        self.m = m

    @classmethod
    def from_adjacency(cls, adj: Dict[int, Iterable[int]]) -> "Graph":
        """Build from an id -> neighbor-iterable mapping (validated)."""
        clean: Dict[int, Tuple[int, ...]] = {}
        deg_sum = 0
        for v, nbrs in adj.items():
            ns = tuple(sorted(set(nbrs)))
            if v in ns:
                raise MalformedInputError(f"self-loop at vertex {v}")
            clean[v] = ns
            deg_sum += len(ns)
        for v, ns in clean.items():
            for u in ns:
                if u not in clean or not _sorted_contains(clean[u], v):
                    raise MalformedInputError(f"asymmetric adjacency {v}-{u}")
        if deg_sum % 2:
            raise MalformedInputError("odd degree sum")
        return cls(clean, deg_sum // 2)

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        if u not in self._adj:
            return False
        return _sorted_contains(self._adj[u], v)

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Yield edges as (u, v) with u < v, in sorted order."""
        for u in self._vertices:
            for v in self._adj[u]:
                if u < v:
                    yield (u, v)

    def min_degree(self) -> int:
        return min((len(ns) for ns in self._adj.values()), default=0)

    def max_degree(self) -> int:
        return max((len(ns) for ns in self._adj.values()), default=0)

    def canonical_hash(self) -> str:
        """SHA-256 over the sorted vertex and edge lists."""
        payload = json.dumps(
            {"vertices": list(self._vertices), "edges": list(self.edges())},
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._vertices, self.m))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _sorted_contains(seq: Sequence[int], x: int) -> bool:
    i = bisect_left(seq, x)
    return i < len(seq) and seq[i] == x


@dataclass(frozen=True)
class RemovalLog:
    """Ordered record of peeled vertices and their neighbors at removal time.

    Replaying the entries in order on the parent graph reproduces the peeled
    residual; replaying them in reverse on the residual reconstructs the
    parent exactly.
    """

    entries: Tuple[Tuple[int, Tuple[int, ...]], ...]

    def __len__(self) -> int:
        return len(self.entries)

    def removed_vertices(self) -> Tuple[int, ...]:
        return tuple(v for v, _ in self.entries)

    def to_json(self) -> List[List]:
        return [[v, list(nbrs)] for v, nbrs in self.entries]

    @classmethod
    def from_json(cls, data: Iterable) -> "RemovalLog":
        return cls(tuple((int(v), tuple(int(u) for u in nbrs)) for v, nbrs in data))


class MultiGraph:
    """Mutable multigraph used only by the series-parallel reduction.

    Tracks parallel-edge multiplicities and loop counts; never escapes the
    recognition module except by conversion back to :class:`Graph`.
    """

    def __init__(self) -> None:
        self.adj: Dict[int, Counter] = {}
        self.loops: Counter = Counter()

    @classmethod
    def from_graph(cls, g: Graph) -> "MultiGraph":
        mg = cls()
        for v in g.vertices:
            mg.adj[v] = Counter()
        for u, v in g.edges():
            mg.adj[u][v] += 1
            mg.adj[v][u] += 1
        return mg

    def vertices(self) -> List[int]:
        return list(self.adj)

    def degree(self, v: int) -> int:
        # Loops contribute 2 to the degree as usual.
        return sum(self.adj[v].values()) + 2 * self.loops[v]

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            self.loops[u] += 1
        else:
            self.adj[u][v] += 1
            self.adj[v][u] += 1

    def remove_vertex(self, v: int) -> None:
        for u in list(self.adj[v]):
            del self.adj[u][v]
        del self.adj[v]
        self.loops.pop(v, None)


def build_graph(edge_list: Iterable[Tuple[int, int]], n: int) -> Graph:
    """Build a Graph on vertex ids ``0..n-1`` from an edge list.

    Duplicate edges are collapsed silently; self-loops and out-of-range ids
    are rejected.
    """
    if n < 0:
        raise MalformedInputError(f"negative vertex count {n}")
    adj: Dict[int, Set[int]] = {v: set() for v in range(n)}
    for u, v in edge_list:
        if u == v:
            raise MalformedInputError(f"self-loop at vertex {u}")
        if not (0 <= u < n) or not (0 <= v < n):
            raise MalformedInputError(f"edge ({u},{v}) out of range [0,{n})")
        adj[u].add(v)
        adj[v].add(u)
    final = {v: tuple(sorted(ns)) for v, ns in adj.items()}
    m = sum(len(ns) for ns in final.values()) // 2
    return Graph(final, m)


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Induced subgraph on vertex set ``s``; original ids are preserved."""
    keep = set(s)
    for v in keep:
        if not g.has_vertex(v):
            raise MalformedInputError(f"vertex {v} not in graph")
    adj: Dict[int, Tuple[int, ...]] = {}
    deg_sum = 0
    for v in keep:
        ns = tuple(u for u in g.neighbors(v) if u in keep)
        adj[v] = ns
        deg_sum += len(ns)
    return Graph(adj, deg_sum // 2)


def peel_low_degree(g: Graph, threshold: int = 2) -> Tuple[Graph, RemovalLog]:
    """Remove vertices of degree <= threshold until none remain.

    Removal order is deterministic: the lowest eligible id goes first.  The
    log records each vertex with the neighbors it had at removal time, which
    is exactly what the reverse color-replay needs.
    """
    deg = {v: g.degree(v) for v in g.vertices}
    alive: Dict[int, Set[int]] = {v: set(g.neighbors(v)) for v in g.vertices}
    heap = [v for v in g.vertices if deg[v] <= threshold]
    heapq.heapify(heap)
    removed: Set[int] = set()
    entries: List[Tuple[int, Tuple[int, ...]]] = []
    while heap:
        v = heapq.heappop(heap)
        if v in removed or deg[v] > threshold:
            continue
        nbrs = tuple(sorted(alive[v]))
        entries.append((v, nbrs))
        removed.add(v)
        for u in nbrs:
            alive[u].discard(v)
            deg[u] -= 1
            if deg[u] <= threshold:
                heapq.heappush(heap, u)
        alive[v] = set()
    residual = induced_subgraph(g, (v for v in g.vertices if v not in removed))
    return residual, RemovalLog(tuple(entries))


def replay_removals(residual: Graph, log: RemovalLog) -> Graph:
    """Invert a peel: add logged vertices back in reverse order."""
    adj: Dict[int, Set[int]] = {v: set(residual.neighbors(v)) for v in residual.vertices}
    for v, nbrs in reversed(log.entries):
        if v in adj:
            raise ContractViolationError(f"vertex {v} already present during replay")
        adj[v] = set()
        for u in nbrs:
            if u not in adj:
                raise ContractViolationError(
                    f"neighbor {u} of replayed vertex {v} not present yet"
                )
            adj[v].add(u)
            adj[u].add(v)
    return Graph.from_adjacency(adj)


def connected_components(g: Graph) -> List[Tuple[int, ...]]:
    """Partition of the vertex set into maximal connected sets.

    Each component is sorted by id and the list is sorted by smallest member.
    """
    seen: Set[int] = set()
    comps: List[Tuple[int, ...]] = []
    for start in g.vertices:
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        comp = [start]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    comp.append(u)
                    stack.append(u)
        comps.append(tuple(sorted(comp)))
    comps.sort(key=lambda c: c[0])
    return comps


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return len(connected_components(g)) == 1
