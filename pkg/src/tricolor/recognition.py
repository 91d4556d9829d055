"""Classification of decomposition leaves.

A basic graph (connected, no clique cutset, minimum degree >= 3) in the
target class is a complete bipartite graph, the line graph of a sparse
max-degree-3 graph, or has a proper 2-cutset.  The classifier tries those
branches in order; a series-parallel branch is kept last so raw CLI inputs
get a sensible verdict too.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .cutsets import Proper2Cutset, find_proper_2_cutset
from .errors import ContractViolationError
from .graph import Graph, MultiGraph, is_connected
from .patterns import find_diamond

__all__ = [
    "BasicVerdict",
    "RootGraph",
    "is_complete_bipartite",
    "is_series_parallel",
    "reconstruct_line_graph_root",
    "classify_basic",
    "BRANCH_COMPLETE_BIPARTITE",
    "BRANCH_LINE_OF_SPARSE",
    "BRANCH_PROPER_2_CUTSET",
    "BRANCH_SERIES_PARALLEL",
    "BRANCH_UNCLASSIFIED",
]

BRANCH_COMPLETE_BIPARTITE = "complete_bipartite"
BRANCH_LINE_OF_SPARSE = "line_of_sparse"
BRANCH_PROPER_2_CUTSET = "proper_2_cutset"
BRANCH_SERIES_PARALLEL = "series_parallel"
BRANCH_UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class RootGraph:
    """A root graph H with the vertex-of-G to edge-of-H correspondence."""

    h: Graph
    vertex_to_edge: Dict[int, Tuple[int, int]]

    def validate(self, g: Graph) -> bool:
        """Exact check that g is the line graph of h under the stored map.

        Two H-edges are adjacent in L(H) iff they share an endpoint, so it
        suffices that the map is a bijection onto E(H), that every pair of
        H-edges sharing an endpoint is an edge of g, and that the counts
        match.
        """
        edges_h = set(self.h.edges())
        mapped = set(self.vertex_to_edge.values())
        if set(self.vertex_to_edge) != set(g.vertices):
            return False
        if mapped != edges_h or len(self.vertex_to_edge) != len(edges_h):
            return False
        incident: Dict[int, List[int]] = {v: [] for v in self.h.vertices}
        for gv, (u, w) in self.vertex_to_edge.items():
            incident[u].append(gv)
            incident[w].append(gv)
        shared_pairs = 0
        for gvs in incident.values():
            for a, b in combinations(gvs, 2):
                if not g.has_edge(a, b):
                    return False
                shared_pairs += 1
        return shared_pairs == g.m

    def is_sparse(self) -> bool:
        """Every edge of h has at most one endpoint of degree above two."""
        return all(
            self.h.degree(u) <= 2 or self.h.degree(v) <= 2 for u, v in self.h.edges()
        )

    def to_json(self) -> Dict:
        return {
            "root_n": self.h.n,
            "root_edges": [list(e) for e in self.h.edges()],
            "vertex_to_edge": {str(v): list(e) for v, e in sorted(self.vertex_to_edge.items())},
        }


@dataclass(frozen=True)
class BasicVerdict:
    branch: str
    bipartition: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None
    root: Optional[RootGraph] = None
    cutset: Optional[Proper2Cutset] = None

    def to_json(self) -> Dict:
        out: Dict = {"branch": self.branch}
        if self.bipartition is not None:
            out["bipartition"] = [list(self.bipartition[0]), list(self.bipartition[1])]
        if self.root is not None:
            out["root"] = self.root.to_json()
        if self.cutset is not None:
            out["cutset"] = self.cutset.to_json()
        return out


def is_complete_bipartite(g: Graph) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Bipartition witness if g is complete bipartite, else None."""
    side: Dict[int, int] = {}
    for start in g.vertices:
        if start in side:
            continue
        side[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if u not in side:
                    side[u] = 1 - side[v]
                    stack.append(u)
                elif side[u] == side[v]:
                    return None
    part_a = tuple(v for v in g.vertices if side[v] == 0)
    part_b = tuple(v for v in g.vertices if side[v] == 1)
    for a in part_a:
        if g.degree(a) != len(part_b):
            return None
    for b in part_b:
        if g.degree(b) != len(part_a):
            return None
    return part_a, part_b


def is_series_parallel(g: Graph) -> bool:
    """True iff g has no K4 minor.

    Reduction worklist: drop loops, collapse parallel edges, delete vertices
    of degree <= 1, suppress degree-2 vertices.  A simple graph that gets
    stuck has minimum degree >= 3 and therefore a K4 minor; a graph that
    melts away completely has none, and every rule preserves the K4-minor
    status in both directions.
    """
    mg = MultiGraph.from_graph(g)
    pending = set(mg.vertices())
    while pending:
        v = pending.pop()
        if v not in mg.adj:
            continue
        mg.loops.pop(v, None)
        changed = False
        for u, mult in list(mg.adj[v].items()):
            if mult > 1:
                mg.adj[v][u] = 1
                mg.adj[u][v] = 1
                changed = True
        deg = sum(mg.adj[v].values())
        if deg <= 1:
            for u in list(mg.adj[v]):
                pending.add(u)
            mg.remove_vertex(v)
            continue
        if deg == 2:
            x, y = list(mg.adj[v])
            mg.remove_vertex(v)
            mg.add_edge(x, y)
            pending.add(x)
            pending.add(y)
            continue
        if changed:
            pending.add(v)
    return all(sum(cnt.values()) == 0 for cnt in mg.adj.values())


def reconstruct_line_graph_root(g: Graph) -> Optional[RootGraph]:
    """Rebuild H with g = L(H), for connected diamond-free inputs.

    In a diamond-free graph two distinct maximal cliques share at most one
    vertex, so the edges partition uniquely into maximal cliques and the
    classical partition criterion applies directly: g is a line graph iff no
    vertex lies in three of those cliques.  H gets one vertex per clique
    plus a pendant vertex for every g-vertex covered only once, and one edge
    per g-vertex.  Returns None unless H also comes out sparse with maximum
    degree at most three.
    """
    if not is_connected(g):
        raise ContractViolationError("root reconstruction requires a connected graph")
    if find_diamond(g) is not None:
        raise ContractViolationError("root reconstruction requires a diamond-free graph")
    if g.n == 1:
        # An isolated vertex is the line graph of a single edge.
        only = g.vertices[0]
        h = Graph.from_adjacency({0: [1], 1: [0]})
        return RootGraph(h, {only: (0, 1)})
    cliques: List[Tuple[int, ...]] = []
    seen: Set[FrozenSet[int]] = set()
    for u, v in g.edges():
        members = frozenset((u, v)) | {w for w in g.neighbors(u) if g.has_edge(v, w)}
        if members not in seen:
            seen.add(members)
            cliques.append(tuple(sorted(members)))
    cliques.sort()
    covering: Dict[int, List[int]] = {v: [] for v in g.vertices}
    for idx, clique in enumerate(cliques):
        for v in clique:
            covering[v].append(idx)
    if any(len(idxs) > 2 for idxs in covering.values()):
        return None
    adj: Dict[int, Set[int]] = {i: set() for i in range(len(cliques))}
    vertex_to_edge: Dict[int, Tuple[int, int]] = {}
    next_id = len(cliques)
    for v in g.vertices:
        idxs = covering[v]
        if len(idxs) == 2:
            a, b = idxs
        else:
            a, b = idxs[0], next_id
            adj[next_id] = set()
            next_id += 1
        adj[a].add(b)
        adj[b].add(a)
        vertex_to_edge[v] = (min(a, b), max(a, b))
    root = RootGraph(Graph.from_adjacency(adj), vertex_to_edge)
    if root.h.max_degree() > 3 or not root.is_sparse():
        return None
    if not root.validate(g):
        # The partition criterion failed structurally (non-line input).
        return None
    return root


def classify_basic(g: Graph) -> BasicVerdict:
    """Sort a graph into the class's constructive branches.

    Intended for basic graphs (connected, no clique cutset, min degree >= 3)
    but total on any input: cheap checks run first, and the series-parallel
    branch catches raw inputs that the decomposition would normally consume.
    """
    bip = is_complete_bipartite(g)
    if bip is not None:
        return BasicVerdict(BRANCH_COMPLETE_BIPARTITE, bipartition=bip)
    if g.n > 0 and is_connected(g) and find_diamond(g) is None:
        root = reconstruct_line_graph_root(g)
        if root is not None:
            return BasicVerdict(BRANCH_LINE_OF_SPARSE, root=root)
    cutset = find_proper_2_cutset(g, minimize_small_side=True)
    if cutset is not None:
        return BasicVerdict(BRANCH_PROPER_2_CUTSET, cutset=cutset)
    if is_series_parallel(g):
        return BasicVerdict(BRANCH_SERIES_PARALLEL)
    return BasicVerdict(BRANCH_UNCLASSIFIED)
