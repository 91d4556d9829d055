"""Clique-cutset and proper-2-cutset machinery, plus the decomposition tree.

The clique cutset search runs a minimal-triangulation pass (MCS-M) and scans
the elimination order: any later-neighbor set that is a clique in the input
and disconnects it is a clique minimal separator.  A graph with a clique
cutset always exposes one this way, because a clique minimal separator is
parallel to every other minimal separator and therefore survives into every
minimal triangulation.  A plain enumeration oracle is kept alongside for
cross-validation.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import ContractViolationError
from .graph import (
    Graph,
    RemovalLog,
    connected_components,
    induced_subgraph,
    is_connected,
    peel_low_degree,
)

__all__ = [
    "CliqueCutsetTree",
    "TreeNode",
    "Proper2Cutset",
    "find_clique_cutset",
    "find_clique_cutset_bruteforce",
    "build_clique_tree",
    "find_proper_2_cutset",
]


# ---------------------------------------------------------------------------
# Minimal elimination ordering (MCS-M) and clique cutset search


def _mcs_m(g: Graph) -> Tuple[List[int], Dict[int, Set[int]]]:
    """Maximum cardinality search for a minimal triangulation.

    Returns the elimination order (first-eliminated first) and, per vertex,
    its neighbors in the fill graph that come later in that order.  A vertex
    y joins the reachable set of the currently numbered vertex z when some
    path z..y runs entirely through unnumbered vertices of weight strictly
    below w(y); the minimax path weight is computed Dijkstra-style.
    """
    vertices = list(g.vertices)
    n = len(vertices)
    weight = {v: 0 for v in vertices}
    number: Dict[int, int] = {}
    fill: Dict[int, Set[int]] = {v: set(g.neighbors(v)) for v in vertices}
    unnumbered = set(vertices)
    for num in range(n, 0, -1):
        z = max(unnumbered, key=lambda v: (weight[v], -v))
        unnumbered.discard(z)
        number[z] = num
        # dist[y]: minimal over z..y paths of the largest internal weight.
        dist: Dict[int, int] = {}
        pq: List[Tuple[int, int]] = []
        for u in g.neighbors(z):
            if u in unnumbered:
                dist[u] = -1
                heapq.heappush(pq, (-1, u))
        while pq:
            d, u = heapq.heappop(pq)
            if d > dist[u]:
                continue
            through = max(d, weight[u])
            for x in g.neighbors(u):
                if x in unnumbered and through < dist.get(x, n + 1):
                    dist[x] = through
                    heapq.heappush(pq, (through, x))
        reached = [y for y, d in dist.items() if d < weight[y]]
        for y in reached:
            weight[y] += 1
            fill[z].add(y)
            fill[y].add(z)
    order = sorted(vertices, key=lambda v: number[v])
    madj = {v: {u for u in fill[v] if number[u] > number[v]} for v in vertices}
    return order, madj


def _is_clique(g: Graph, vs: Sequence[int]) -> bool:
    return all(g.has_edge(u, v) for u, v in combinations(vs, 2))


def _components_without(g: Graph, blocked: Set[int]) -> List[Tuple[int, ...]]:
    remaining = [v for v in g.vertices if v not in blocked]
    if not remaining:
        return []
    sub = induced_subgraph(g, remaining)
    return connected_components(sub)


def find_clique_cutset(g: Graph) -> Optional[Tuple[Tuple[int, ...], List[Tuple[int, ...]]]]:
    """Some clique cutset of a connected graph with its component partition.

    Returns (K, components of g - K) or None when no clique cutset exists.
    Deterministic: candidates are scanned in elimination order.
    """
    if not is_connected(g):
        raise ContractViolationError("find_clique_cutset requires a connected graph")
    if g.n <= 2:
        return None
    order, madj = _mcs_m(g)
    for v in order:
        sep = madj[v]
        if not sep or len(sep) >= g.n - 1:
            continue
        if not _is_clique(g, sorted(sep)):
            continue
        comps = _components_without(g, sep)
        if len(comps) >= 2:
            return tuple(sorted(sep)), comps
    return None


def _all_cliques(g: Graph):
    """Every nonempty clique, in lexicographic order of the sorted tuple."""
    verts = g.vertices

    def extend(clique: Tuple[int, ...], candidates: Sequence[int]):
        yield clique
        for i, v in enumerate(candidates):
            nxt = [u for u in candidates[i + 1:] if g.has_edge(u, v)]
            yield from extend(clique + (v,), nxt)

    for i, v in enumerate(verts):
        later = [u for u in verts[i + 1:] if g.has_edge(u, v)]
        yield from extend((v,), later)


def find_clique_cutset_bruteforce(
    g: Graph,
) -> Optional[Tuple[Tuple[int, ...], List[Tuple[int, ...]]]]:
    """Independent oracle: try every clique as a cutset, smallest-lex first."""
    if not is_connected(g):
        raise ContractViolationError("find_clique_cutset requires a connected graph")
    for clique in sorted(_all_cliques(g), key=lambda c: (len(c), c)):
        if len(clique) >= g.n - 1:
            continue
        comps = _components_without(g, set(clique))
        if len(comps) >= 2:
            return clique, comps
    return None


# ---------------------------------------------------------------------------
# Clique cutset decomposition tree


@dataclass(frozen=True)
class TreeNode:
    """One node of the decomposition tree: an induced subgraph of the input.

    ``removed`` logs the degree-<=2 peel applied at this node; ``cutset`` is
    the clique used to split the peeled residual (empty tuple for a plain
    component split, None at leaves).
    """

    node_id: int
    layer: int
    vertices: Tuple[int, ...]
    removed: RemovalLog
    cutset: Optional[Tuple[int, ...]]
    children: Tuple[int, ...]
    kind: str  # "clique" | "components" | "basic" | "empty"


@dataclass(frozen=True)
class CliqueCutsetTree:
    graph: Graph
    nodes: Tuple[TreeNode, ...]
    layers: int

    @property
    def root(self) -> TreeNode:
        return self.nodes[0]

    def leaves(self) -> List[TreeNode]:
        return [nd for nd in self.nodes if not nd.children]

    def basic_leaves(self) -> List[TreeNode]:
        return [nd for nd in self.nodes if nd.kind == "basic"]

    def residual_vertices(self, node: TreeNode) -> Tuple[int, ...]:
        removed = set(node.removed.removed_vertices())
        return tuple(v for v in node.vertices if v not in removed)

    def to_json(self) -> Dict:
        return {
            "format": "tricolor.tree/1",
            "n": self.graph.n,
            "m": self.graph.m,
            "layers": self.layers,
            "nodes": [
                {
                    "id": nd.node_id,
                    "layer": nd.layer,
                    "vertices": list(nd.vertices),
                    "removed": nd.removed.to_json(),
                    "cutset": list(nd.cutset) if nd.cutset is not None else None,
                    "children": list(nd.children),
                    "kind": nd.kind,
                }
                for nd in self.nodes
            ],
        }


def build_clique_tree(g: Graph) -> CliqueCutsetTree:
    """Decompose by alternating degree-<=2 peels and clique cutset splits.

    Each node peels its subgraph to fixpoint, then either stops (empty, or no
    clique cutset and minimum degree >= 3: a basic leaf) or splits the
    residual on one clique cutset; disconnected residuals split on the empty
    clique.  Children sit one layer deeper.  Fully peeled leaves are kept:
    the color replay needs their logs.  The walk uses an explicit stack so
    long cut-vertex chains cannot overflow the interpreter stack.
    """
    nodes: List[Optional[TreeNode]] = []
    stack: List[Tuple[Graph, int, int]] = []

    def open_node(sub: Graph, layer: int) -> int:
        node_id = len(nodes)
        nodes.append(None)
        stack.append((sub, layer, node_id))
        return node_id

    open_node(g, 1)
    while stack:
        sub, layer, node_id = stack.pop()
        residual, log = peel_low_degree(sub, 2)
        if residual.n == 0:
            nodes[node_id] = TreeNode(node_id, layer, sub.vertices, log, None, (), "empty")
            continue
        comps = connected_components(residual)
        if len(comps) > 1:
            kind, cutset = "components", ()
            parts = comps
        else:
            found = find_clique_cutset(residual)
            if found is None:
                nodes[node_id] = TreeNode(
                    node_id, layer, sub.vertices, log, None, (), "basic"
                )
                continue
            cutset, comps = found
            kind = "clique"
            parts = [tuple(sorted(set(c) | set(cutset))) for c in comps]
        child_ids = tuple(
            open_node(induced_subgraph(residual, part), layer + 1) for part in parts
        )
        nodes[node_id] = TreeNode(node_id, layer, sub.vertices, log, cutset, child_ids, kind)
    layers = max(nd.layer for nd in nodes)
    return CliqueCutsetTree(g, tuple(nodes), layers)


# ---------------------------------------------------------------------------
# Proper 2-cutsets


@dataclass(frozen=True)
class Proper2Cutset:
    """A nonadjacent pair whose removal splits the rest into two honest sides.

    Honest means: both sides nonempty, no edges between them, and neither
    side together with the pair induces a bare a-b path.
    """

    pair: Tuple[int, int]
    side_x: Tuple[int, ...]
    side_y: Tuple[int, ...]

    def validate(self, g: Graph) -> bool:
        a, b = self.pair
        x, y = set(self.side_x), set(self.side_y)
        if g.has_edge(a, b) or not x or not y:
            return False
        if x & y or (x | y | {a, b}) != set(g.vertices) or {a, b} & (x | y):
            return False
        if any(g.has_edge(u, v) for u in x for v in y):
            return False
        before = len(connected_components(g))
        after = len(_components_without(g, {a, b}))
        if after <= before:
            return False
        return not _side_is_ab_path(g, x, a, b) and not _side_is_ab_path(g, y, a, b)

    def to_json(self) -> Dict:
        return {
            "pair": list(self.pair),
            "side_x": list(self.side_x),
            "side_y": list(self.side_y),
        }


def _side_is_ab_path(g: Graph, side: Set[int], a: int, b: int) -> bool:
    """Does side + {a, b} induce a path whose two ends are a and b?"""
    sub = induced_subgraph(g, side | {a, b})
    if sub.degree(a) != 1 or sub.degree(b) != 1:
        return False
    if any(sub.degree(v) != 2 for v in side):
        return False
    return is_connected(sub)


def _best_partition(
    g: Graph, a: int, b: int, comps: List[Tuple[int, ...]]
) -> Optional[Tuple[int, List[Tuple[int, ...]], List[Tuple[int, ...]]]]:
    """Smallest valid small side for the pair (a, b), or None.

    A side fails only when it is a single component C with G[C + {a,b}] a
    bare a-b path (a multi-component side always has a cycle, a branch, or a
    disconnection through the pair).  That makes the minimum a short case
    split on the component count rather than a subset search.
    """
    bad = [_side_is_ab_path(g, set(c), a, b) for c in comps]
    order = sorted(range(len(comps)), key=lambda i: (len(comps[i]), comps[i][0]))
    c = len(comps)
    candidates: List[Tuple[int, List[int]]] = []  # (|X|, component indices of X)
    # Single non-path component against the rest.
    for i in order:
        if bad[i]:
            continue
        rest_ok = c - 1 >= 2 or (c - 1 == 1 and not bad[next(j for j in range(c) if j != i)])
        if rest_ok:
            candidates.append((len(comps[i]), [i]))
            break  # smallest such component wins among these
    if c >= 4:
        i, j = order[0], order[1]
        candidates.append((len(comps[i]) + len(comps[j]), [i, j]))
    if c == 3:
        # Two components as X require the singleton Y to be non-path.
        good_y = [i for i in range(c) if not bad[i]]
        if good_y:
            y = max(good_y, key=lambda i: (len(comps[i]), -comps[i][0]))
            rest = [i for i in range(c) if i != y]
            candidates.append((sum(len(comps[i]) for i in rest), rest))
    if not candidates:
        return None
    size, xs = min(candidates, key=lambda t: (t[0], t[1]))
    x_comps = [comps[i] for i in xs]
    y_comps = [comps[i] for i in range(c) if i not in xs]
    return size, x_comps, y_comps


def find_proper_2_cutset(g: Graph, minimize_small_side: bool = True) -> Optional[Proper2Cutset]:
    """Scan nonadjacent pairs for a proper 2-cutset.

    With the flag set, returns the cutset whose small side is minimum over
    all proper 2-cutsets (ties broken lexicographically on the pair);
    otherwise the first valid pair in lexicographic order wins.  Component
    grouping is solved exactly per pair, since only a single-component side
    can collapse into an a-b path.
    """
    before = len(connected_components(g))
    best: Optional[Tuple[int, Tuple[int, int], List, List]] = None
    for a, b in combinations(g.vertices, 2):
        if g.has_edge(a, b):
            continue
        comps = _components_without(g, {a, b})
        if len(comps) <= before:
            continue
        found = _best_partition(g, a, b, comps)
        if found is None:
            continue
        size, x_comps, y_comps = found
        if not minimize_small_side:
            return _assemble(a, b, x_comps, y_comps)
        if best is None or size < best[0]:
            best = (size, (a, b), x_comps, y_comps)
    if best is None:
        return None
    _, (a, b), x_comps, y_comps = best
    return _assemble(a, b, x_comps, y_comps)


def _assemble(a: int, b: int, x_comps: List, y_comps: List) -> Proper2Cutset:
    side_x = tuple(sorted(v for c in x_comps for v in c))
    side_y = tuple(sorted(v for c in y_comps for v in c))
    if len(side_x) > len(side_y):
        side_x, side_y = side_y, side_x
    return Proper2Cutset((a, b), side_x, side_y)
