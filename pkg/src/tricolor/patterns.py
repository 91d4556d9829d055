"""Detection oracles for the forbidden configurations and class membership.

The hereditary class handled by this package excludes three induced patterns:
the diamond (K4 minus an edge), the bowtie (two triangles sharing exactly one
vertex), and any subdivision of K4.  Diamond and bowtie detection is
polynomial.  No polynomial algorithm is known for detecting an induced K4
subdivision, so that oracle is exact only up to a size budget and degrades to
a seeded bounded search beyond it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Set, Tuple

from .errors import BudgetExceededError
from .graph import Graph, induced_subgraph

__all__ = [
    "PatternWitness",
    "MembershipReport",
    "find_diamond",
    "find_bowtie",
    "find_fixed_pattern",
    "find_isk4",
    "verify_membership",
    "is_k4_subdivision",
    "DEFAULT_EXACT_BUDGET",
]

DEFAULT_EXACT_BUDGET = 22

VERDICT_MEMBER = "member"
VERDICT_NONMEMBER = "nonmember"
VERDICT_UNKNOWN = "unknown"


@dataclass(frozen=True)
class PatternWitness:
    """A vertex set realizing a forbidden pattern, re-checkable on demand."""

    kind: str  # diamond | bowtie | prism | k33 | k4 | isk4
    vertices: Tuple[int, ...]
    corners: Tuple[int, ...] = ()  # isk4 only: the four degree-3 vertices
    paths: Tuple[Tuple[int, ...], ...] = ()  # isk4 only: six corner-to-corner paths

    def validate(self, g: Graph) -> bool:
        """Independently re-check that the witness induces the claimed pattern."""
        sub = induced_subgraph(g, self.vertices)
        if self.kind == "diamond":
            return _induces_diamond(sub)
        if self.kind == "bowtie":
            return _induces_bowtie(sub)
        if self.kind == "prism":
            return _induces_prism(sub)
        if self.kind == "k33":
            return _induces_k33(sub)
        if self.kind == "k4":
            return sub.n == 4 and sub.m == 6
        if self.kind == "isk4":
            return is_k4_subdivision(sub)
        return False

    def to_json(self) -> Dict:
        out: Dict = {"kind": self.kind, "vertices": list(self.vertices)}
        if self.kind == "isk4":
            out["corners"] = list(self.corners)
            out["paths"] = [list(p) for p in self.paths]
        return out


@dataclass(frozen=True)
class MembershipReport:
    """Verdict of class membership with the search mode that produced it."""

    verdict: str  # member | nonmember | unknown
    witness: Optional[PatternWitness] = None
    mode: str = "exact"  # exact | bounded
    budget: int = DEFAULT_EXACT_BUDGET
    notes: Tuple[str, ...] = field(default=())

    def to_json(self) -> Dict:
        return {
            "verdict": self.verdict,
            "mode": self.mode,
            "budget": self.budget,
            "witness": self.witness.to_json() if self.witness else None,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# Structure predicates on small induced subgraphs


def _induces_diamond(sub: Graph) -> bool:
    if sub.n != 4 or sub.m != 5:
        return False
    return sorted(sub.degree(v) for v in sub.vertices) == [2, 2, 3, 3]


def _induces_bowtie(sub: Graph) -> bool:
    if sub.n != 5 or sub.m != 6:
        return False
    degs = sorted(sub.degree(v) for v in sub.vertices)
    if degs != [2, 2, 2, 2, 4]:
        return False
    center = next(v for v in sub.vertices if sub.degree(v) == 4)
    wings = [v for v in sub.vertices if v != center]
    # The four wings must split into two adjacent pairs.
    adj_pairs = [(a, b) for a, b in combinations(wings, 2) if sub.has_edge(a, b)]
    return len(adj_pairs) == 2 and len({v for p in adj_pairs for v in p}) == 4


def _induces_prism(sub: Graph) -> bool:
    if sub.n != 6 or sub.m != 9:
        return False
    if any(sub.degree(v) != 3 for v in sub.vertices):
        return False
    triangles = [
        t for t in combinations(sub.vertices, 3)
        if sub.has_edge(t[0], t[1]) and sub.has_edge(t[0], t[2]) and sub.has_edge(t[1], t[2])
    ]
    if len(triangles) != 2:
        return False
    t1, t2 = triangles
    if set(t1) & set(t2):
        return False
    cross = [(a, b) for a in t1 for b in t2 if sub.has_edge(a, b)]
    return len(cross) == 3 and len({a for a, _ in cross}) == 3 and len({b for _, b in cross}) == 3


def _induces_k33(sub: Graph) -> bool:
    if sub.n != 6 or sub.m != 9:
        return False
    if any(sub.degree(v) != 3 for v in sub.vertices):
        return False
    v0 = sub.vertices[0]
    side_a = {v0} | {u for u in sub.vertices if not sub.has_edge(v0, u) and u != v0}
    side_b = set(sub.vertices) - side_a
    if len(side_a) != 3 or len(side_b) != 3:
        return False
    return all(sub.has_edge(a, b) for a in side_a for b in side_b)


def is_k4_subdivision(sub: Graph) -> bool:
    """True iff the graph is a subdivision of K4.

    Checks the degree profile (exactly four degree-3 vertices, the rest
    degree 2), connectivity, and that suppressing the degree-2 chains yields
    a simple K4 on the four corners.
    """
    if sub.n < 4:
        return False
    corners = [v for v in sub.vertices if sub.degree(v) == 3]
    if len(corners) != 4:
        return False
    if any(sub.degree(v) != 2 for v in sub.vertices if v not in corners):
        return False
    corner_set = set(corners)
    pairs: Set[Tuple[int, int]] = set()
    edges_walked = 0
    for c in corners:
        for first in sub.neighbors(c):
            prev, cur = c, first
            length = 1
            while cur not in corner_set:
                nxt = next(u for u in sub.neighbors(cur) if u != prev)
                prev, cur = cur, nxt
                length += 1
            if cur == c:
                return False  # a chain looping back to its own corner
            if c < cur:
                pairs.add((c, cur))
                edges_walked += length
    if pairs != set(combinations(sorted(corners), 2)):
        return False
    # Every edge lies on exactly one corner-to-corner chain.
    return edges_walked == sub.m and sub.m == sub.n + 2


# ---------------------------------------------------------------------------
# Polynomial detectors


def find_diamond(g: Graph) -> Optional[PatternWitness]:
    """Lexicographically least 4-set inducing K4 minus an edge, or None.

    Every induced diamond is found from its unique axis edge: the two
    degree-3 vertices are adjacent and share two nonadjacent neighbors.
    """
    best: Optional[Tuple[int, ...]] = None
    for u, v in g.edges():
        common = [w for w in g.neighbors(u) if g.has_edge(v, w)]
        for w1, w2 in combinations(common, 2):
            if not g.has_edge(w1, w2):
                cand = tuple(sorted((u, v, w1, w2)))
                if best is None or cand < best:
                    best = cand
    if best is None:
        return None
    return PatternWitness("diamond", best)


def find_bowtie(g: Graph) -> Optional[PatternWitness]:
    """Lexicographically least 5-set inducing two triangles sharing a vertex."""
    best: Optional[Tuple[int, ...]] = None
    for c in g.vertices:
        nbrs = g.neighbors(c)
        tri_pairs = [(x, y) for x, y in combinations(nbrs, 2) if g.has_edge(x, y)]
        for (x1, y1), (x2, y2) in combinations(tri_pairs, 2):
            wings = {x1, y1, x2, y2}
            if len(wings) != 4:
                continue
            cross = [
                (a, b)
                for a in (x1, y1)
                for b in (x2, y2)
                if g.has_edge(a, b)
            ]
            if cross:
                continue
            cand = tuple(sorted((c, x1, y1, x2, y2)))
            if best is None or cand < best:
                best = cand
    if best is None:
        return None
    return PatternWitness("bowtie", best)


def _find_k4(g: Graph) -> Optional[Tuple[int, ...]]:
    best: Optional[Tuple[int, ...]] = None
    for u, v in g.edges():
        common = [w for w in g.neighbors(u) if g.has_edge(v, w)]
        for w1, w2 in combinations(common, 2):
            if g.has_edge(w1, w2):
                cand = tuple(sorted((u, v, w1, w2)))
                if best is None or cand < best:
                    best = cand
    return best


def _find_prism(g: Graph) -> Optional[Tuple[int, ...]]:
    triangles = []
    for u, v in g.edges():
        for w in g.neighbors(u):
            if w > v and g.has_edge(v, w):
                triangles.append((u, v, w))
    best: Optional[Tuple[int, ...]] = None
    for t1, t2 in combinations(triangles, 2):
        if set(t1) & set(t2):
            continue
        cross = [(a, b) for a in t1 for b in t2 if g.has_edge(a, b)]
        if len(cross) != 3:
            continue
        if len({a for a, _ in cross}) != 3 or len({b for _, b in cross}) != 3:
            continue
        cand = tuple(sorted(t1 + t2))
        if best is None or cand < best:
            best = cand
    return best


def _find_k33(g: Graph) -> Optional[Tuple[int, ...]]:
    best: Optional[Tuple[int, ...]] = None
    verts = g.vertices
    for u, v in combinations(verts, 2):
        if g.has_edge(u, v):
            continue
        common_uv = [w for w in g.neighbors(u) if g.has_edge(v, w)]
        if len(common_uv) < 3:
            continue
        for w in verts:
            if w <= v or w == u or g.has_edge(u, w) or g.has_edge(v, w):
                continue
            common = [x for x in common_uv if g.has_edge(w, x)]
            for trio in combinations(common, 3):
                if any(g.has_edge(a, b) for a, b in combinations(trio, 2)):
                    continue
                cand = tuple(sorted((u, v, w) + trio))
                if best is None or cand < best:
                    best = cand
    return best


def find_fixed_pattern(g: Graph, kind: str) -> Optional[PatternWitness]:
    """Find an induced prism, K33, or K4 by bounded enumeration."""
    if kind == "prism":
        found = _find_prism(g)
    elif kind == "k33":
        found = _find_k33(g)
    elif kind == "k4":
        found = _find_k4(g)
    else:
        raise ValueError(f"unknown pattern kind {kind!r}")
    return PatternWitness(kind, found) if found else None


# ---------------------------------------------------------------------------
# Induced-K4-subdivision search


def _witness_paths(sub: Graph) -> Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]:
    corners = tuple(sorted(v for v in sub.vertices if sub.degree(v) == 3))
    corner_set = set(corners)
    paths: List[Tuple[int, ...]] = []
    seen_pairs: Set[Tuple[int, int]] = set()
    for c in corners:
        for first in sub.neighbors(c):
            prev, cur = c, first
            path = [c, first]
            while cur not in corner_set:
                nxt = next(u for u in sub.neighbors(cur) if u != prev)
                prev, cur = cur, nxt
                path.append(cur)
            key = (min(c, cur), max(c, cur))
            if key not in seen_pairs:
                seen_pairs.add(key)
                paths.append(tuple(path))
    return corners, tuple(paths)


class _SubsetSearch:
    """Enumerate connected induced subgraphs with degree-profile pruning.

    Standard rooted enumeration: subsets are grouped by their minimum vertex
    and each is visited exactly once (a vertex may enter the extension list
    only when its first subset neighbor joins).  A branch is abandoned as
    soon as some vertex reaches induced degree 4 or a fifth vertex reaches
    induced degree 3; both conditions are monotone under growth, so the
    pruning is sound.  Grouping by minimum vertex lets the caller stop at
    the first root that yields any witness and still report the
    lexicographically least one.
    """

    def __init__(self, g: Graph, max_steps: Optional[int] = None,
                 rng: Optional[random.Random] = None):
        self.g = g
        self.max_steps = max_steps
        self.steps = 0
        self.rng = rng
        self.exhausted = False
        self.best: Optional[Tuple[int, ...]] = None

    def run(self) -> Optional[Tuple[int, ...]]:
        order = list(self.g.vertices)
        if self.rng is not None:
            self.rng.shuffle(order)
        for root in order:
            self.best = None
            ext = [u for u in self.g.neighbors(root) if u > root]
            banned = {root, *ext}
            try:
                self._grow([root], {root: 0}, ext, banned, root)
            except _StepLimit:
                self.exhausted = True
                return self.best
            if self.best is not None:
                # Roots are scanned in ascending order (exact mode), so any
                # witness rooted here beats every later root's witness.
                return self.best
        return None

    def _grow(self, subset: List[int], deg: Dict[int, int],
              extension: List[int], banned: Set[int], root: int) -> None:
        self.steps += 1
        if self.max_steps is not None and self.steps > self.max_steps:
            raise _StepLimit()
        if sum(1 for d in deg.values() if d == 3) == 4 and all(
            d in (2, 3) for d in deg.values()
        ):
            sub = induced_subgraph(self.g, subset)
            if is_k4_subdivision(sub):
                cand = tuple(sorted(subset))
                if self.best is None or cand < self.best:
                    self.best = cand
        for i, v in enumerate(extension):
            new_deg = dict(deg)
            ok = True
            add = 0
            for u in self.g.neighbors(v):
                if u in new_deg:
                    new_deg[u] += 1
                    if new_deg[u] > 3:
                        ok = False
                        break
                    add += 1
            if not ok:
                continue
            new_deg[v] = add
            if sum(1 for d in new_deg.values() if d >= 3) > 4:
                continue
            fresh = [
                u for u in self.g.neighbors(v)
                if u > root and u not in banned
            ]
            new_ext = extension[i + 1:] + fresh
            new_banned = banned | set(fresh)
            self._grow(subset + [v], new_deg, new_ext, new_banned, root)


class _StepLimit(Exception):
    pass


def find_isk4(
    g: Graph,
    budget: int = DEFAULT_EXACT_BUDGET,
    seed: int = 0,
    max_steps: int = 20_000_000,
    bounded_steps: int = 200_000,
):
    """Search for an induced subdivision of K4.

    Exact mode (n <= budget) enumerates connected induced subgraphs whose
    degree profile can still become four 3s and the rest 2s; it returns the
    lexicographically least witness or None.  Beyond the budget a seeded
    bounded search runs instead and the result may be the string
    ``"unknown"``.  K4 itself counts (the trivial subdivision).
    """
    if g.n <= budget:
        search = _SubsetSearch(g, max_steps=max_steps)
        found = search.run()
        if search.exhausted and found is None:
            raise BudgetExceededError(
                f"exact isk4 enumeration exceeded {max_steps} steps on n={g.n}"
            )
        if found is None:
            return None
        sub = induced_subgraph(g, found)
        corners, paths = _witness_paths(sub)
        return PatternWitness("isk4", found, corners, paths)
    search = _SubsetSearch(g, max_steps=bounded_steps, rng=random.Random(seed))
    found = search.run()
    if found is None:
        return VERDICT_UNKNOWN
    sub = induced_subgraph(g, found)
    corners, paths = _witness_paths(sub)
    return PatternWitness("isk4", found, corners, paths)


def verify_membership(g: Graph, budget: int = DEFAULT_EXACT_BUDGET,
                      seed: int = 0) -> MembershipReport:
    """Run all three forbidden-pattern oracles and combine the verdicts.

    ``member`` requires every pattern to be excluded in exact mode, which for
    the K4-subdivision oracle means n <= budget.
    """
    w = find_diamond(g)
    if w is not None:
        return MembershipReport(VERDICT_NONMEMBER, w, mode="exact", budget=budget)
    w = find_bowtie(g)
    if w is not None:
        return MembershipReport(VERDICT_NONMEMBER, w, mode="exact", budget=budget)
    exact = g.n <= budget
    result = find_isk4(g, budget=budget, seed=seed)
    if isinstance(result, PatternWitness):
        return MembershipReport(
            VERDICT_NONMEMBER, result, mode="exact" if exact else "bounded", budget=budget
        )
    if exact:
        return MembershipReport(VERDICT_MEMBER, None, mode="exact", budget=budget)
    return MembershipReport(
        VERDICT_UNKNOWN,
        None,
        mode="bounded",
        budget=budget,
        notes=("graph exceeds the exact search budget; no pattern found within bounds",),
    )
