"""Small named graphs used across the test modules."""

from tricolor import Graph, build_graph


def path_graph(k: int) -> Graph:
    return build_graph([(i, i + 1) for i in range(k - 1)], k)


def cycle_graph(k: int) -> Graph:
    return build_graph([(i, (i + 1) % k) for i in range(k)], k)


def complete_graph(k: int) -> Graph:
    return build_graph([(i, j) for i in range(k) for j in range(i + 1, k)], k)


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph([(i, a + j) for i in range(a) for j in range(b)], a + b)


def prism_graph() -> Graph:
    # Two triangles 0-1-2 and 3-4-5 joined by the matching 0-3, 1-4, 2-5.
    return build_graph(
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)], 6
    )


def diamond_graph() -> Graph:
    return build_graph([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)], 4)


def bowtie_graph() -> Graph:
    return build_graph([(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)], 5)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5, 7), (7, 9), (9, 6), (6, 8), (8, 5)]
    return build_graph(outer + spokes + inner, 10)


def cube_graph() -> Graph:
    edges = []
    for v in range(8):
        for bit in (1, 2, 4):
            u = v ^ bit
            if u > v:
                edges.append((v, u))
    return build_graph(edges, 8)


def wagner_graph() -> Graph:
    """The cubic Moebius-Kantor ladder on 8 vertices."""
    edges = [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)]
    return build_graph(edges, 8)


def pentagonal_prism() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return build_graph(edges, 10)


def theta_graph(*path_lengths: int) -> Graph:
    """Two hub vertices 0, 1 joined by internally disjoint paths."""
    edges = []
    nxt = 2
    for length in path_lengths:
        assert length >= 2, "paths must have length at least 2"
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return build_graph(edges, nxt)


def prism_minus_matching_edge() -> Graph:
    """The 6-vertex shape with two triangles and two of three matching edges.

    Vertices 0 and 3 are the apexes freed by the missing matching edge.
    """
    return build_graph(
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (1, 4), (2, 5)], 6
    )
