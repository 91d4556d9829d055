import random
from itertools import combinations

import pytest

import oracles
from common import (
    bowtie_graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    diamond_graph,
    petersen_graph,
    prism_graph,
)
from conftest import random_graph
from tricolor import (
    build_graph,
    find_bowtie,
    find_diamond,
    find_fixed_pattern,
    find_isk4,
    induced_subgraph,
    subdivide,
    verify_membership,
)


class TestFindDiamond:
    def test_diamond_itself(self):
        w = find_diamond(diamond_graph())
        assert w is not None and w.vertices == (0, 1, 2, 3)
        assert w.validate(diamond_graph())

    def test_c6_absent(self):
        assert find_diamond(cycle_graph(6)) is None

    def test_k4_absent(self):
        # K4 contains K4, not an induced diamond.
        assert find_diamond(complete_graph(4)) is None

    def test_k5_finds_none(self):
        assert find_diamond(complete_graph(5)) is None

    def test_lex_least(self, rng):
        for _ in range(40):
            g = random_graph(rng, 8, 0.45)
            mine = find_diamond(g)
            ref = oracles.find_induced_copy(g, diamond_graph())
            assert (mine.vertices if mine else None) == ref


class TestFindBowtie:
    def test_bowtie_itself(self):
        w = find_bowtie(bowtie_graph())
        assert w is not None and len(w.vertices) == 5
        assert w.validate(bowtie_graph())

    def test_prism_absent_exhaustive(self):
        prism = prism_graph()
        assert find_bowtie(prism) is None
        # Independent confirmation: no 5-subset induces a bowtie.
        for subset in combinations(prism.vertices, 5):
            sub = induced_subgraph(prism, subset)
            assert not (sub.m == 6 and sorted(sub.degree(v) for v in subset) == [2, 2, 2, 2, 4])

    def test_k33_absent(self):
        assert find_bowtie(complete_bipartite(3, 3)) is None

    def test_agrees_with_oracle(self, rng):
        for _ in range(30):
            g = random_graph(rng, 8, 0.4)
            mine = find_bowtie(g)
            ref = oracles.find_induced_copy(g, bowtie_graph())
            assert (mine.vertices if mine else None) == ref


class TestFixedPatterns:
    def test_prism_in_prism(self):
        w = find_fixed_pattern(prism_graph(), "prism")
        assert w.vertices == (0, 1, 2, 3, 4, 5)
        assert w.validate(prism_graph())

    def test_k33_in_k33(self):
        w = find_fixed_pattern(complete_bipartite(3, 3), "k33")
        assert w.vertices == (0, 1, 2, 3, 4, 5)

    def test_petersen_has_no_prism(self):
        assert find_fixed_pattern(petersen_graph(), "prism") is None
        # Petersen has girth 5: no triangles, so no 6-subset can induce one.
        ref = oracles.find_induced_copy(petersen_graph(), prism_graph())
        assert ref is None

    def test_k4(self):
        w = find_fixed_pattern(complete_graph(5), "k4")
        assert w.vertices == (0, 1, 2, 3)
        assert find_fixed_pattern(prism_graph(), "k4") is None

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            find_fixed_pattern(prism_graph(), "pentagon")


class TestFindIsk4:
    def test_k4_is_its_own_subdivision(self):
        w = find_isk4(complete_graph(4))
        assert w.vertices == (0, 1, 2, 3)
        assert w.corners == (0, 1, 2, 3)

    def test_prism_absent_exact(self):
        assert find_isk4(prism_graph()) is None
        assert oracles.brute_isk4(prism_graph()) is None

    def test_subdivided_k4_full_witness(self):
        g = subdivide(complete_graph(4))
        assert g.n == 10 and g.m == 12
        w = find_isk4(g)
        assert w.vertices == tuple(range(10))
        assert set(w.corners) == {0, 1, 2, 3}
        assert len(w.paths) == 6
        assert w.validate(g)

    def test_agrees_with_subset_oracle(self):
        rng = random.Random(1729)
        checked = 0
        for _ in range(220):
            n = rng.randrange(4, 13)
            g = random_graph(rng, n, rng.choice([0.2, 0.3, 0.45]))
            mine = find_isk4(g, budget=12)
            ref = oracles.brute_isk4(g)
            assert (mine.vertices if mine else None) == ref
            checked += 1
        assert checked >= 200

    def test_bounded_mode_finds_planted_pattern(self):
        sub = subdivide(complete_graph(4))
        edges = list(sub.edges())
        # Pad with pendants beyond any reasonable exact budget.
        for v in range(10, 40):
            edges.append((v - 10, v))
        g = build_graph(edges, 40)
        result = find_isk4(g, budget=12, seed=5)
        assert result != "unknown" and result is not None
        assert result.validate(g)

    def test_bounded_mode_unknown_on_clean_graph(self):
        g = cycle_graph(30)
        assert find_isk4(g, budget=12, seed=0) == "unknown"


class TestMembership:
    def test_c7_member(self):
        assert verify_membership(cycle_graph(7)).verdict == "member"

    def test_bowtie_nonmember_with_witness(self):
        rep = verify_membership(bowtie_graph())
        assert rep.verdict == "nonmember"
        assert rep.witness.kind == "bowtie"
        assert rep.witness.validate(bowtie_graph())

    def test_subdivided_k4_nonmember(self):
        g = subdivide(complete_graph(4))
        rep = verify_membership(g)
        assert rep.verdict == "nonmember" and rep.witness.kind == "isk4"

    def test_unknown_beyond_budget(self):
        rep = verify_membership(cycle_graph(30), budget=12)
        assert rep.verdict == "unknown"
        assert rep.mode == "bounded"

    def test_hereditary_on_random_members(self, rng):
        """Membership is closed under induced subgraphs."""
        from tricolor import gen_series_parallel

        members = [gen_series_parallel(s, 10 + s % 7) for s in range(8)]
        members.append(prism_graph())
        for g in members:
            assert verify_membership(g).verdict == "member"
            for _ in range(6):
                k = rng.randrange(1, g.n + 1)
                subset = rng.sample(list(g.vertices), k)
                sub = induced_subgraph(g, subset)
                assert verify_membership(sub).verdict == "member"

    def test_witnesses_revalidate(self, rng):
        for _ in range(25):
            g = random_graph(rng, 9, 0.4)
            rep = verify_membership(g)
            if rep.witness is not None:
                assert rep.witness.validate(g)
