"""Blossom matching vs. exhaustive search."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factorsmith.corpus import enumerate_exhaustive, random_gnp
from factorsmith.graphs import Graph
from factorsmith.matching import Matching, max_matching
from fractions import Fraction


def brute_max_matching(g: Graph) -> int:
    edges = g.edges
    best = 0

    def rec(i: int, used: int, count: int) -> None:
        nonlocal best
        if count + (len(edges) - i) <= best:
            return
        if i == len(edges):
            best = max(best, count)
            return
        u, v = edges[i]
        if not (used >> u & 1) and not (used >> v & 1):
            rec(i + 1, used | 1 << u | 1 << v, count + 1)
        rec(i + 1, used, count)

    rec(0, 0, 0)
    return best


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


class TestMatching:
    def test_c4_perfect(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert max_matching(g).size == 2

    def test_k3(self):
        g = Graph(3, [(0, 1), (1, 2), (0, 2)])
        assert max_matching(g).size == 1

    def test_petersen_perfect(self):
        g = petersen()
        assert brute_max_matching(g) == 5
        assert max_matching(g).size == 5

    def test_empty_and_edgeless(self):
        assert max_matching(Graph(0)).size == 0
        assert max_matching(Graph(5)).size == 0

    def test_glued_odd_cycles(self):
        g = Graph(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6)])
        assert max_matching(g).size == brute_max_matching(g) == 3

    def test_matching_edges_disjoint(self):
        m = max_matching(petersen())
        used = set()
        for u, v in m.edges:
            assert u not in used and v not in used
            used |= {u, v}

    def test_exhaustive_small(self):
        for n in range(1, 6):
            for g in enumerate_exhaustive(n):
                assert max_matching(g).size == brute_max_matching(g)

    @settings(max_examples=120, deadline=None)
    @given(st.integers(min_value=1, max_value=10), st.integers(min_value=0, max_value=10_000))
    def test_random_agreement(self, n, seed):
        g = random_gnp(n, Fraction(1, 2), seed)
        assert max_matching(g).size == brute_max_matching(g)

    def test_matching_type_rejects_shared_vertex(self):
        with pytest.raises(ValueError):
            Matching(frozenset({(0, 1), (1, 2)}))
