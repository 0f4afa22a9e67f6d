"""Family generators and recognizers: forward/backward exactness."""

import pytest

from factorsmith.corpus import free_trees_upto
from factorsmith.factors import verify_fractional
from factorsmith.families import (
    C3,
    Family,
    OTHER,
    P2,
    P5,
    classify_component,
    cubic_expansion,
    expand_base_tree,
    expand_cubic_tree,
    is_cubic_expansion,
    is_cubic_tree,
    is_expansion_base,
    is_tree_expansion,
    pendant_half_assignment,
    star,
    tree_expansion,
)
from factorsmith.graphs import Graph
from treeutil import tree_canon

K13 = Graph(4, [(0, 1), (0, 2), (0, 3)])
CUBIC6 = Graph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def leaves(g: Graph) -> int:
    return sum(1 for v in range(g.n) if g.degree(v) == 1)


class TestCubicExpansion:
    def test_three_star_gives_ten_vertex_spider(self):
        t = expand_cubic_tree(K13)
        assert t.n == 10
        assert t.degree_sequence() == (3, 2, 2, 2, 2, 2, 2, 1, 1, 1)
        assert is_cubic_expansion(t)

    def test_single_edge_base_rejected(self):
        with pytest.raises(ValueError):
            expand_cubic_tree(Graph(2, [(0, 1)]))

    def test_non_cubic_base_rejected(self):
        with pytest.raises(ValueError):
            expand_cubic_tree(path(4))

    def test_six_vertex_base_gives_fifteen(self):
        t = expand_cubic_tree(CUBIC6)
        assert t.n == 15
        assert is_cubic_expansion(t)

    def test_leaf_count_preserved(self):
        for base in (K13, CUBIC6):
            assert leaves(expand_cubic_tree(base)) == leaves(base)

    def test_vertex_count_formula(self):
        # |T| = |R| + ||R|| + leaves(R); degree-2 count = ||R|| + leaves(R)
        for base in (K13, CUBIC6):
            t = expand_cubic_tree(base)
            assert t.n == base.n + base.num_edges + leaves(base)
            deg2 = sum(1 for v in range(t.n) if t.degree(v) == 2)
            assert deg2 == base.num_edges + leaves(base)

    @pytest.mark.parametrize("g", [path(5), path(7), K13, Graph(3, [(0, 1), (1, 2), (0, 2)])])
    def test_recognizer_rejects(self, g):
        assert not is_cubic_expansion(g)

    def test_recognizer_rejects_wrong_gaps(self):
        # two branch vertices joined by a length-3 chain of degree-2 vertices
        g = Graph(10, [(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (3, 6), (3, 7), (4, 8), (5, 9)])
        assert not is_cubic_expansion(g)

    def test_forward_backward_small(self):
        generated = set()
        for base in free_trees_upto(8):
            if is_cubic_tree(base) and any(base.degree(v) == 3 for v in range(base.n)):
                generated.add(tree_canon(expand_cubic_tree(base)))
        accepted = {
            tree_canon(t)
            for t in free_trees_upto(16)
            if is_cubic_expansion(t)
        }
        # bases with <= 8 vertices produce all family members with <= 16
        # vertices (|T| = 5|R|/2 for cubic bases), so this is an equality
        assert accepted == generated


class TestExpansionBase:
    def test_spec_example_two_centers(self):
        base = Graph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
        assert is_expansion_base(base, 2)

    def test_single_core_vertex_rejected(self):
        # path a-b-c plus a leaf on b: core = {b} only
        assert not is_expansion_base(Graph(4, [(0, 1), (1, 2), (1, 3)]), 2)

    def test_even_core_degree_rejected(self):
        # path of 3 core vertices: middle has core degree 2 (even)
        base = Graph(7, [(0, 1), (1, 2), (0, 3), (0, 4), (1, 5), (2, 6)])
        assert not is_expansion_base(base, 2)

    def test_leaf_budget_enforced(self):
        # center with 3 leaves attached: 2*3 + 1 = 7 > 5 at k=2
        base = Graph(6, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5)])
        assert not is_expansion_base(base, 2)
        assert is_expansion_base(base, 3)

    def test_k_guard(self):
        with pytest.raises(ValueError):
            is_expansion_base(K13, 1)


class TestExpandBaseTree:
    def test_spec_arithmetic_k2(self):
        # two centers, two leaves each: no pendants added, one subdivision
        base = Graph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
        t = expand_base_tree(base, 2)
        assert t.n == 7
        assert is_tree_expansion(t, 2)

    def test_budget_equation_everywhere(self):
        from factorsmith.corpus import random_expansion_base

        for k in (2, 3):
            for seed in range(25):
                base = random_expansion_base(k, 10, seed)
                t = expand_base_tree(base, k)
                for b in range(t.n):
                    if t.degree(b) >= 3:
                        pend = sum(1 for w in t.neighbors(b) if t.degree(w) == 1)
                        mid = sum(1 for w in t.neighbors(b) if t.degree(w) == 2)
                        assert 2 * pend + mid == 2 * k + 1

    def test_canonical_assignment_verifies(self):
        from factorsmith.corpus import random_expansion_base

        for k in (2, 3):
            for seed in range(25):
                t = expand_base_tree(random_expansion_base(k, 9, seed), k)
                h = pendant_half_assignment(t)
                assert verify_fractional(t, k, h)
                # core vertices sit exactly at the ceiling k + 1/2
                for v in range(t.n):
                    if t.degree(v) >= 3:
                        assert h.half_degree_units(v) == 2 * k + 1

    def test_invalid_base_rejected(self):
        with pytest.raises(ValueError):
            expand_base_tree(path(3), 2)

    def test_forward_backward_k2(self):
        generated = set()
        for base in free_trees_upto(8):
            if base.n >= 4 and is_expansion_base(base, 2):
                t = expand_base_tree(base, 2)
                if t.n <= 14:
                    generated.add(tree_canon(t))
        accepted = {
            tree_canon(t)
            for t in free_trees_upto(14)
            if is_tree_expansion(t, 2)
        }
        # all generated trees within range are recognized
        assert generated <= accepted


class TestTreeExpansionRecognizer:
    def test_star_rejected(self):
        for j in (2, 3, 5):
            assert not is_tree_expansion(Graph(j + 1, [(0, i) for i in range(1, j + 1)]), 2)

    def test_adjacent_branches_rejected(self):
        # two adjacent degree-3 vertices
        g = Graph(8, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7)])
        assert not is_tree_expansion(g, 2)

    def test_k_guard(self):
        with pytest.raises(ValueError):
            is_tree_expansion(K13, 1)


class TestClassify:
    def test_f1_members(self):
        fam = Family.f1()
        assert classify_component(Graph(2, [(0, 1)]), fam) == P2
        assert classify_component(Graph(3, [(0, 1), (1, 2), (0, 2)]), fam) == C3
        assert classify_component(path(5), fam) == P5
        assert classify_component(expand_cubic_tree(K13), fam) == cubic_expansion()

    def test_f1_rejects(self):
        fam = Family.f1()
        assert classify_component(path(3), fam) == OTHER
        assert classify_component(K13, fam) == OTHER

    def test_f2_members(self):
        fam = Family.f2(2)
        assert classify_component(Graph(2, [(0, 1)]), fam) == star(1)
        assert classify_component(Graph(3, [(0, 1), (0, 2)]), fam) == star(2)
        base = Graph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
        assert classify_component(expand_base_tree(base, 2), fam) == tree_expansion(2)

    def test_f2_rejects(self):
        fam = Family.f2(2)
        assert classify_component(Graph(3, [(0, 1), (1, 2), (0, 2)]), fam) == OTHER
        assert classify_component(Graph(5, [(0, i) for i in range(1, 5)]), fam) == OTHER
        assert classify_component(path(5), fam) == OTHER

    def test_family_validation(self):
        with pytest.raises(ValueError):
            Family.f2(1)
        with pytest.raises(ValueError):
            Family("F1", 2)
