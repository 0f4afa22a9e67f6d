"""Corpus generators: determinism, counts, structural postconditions."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factorsmith.corpus import (
    CorpusSpec,
    SplitMix64,
    enumerate_exhaustive,
    free_trees,
    free_trees_upto,
    paths_and_cycles,
    random_cubic_tree,
    random_expansion_base,
    random_gnp,
    random_tree,
)
from factorsmith.families import is_cubic_tree, is_expansion_base
from factorsmith.graphs import Graph, is_tree
from treeutil import tree_canon

# number of free trees on n vertices, n = 1..12 (classical enumeration)
FREE_TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]


class TestExhaustive:
    @pytest.mark.parametrize("n,count", [(2, 2), (3, 8), (4, 64)])
    def test_counts(self, n, count):
        assert sum(1 for _ in enumerate_exhaustive(n)) == count

    def test_all_distinct(self):
        graphs = list(enumerate_exhaustive(3))
        assert len(set(graphs)) == 8

    def test_range_guard(self):
        with pytest.raises(ValueError):
            list(enumerate_exhaustive(8))
        with pytest.raises(ValueError):
            list(enumerate_exhaustive(0))


class TestGnp:
    def test_extremes(self):
        assert random_gnp(6, Fraction(0), 1).num_edges == 0
        assert random_gnp(6, Fraction(1), 1).num_edges == 15

    def test_deterministic(self):
        a = random_gnp(8, Fraction(1, 2), 1)
        b = random_gnp(8, Fraction(1, 2), 1)
        assert a == b

    def test_seed_matters(self):
        outs = {random_gnp(8, Fraction(1, 2), s) for s in range(10)}
        assert len(outs) > 1

    def test_probability_validated(self):
        with pytest.raises(ValueError):
            random_gnp(5, Fraction(3, 2), 0)


class TestSplitMix:
    def test_reference_values(self):
        # seed 0 stream of the standard SplitMix64 mixer
        rng = SplitMix64(0)
        assert rng.next_u64() == 0xE220A8397B1DCDAF
        assert rng.next_u64() == 0x6E789E6AA1B965F4

    def test_randrange_bounds(self):
        rng = SplitMix64(42)
        draws = [rng.randrange(7) for _ in range(200)]
        assert all(0 <= d < 7 for d in draws)
        assert len(set(draws)) == 7


class TestRandomTrees:
    @settings(max_examples=60)
    @given(st.integers(min_value=1, max_value=16), st.integers(min_value=0, max_value=500))
    def test_random_tree_is_tree(self, n, seed):
        assert is_tree(random_tree(n, seed))

    def test_cubic_m0_is_single_edge(self):
        assert random_cubic_tree(0, 3) == Graph(2, [(0, 1)])

    def test_cubic_m1_is_three_star(self):
        t = random_cubic_tree(1, 9)
        assert t.degree_sequence() == (3, 1, 1, 1)

    @settings(max_examples=60)
    @given(st.integers(min_value=0, max_value=12), st.integers(min_value=0, max_value=500))
    def test_cubic_degrees(self, m, seed):
        t = random_cubic_tree(m, seed)
        assert is_cubic_tree(t)
        assert t.n == 2 + 2 * m

    @settings(max_examples=40, deadline=None)
    @given(
        st.integers(min_value=2, max_value=4),
        st.integers(min_value=4, max_value=14),
        st.integers(min_value=0, max_value=200),
    )
    def test_expansion_base_validates(self, k, size, seed):
        base = random_expansion_base(k, size, seed)
        assert is_expansion_base(base, k)

    def test_expansion_base_deterministic(self):
        assert random_expansion_base(2, 8, 5) == random_expansion_base(2, 8, 5)

    def test_expansion_base_guards(self):
        with pytest.raises(ValueError):
            random_expansion_base(1, 8, 0)
        with pytest.raises(ValueError):
            random_expansion_base(2, 3, 0)


class TestFreeTrees:
    def test_counts_match_classical_table(self):
        for n, want in enumerate(FREE_TREE_COUNTS, start=1):
            assert sum(1 for _ in free_trees(n)) == want

    def test_pairwise_non_isomorphic(self):
        for n in range(1, 10):
            canons = [tree_canon(t) for t in free_trees(n)]
            assert len(set(canons)) == len(canons)

    def test_all_outputs_are_trees(self):
        for t in free_trees_upto(9):
            assert is_tree(t)


class TestPathsCycles:
    def test_stream(self):
        graphs = list(paths_and_cycles(5))
        # P2..P5 then C3..C5
        assert len(graphs) == 4 + 3
        assert graphs[0].num_edges == 1
        assert graphs[-1].num_edges == 5


class TestCorpusSpec:
    def test_identical_spec_identical_stream(self):
        spec = CorpusSpec("gnp", n=9, p=Fraction(1, 2), count=5, seed=11)
        assert list(spec.graphs()) == list(spec.graphs())

    def test_file_round_trip(self, tmp_path):
        from factorsmith.graphs import encode_graph6

        graphs = [random_gnp(7, Fraction(1, 2), s) for s in range(4)]
        path = tmp_path / "corpus.g6"
        path.write_text("".join(encode_graph6(g) + "\n" for g in graphs))
        spec = CorpusSpec("file", path=str(path))
        assert list(spec.graphs()) == graphs

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            list(CorpusSpec("bogus").graphs())
