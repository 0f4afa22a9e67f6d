"""Graph primitives, graph6 round trips, edge lists, doubling, DOT."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factorsmith.corpus import enumerate_exhaustive
from factorsmith.graphs import (
    Graph,
    GraphFormatError,
    double,
    encode_graph6,
    format_edge_list,
    parse_edge_list,
    parse_graph6,
    to_dot,
)


def reference_encode_graph6(g: Graph) -> str:
    """Independent straight-from-the-format encoder used as the oracle."""
    bits = ""
    for j in range(1, g.n):
        for i in range(j):
            bits += "1" if g.has_edge(i, j) else "0"
    while len(bits) % 6:
        bits += "0"
    out = chr(g.n + 63)
    for i in range(0, len(bits), 6):
        out += chr(int(bits[i : i + 6], 2) + 63)
    return out


def graphs_strategy(max_n=12):
    @st.composite
    def build(draw):
        n = draw(st.integers(min_value=0, max_value=max_n))
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        mask = draw(st.integers(min_value=0, max_value=(1 << len(pairs)) - 1))
        return Graph(n, (p for i, p in enumerate(pairs) if mask >> i & 1))

    return build()


K2 = Graph(2, [(0, 1)])
P3 = Graph(3, [(0, 1), (1, 2)])
C3 = Graph(3, [(0, 1), (1, 2), (0, 2)])


class TestGraph:
    def test_dedupes_parallel_edges(self):
        g = Graph(2, [(0, 1), (1, 0)])
        assert g.num_edges == 1

    def test_rejects_loops_and_out_of_range(self):
        with pytest.raises(ValueError):
            Graph(2, [(0, 0)])
        with pytest.raises(ValueError):
            Graph(2, [(0, 2)])

    def test_degrees_and_neighbors(self):
        star = Graph(4, [(0, 1), (0, 2), (0, 3)])
        assert star.degree(0) == 3
        assert list(star.neighbors(0)) == [1, 2, 3]
        assert star.degree_sequence() == (3, 1, 1, 1)


class TestGraph6:
    @pytest.mark.parametrize(
        "text,graph",
        [("A_", K2), ("Bw", C3), ("@", Graph(1))],
    )
    def test_parse_known(self, text, graph):
        assert parse_graph6(text) == graph

    @pytest.mark.parametrize(
        "graph,text",
        [(K2, "A_"), (P3, "Bg"), (Graph(1), "@")],
    )
    def test_encode_known(self, graph, text):
        assert encode_graph6(graph) == text
        assert reference_encode_graph6(graph) == text

    def test_round_trip_exhaustive_small(self):
        for n in range(1, 5):
            for g in enumerate_exhaustive(n):
                assert parse_graph6(encode_graph6(g)) == g
                assert encode_graph6(g) == reference_encode_graph6(g)

    @settings(max_examples=200)
    @given(graphs_strategy(max_n=14))
    def test_round_trip_random(self, g):
        if g.n == 0:
            return
        assert parse_graph6(encode_graph6(g)) == g
        assert encode_graph6(g) == reference_encode_graph6(g)

    def test_header_prefix_stripped(self):
        assert parse_graph6(">>graph6<<A_") == K2

    @pytest.mark.parametrize(
        "bad",
        [
            "",  # empty
            ":Bw",  # sparse6
            "&A_",  # digraph6
            "~~~",  # long form
            "B",  # truncated body
            "Bw_",  # trailing data
            "B\x1f",  # out-of-range byte
        ],
    )
    def test_malformed_rejected(self, bad):
        with pytest.raises(GraphFormatError):
            parse_graph6(bad)

    def test_nonzero_padding_rejected(self):
        # n=2 needs 1 bit; the remaining 5 padding bits must be zero
        with pytest.raises(GraphFormatError):
            parse_graph6("A" + chr(63 + 0b111111))

    def test_encode_rejects_large(self):
        with pytest.raises(ValueError):
            encode_graph6(Graph(63))


class TestEdgeList:
    def test_basic(self):
        assert parse_edge_list("n 3\n0 1\n1 2") == P3

    def test_duplicate_collapsed(self):
        assert parse_edge_list("n 2\n0 1\n1 0") == K2

    def test_isolated_preserved_via_header(self):
        g = parse_edge_list("n 4\n0 1")
        assert g.n == 4 and g.num_edges == 1

    def test_no_header_infers_n(self):
        assert parse_edge_list("0 1\n1 2") == P3

    def test_self_loop_rejected(self):
        with pytest.raises(GraphFormatError):
            parse_edge_list("n 2\n1 1")

    def test_out_of_range_rejected(self):
        with pytest.raises(GraphFormatError):
            parse_edge_list("n 2\n0 5")

    def test_round_trip(self):
        for n in range(1, 5):
            for g in enumerate_exhaustive(n):
                assert parse_edge_list(format_edge_list(g)) == g


class TestDouble:
    def test_k2(self):
        m = double(K2)
        assert m.groups == ((0, 1, 2),)
        assert m.degrees() == [2, 2]

    def test_c3(self):
        m = double(C3)
        assert m.edge_copy_count == 6
        assert m.degrees() == [4, 4, 4]

    def test_edgeless(self):
        m = double(Graph(5))
        assert m.n == 5 and m.edge_copy_count == 0

    @settings(max_examples=100)
    @given(graphs_strategy(max_n=10))
    def test_degree_doubling_pointwise(self, g):
        m = double(g)
        assert m.edge_copy_count == 2 * g.num_edges
        assert m.degrees() == [2 * g.degree(v) for v in range(g.n)]


class TestDot:
    def test_plain(self):
        out = to_dot(K2)
        assert "0 -- 1" in out and out.startswith("graph G {")

    def test_colored_p5(self):
        from factorsmith.factors import HalfIntegralAssignment
        from factorsmith.reducer import from_assignment

        p5 = Graph(5, [(i, i + 1) for i in range(4)])
        h = HalfIntegralAssignment(p5, {(0, 1): 2, (1, 2): 1, (2, 3): 1, (3, 4): 2})
        colored = from_assignment(p5, 1, h)
        out = to_dot(p5, highlight=colored)
        assert out.count("color=red") == 2
        assert out.count("color=blue") == 2

    def test_all_blue_c3(self):
        from factorsmith.factors import HalfIntegralAssignment
        from factorsmith.reducer import from_assignment

        h = HalfIntegralAssignment(C3, {e: 1 for e in C3.edges})
        out = to_dot(C3, highlight=from_assignment(C3, 1, h))
        assert out.count("color=blue") == 3

    def test_highlight_foreign_edge_rejected(self):
        class Fake:
            red = {(0, 2)}
            blue = set()

        with pytest.raises(ValueError):
            to_dot(P3, highlight=Fake())
