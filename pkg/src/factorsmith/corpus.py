"""Graph corpora for theorem-scale verification runs.

Streams are deterministic: the random generators run on SplitMix64, a fixed,
documented 64-bit mixer, so a (spec, seed) pair reproduces the same graphs on
any machine.  Exhaustive enumeration is labeled (no isomorphism reduction);
the free-tree enumerator is the one exception, since the family recognizers
need every tree shape exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Iterator

from factorsmith.graphs import Graph, parse_graph6

EXHAUSTIVE_MAX_N = 7

_MIX_GAMMA = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64: x += gamma; z = mix(x).  Stable across platforms."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _MIX_GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randrange(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def chance(self, p: Fraction) -> bool:
        """True with probability exactly p."""
        return self.next_u64() * p.denominator < p.numerator << 64


@dataclass(frozen=True)
class CorpusSpec:
    """One corpus source.  kind selects the generator; unused fields are None.

    kinds: exhaustive(n), gnp(n, p, count, seed), trees(n, count, seed),
    paths_cycles(max_n), all_trees(max_n), file(path).
    """

    kind: str
    n: int | None = None
    p: Fraction | None = None
    count: int | None = None
    seed: int = 0
    path: str | None = None

    def graphs(self) -> Iterator[Graph]:
        if self.kind == "exhaustive":
            return enumerate_exhaustive(self.n)
        if self.kind == "gnp":
            return (random_gnp(self.n, self.p, self.seed + i) for i in range(self.count))
        if self.kind == "trees":
            return (random_tree(self.n, self.seed + i) for i in range(self.count))
        if self.kind == "paths_cycles":
            return paths_and_cycles(self.n)
        if self.kind == "all_trees":
            return free_trees_upto(self.n)
        if self.kind == "file":
            return read_graph6_file(self.path)
        raise ValueError(f"unknown corpus kind {self.kind!r}")


def enumerate_exhaustive(n: int) -> Iterator[Graph]:
    """All 2^(n(n-1)/2) labeled graphs on n vertices, each exactly once."""
    if not 1 <= n <= EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive enumeration supports 1 <= n <= {EXHAUSTIVE_MAX_N}")
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, (pairs[i] for i in range(len(pairs)) if mask >> i & 1))


def random_gnp(n: int, p: Fraction, seed: int) -> Graph:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability must be in [0,1], got {p}")
    rng = SplitMix64(seed)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.chance(p)]
    return Graph(n, edges)


def random_tree(n: int, seed: int) -> Graph:
    """Uniform-ish labeled tree via a random Pruefer sequence."""
    if n < 1:
        raise ValueError("tree needs at least one vertex")
    if n == 1:
        return Graph(1)
    if n == 2:
        return Graph(2, [(0, 1)])
    rng = SplitMix64(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    leaf_heap = sorted(v for v in range(n) if degree[v] == 1)
    import heapq

    heapq.heapify(leaf_heap)
    for x in seq:
        leaf = heapq.heappop(leaf_heap)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaf_heap, x)
    u = heapq.heappop(leaf_heap)
    v = heapq.heappop(leaf_heap)
    edges.append((u, v))
    return Graph(n, edges)


def random_cubic_tree(internal: int, seed: int) -> Graph:
    """Random tree with all degrees in {1, 3}: grow from an edge by attaching
    two fresh leaves to a random leaf, `internal` times."""
    if internal < 0:
        raise ValueError("internal vertex count must be non-negative")
    rng = SplitMix64(seed)
    edges = [(0, 1)]
    leaves = [0, 1]
    nxt = 2
    for _ in range(internal):
        idx = rng.randrange(len(leaves))
        v = leaves.pop(idx)
        edges.append((v, nxt))
        edges.append((v, nxt + 1))
        leaves.extend((nxt, nxt + 1))
        nxt += 2
    return Graph(nxt, edges)


def random_expansion_base(k: int, size: int, seed: int, max_attempts: int = 200) -> Graph:
    """Random tree valid as an expansion base for parameter k: the non-leaf
    core keeps odd degrees <= 2k+1 and every core vertex v obeys
    2*(attached leaves) + core-degree(v) <= 2k+1.

    `size` is the target vertex count (approximate; >= 4 required).
    """
    from factorsmith.families import is_expansion_base

    if k < 2:
        raise ValueError("expansion bases are defined for k >= 2")
    if size < 4:
        raise ValueError("smallest valid base has 4 vertices (2 core + 2 leaves)")
    rng = SplitMix64(seed)
    for _ in range(max_attempts):
        g = _grow_expansion_base(k, size, rng)
        if g is not None and is_expansion_base(g, k):
            return g
    raise RuntimeError(f"no valid expansion base found in {max_attempts} attempts")


def _grow_expansion_base(k: int, size: int, rng: SplitMix64) -> Graph | None:
    # Core grown by leaf pairs keeps all core degrees odd.
    core_edges = [(0, 1)]
    core_deg = {0: 1, 1: 1}
    nxt = 2
    while True:
        core_leaves = sum(1 for d in core_deg.values() if d == 1)
        # Every core leaf must receive at least one pendant leaf later.
        minimum_total = nxt + core_leaves
        if minimum_total + 3 > size or rng.randrange(3) == 0:
            break
        candidates = sorted(v for v, d in core_deg.items() if d + 2 <= 2 * k + 1)
        if not candidates:
            break
        v = candidates[rng.randrange(len(candidates))]
        core_edges.append((v, nxt))
        core_edges.append((v, nxt + 1))
        core_deg[v] += 2
        core_deg[nxt] = 1
        core_deg[nxt + 1] = 1
        nxt += 2
    edges = list(core_edges)
    total = nxt
    budget = size - nxt
    for v in range(nxt):
        cap = (2 * k + 1 - core_deg[v]) // 2
        need = 1 if core_deg[v] == 1 else 0
        if cap < need:
            return None
        extra = min(cap - need, max(budget - need, 0))
        count = need + (rng.randrange(extra + 1) if extra > 0 else 0)
        budget -= count
        for _ in range(count):
            edges.append((v, total))
            total += 1
    return Graph(total, edges)


def paths_and_cycles(max_n: int) -> Iterator[Graph]:
    """P2..P_max_n then C3..C_max_n."""
    if max_n < 2:
        raise ValueError("need max_n >= 2")
    for n in range(2, max_n + 1):
        yield Graph(n, [(i, i + 1) for i in range(n - 1)])
    for n in range(3, max_n + 1):
        yield Graph(n, [(i, (i + 1) % n) for i in range(n)])


def read_graph6_file(path: str) -> Iterator[Graph]:
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield parse_graph6(line)


# --- non-isomorphic free trees ----------------------------------------------
#
# Rooted shapes are canonical nested tuples (children sorted descending by
# (size, shape)).  A free tree is counted once: rooted at its unique centroid,
# or as an unordered pair of half-shapes joined at a bicentroid edge.

_Shape = tuple  # recursive tuple of child shapes


def _shape_size(shape: _Shape) -> int:
    return 1 + sum(_shape_size(c) for c in shape)


def _rooted_shapes(n: int, cache: dict[int, list[_Shape]]) -> list[_Shape]:
    if n in cache:
        return cache[n]
    if n == 1:
        cache[1] = [()]
        return cache[1]
    # universe of smaller shapes, ordered descending by (size, shape)
    universe: list[tuple[int, _Shape]] = []
    for s in range(n - 1, 0, -1):
        universe.extend((s, sh) for sh in _rooted_shapes(s, cache))
    out: list[_Shape] = []

    def rec(start: int, remaining: int, acc: list[_Shape]) -> None:
        if remaining == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(universe)):
            s, sh = universe[i]
            if s > remaining:
                continue
            acc.append(sh)
            rec(i, remaining - s, acc)
            acc.pop()

    rec(0, n - 1, [])
    cache[n] = out
    return out


def _shape_to_graph(shape: _Shape, extra_root: _Shape | None = None) -> Graph:
    edges: list[tuple[int, int]] = []
    counter = [1]

    def build(sub: _Shape, parent: int) -> None:
        for child in sub:
            cid = counter[0]
            counter[0] += 1
            edges.append((parent, cid))
            build(child, cid)

    build(shape, 0)
    if extra_root is not None:
        rid = counter[0]
        counter[0] += 1
        edges.append((0, rid))
        build(extra_root, rid)
    return Graph(counter[0], edges)


def free_trees(n: int) -> Iterator[Graph]:
    """All free (unlabeled) trees on n vertices, one per isomorphism class."""
    if n < 1:
        raise ValueError("need n >= 1")
    cache: dict[int, list[_Shape]] = {}
    if n == 1:
        yield Graph(1)
        return
    half = (n - 1) // 2
    for shape in _rooted_shapes(n, cache):
        if all(_shape_size(c) <= half for c in shape):
            yield _shape_to_graph(shape)
    if n % 2 == 0:
        halves = _rooted_shapes(n // 2, cache)
        for a, b in combinations_with_replacement(range(len(halves)), 2):
            yield _shape_to_graph(halves[a], extra_root=halves[b])


def free_trees_upto(max_n: int) -> Iterator[Graph]:
    for n in range(1, max_n + 1):
        yield from free_trees(n)
