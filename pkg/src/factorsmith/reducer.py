"""Terminating rewrite engine that shrinks a red/blue factor to family form.

A colored factor carries a half-integral edge weighting: red = weight 1,
blue = weight 1/2.  Each rewrite deletes at least one edge and preserves the
[1, k+1/2] vertex window, so the loop runs at most ||G|| steps.  At the
fixpoint every component classifies into the target family; a component that
does not is an implementation bug and raises loudly (with an exhaustive
minimal-assignment recheck attached when the graph is small enough), never a
silent skip.

Rule scheduling is deterministic: catalogs are scanned in a fixed order and,
within a rule, the candidate with the smallest sorted vertex tuple fires.
Order is load-bearing in one place: the odd-cycle branch rule assumes no two
branch vertices are adjacent, which holds because the branch-edge deletion
rule precedes it in both catalogs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product

from factorsmith.families import (
    ComponentClass,
    Family,
    classify_component,
)
from factorsmith.factors import HalfIntegralAssignment, find_fractional_factor, verify_fractional
from factorsmith.graphs import Graph, edge

logger = logging.getLogger("factorsmith.reducer")

# every intermediate state is re-validated; cheap at desk scale
VALIDATE_STEPS = True

EXHAUSTIVE_RECHECK_EDGE_LIMIT = 16


class ReducerError(RuntimeError):
    pass


class InvalidColoredFactor(ReducerError):
    """A rewrite produced a state violating the vertex half-degree window."""


class FixpointUnclassified(ReducerError):
    """A fixpoint component fell outside the target family.

    The theorems guarantee this never happens; raising it means the rule
    engine is wrong.  Carries the offending state and, for small graphs, the
    verdict of an exhaustive minimal-assignment search for comparison.
    """

    def __init__(self, message: str, factor: "ColoredFactor", exhaustive_report: str):
        super().__init__(f"{message}; exhaustive recheck: {exhaustive_report}")
        self.factor = factor
        self.exhaustive_report = exhaustive_report


@dataclass
class ColoredFactor:
    """Spanning subgraph with red (weight 1) and blue (weight 1/2) edges."""

    base: Graph
    k: int
    red: set[tuple[int, int]]
    blue: set[tuple[int, int]]

    def copy(self) -> "ColoredFactor":
        return ColoredFactor(self.base, self.k, set(self.red), set(self.blue))

    def edge_count(self) -> int:
        return len(self.red) + len(self.blue)

    def half_units(self) -> list[int]:
        units = [0] * self.base.n
        for u, v in self.red:
            units[u] += 2
            units[v] += 2
        for u, v in self.blue:
            units[u] += 1
            units[v] += 1
        return units

    def validate(self) -> None:
        if self.red & self.blue:
            raise InvalidColoredFactor(f"edges both red and blue: {sorted(self.red & self.blue)}")
        base_edges = set(self.base.edges)
        for e in self.red | self.blue:
            if e not in base_edges:
                raise InvalidColoredFactor(f"factor edge {e} not in base graph")
        for v, units in enumerate(self.half_units()):
            if not 2 <= units <= 2 * self.k + 1:
                raise InvalidColoredFactor(
                    f"vertex {v} has h-degree {units}/2, outside [1, {2 * self.k + 1}/2]"
                )


@dataclass(frozen=True)
class RuleStep:
    rule: str
    location: tuple[int, ...]
    removed: tuple[tuple[int, int], ...]
    recolored: tuple[tuple[tuple[int, int], str], ...]

    def to_line(self) -> str:
        rem = ",".join(f"{u}-{v}" for u, v in self.removed)
        rec = ",".join(f"{u}-{v}:{c}" for (u, v), c in self.recolored)
        loc = ",".join(map(str, self.location))
        return f"{self.rule} loc=({loc}) removed=[{rem}] recolored=[{rec}]"


@dataclass
class RuleTrace:
    steps: list[RuleStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def to_text(self) -> str:
        return "\n".join(s.to_line() for s in self.steps) + ("\n" if self.steps else "")


@dataclass(frozen=True)
class ComponentEntry:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    cls: ComponentClass


@dataclass(frozen=True)
class FactorCertificate:
    family: Family
    components: tuple[ComponentEntry, ...]


def from_assignment(g: Graph, k: int, h: HalfIntegralAssignment) -> ColoredFactor:
    """Split a verified assignment into red (weight 1) / blue (weight 1/2)."""
    if not verify_fractional(g, k, h):
        raise ValueError("assignment does not verify at this parameter")
    red = {e for e, units in h.units.items() if units == 2}
    blue = {e for e, units in h.units.items() if units == 1}
    return ColoredFactor(g, k, red, blue)


# --- structural scans ---------------------------------------------------------


class _State:
    """Per-iteration view of the factor: adjacency, degrees, blocks, chains."""

    def __init__(self, f: ColoredFactor):
        self.f = f
        n = f.base.n
        self.n = n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in f.red | f.blue:
            self.adj[u].append(v)
            self.adj[v].append(u)
        for lst in self.adj:
            lst.sort()
        self.deg = [len(a) for a in self.adj]

    def is_red(self, u: int, v: int) -> bool:
        return edge(u, v) in self.f.red

    def half_units(self, v: int) -> int:
        total = 0
        for w in self.adj[v]:
            total += 2 if self.is_red(v, w) else 1
        return total

    # -- biconnected blocks (edge partitions) --

    def blocks(self) -> list[tuple[set[int], list[tuple[int, int]]]]:
        import sys

        n = self.n
        if 2 * n + 100 > sys.getrecursionlimit():
            sys.setrecursionlimit(2 * n + 1000)
        disc = [-1] * n
        low = [0] * n
        stack: list[tuple[int, int]] = []
        out: list[tuple[set[int], list[tuple[int, int]]]] = []
        timer = [0]

        def dfs(u: int, parent: int) -> None:
            disc[u] = low[u] = timer[0]
            timer[0] += 1
            for v in self.adj[u]:
                if v == parent:
                    continue
                if disc[v] == -1:
                    stack.append((u, v))
                    dfs(v, u)
                    if low[v] < low[u]:
                        low[u] = low[v]
                    if low[v] >= disc[u]:
                        comp: list[tuple[int, int]] = []
                        while True:
                            e = stack.pop()
                            comp.append(e)
                            if e == (u, v):
                                break
                        verts = {x for ed in comp for x in ed}
                        out.append((verts, comp))
                elif disc[v] < disc[u]:
                    stack.append((u, v))
                    if disc[v] < low[u]:
                        low[u] = disc[v]

        for s in range(n):
            if disc[s] == -1 and self.deg[s] > 0:
                dfs(s, -1)
        return out

    def cycle_blocks(self) -> list[list[int]]:
        """Blocks that are single cycles, as ordered vertex lists starting at
        the smallest vertex, moving toward its smaller cycle neighbour."""
        cycles = []
        for verts, comp_edges in self.blocks():
            if len(comp_edges) == len(verts) and len(verts) >= 3:
                cycles.append(_order_cycle(verts, comp_edges))
        cycles.sort()
        return cycles

    def find_even_cycle(self) -> list[int] | None:
        """Some even cycle of the factor, or None.  Blocks that are single even
        cycles qualify directly; a block with extra edges always contains an
        even cycle (an ear over any odd cycle closes one)."""
        best: list[int] | None = None
        for verts, comp_edges in sorted(self.blocks(), key=lambda b: min(b[0])):
            if len(comp_edges) == len(verts) and len(verts) >= 3:
                if len(verts) % 2 == 0:
                    cyc = _order_cycle(verts, comp_edges)
                    if best is None or cyc < best:
                        best = cyc
            elif len(comp_edges) > len(verts):
                cyc = _even_cycle_in_block(verts, comp_edges)
                if best is None or cyc < best:
                    best = cyc
        return best

    # -- degree-2 chains --

    def chains(self):
        """Maximal chains (a, interior, b) with interior all degree 2 and both
        endpoints of degree != 2; every degree-2 vertex of a non-cycle part is
        interior to exactly one chain.  Endpoints may coincide only through
        distinct interiors (not possible in the tree-like parts we scan)."""
        seen: set[tuple] = set()
        out = []
        for a in range(self.n):
            if self.deg[a] == 2 or self.deg[a] == 0:
                continue
            for first in self.adj[a]:
                prev, cur = a, first
                interior: list[int] = []
                while self.deg[cur] == 2:
                    interior.append(cur)
                    nxt = next(w for w in self.adj[cur] if w != prev)
                    prev, cur = cur, nxt
                key = (min(a, cur), max(a, cur), tuple(sorted(interior)))
                if key in seen:
                    continue
                seen.add(key)
                out.append((a, interior, cur))
        return out

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = []
            stack = [s]
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps


def _order_cycle(verts: set[int], comp_edges: list[tuple[int, int]]) -> list[int]:
    nbr: dict[int, list[int]] = {v: [] for v in verts}
    for u, v in comp_edges:
        nbr[u].append(v)
        nbr[v].append(u)
    start = min(verts)
    cur = min(nbr[start])
    order = [start, cur]
    prev = start
    while len(order) < len(verts):
        nxt = next(w for w in nbr[cur] if w != prev)
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def _even_cycle_in_block(verts: set[int], comp_edges: list[tuple[int, int]]) -> list[int]:
    """Even cycle inside a 2-connected block with more edges than vertices."""
    nbr: dict[int, list[int]] = {v: [] for v in verts}
    eset = set()
    for u, v in comp_edges:
        nbr[u].append(v)
        nbr[v].append(u)
        eset.add(edge(u, v))
    for v in nbr:
        nbr[v].sort()
    # fundamental cycles from a DFS tree; return the first even one
    root = min(verts)
    parent = {root: None}
    depth = {root: 0}
    order = [root]
    stack = [root]
    while stack:
        v = stack.pop()
        for w in nbr[v]:
            if w not in parent:
                parent[w] = v
                depth[w] = depth[v] + 1
                order.append(w)
                stack.append(w)
    tree_edges = {edge(v, p) for v, p in parent.items() if p is not None}
    fallback: list[int] | None = None
    for u, v in sorted(eset - tree_edges):
        cyc = _tree_cycle(u, v, parent, depth)
        if len(cyc) % 2 == 0:
            return cyc
        if fallback is None:
            fallback = cyc
    # all fundamental cycles odd: attach an ear over one of them
    assert fallback is not None
    cyc = fallback
    on_cycle = set(cyc)
    cyc_edges = {edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))}
    for a in sorted(on_cycle):
        path = _ear_from(a, on_cycle, cyc_edges, nbr)
        if path is None:
            continue
        b = path[-1]
        ia, ib = cyc.index(a), cyc.index(b)
        if ia > ib:
            ia, ib = ib, ia
            path = list(reversed(path))
        # path now runs cyc[ia] .. cyc[ib]; splice it with each arc of the
        # cycle.  The two candidate cycles have lengths of opposite parity,
        # so exactly one is even.
        arc1 = cyc[ia : ib + 1]  # cyc[ia] -> cyc[ib] forward
        arc2 = cyc[ib:] + cyc[: ia + 1]  # cyc[ib] -> around -> cyc[ia]
        ear_interior = path[1:-1]
        cand1 = arc1 + list(reversed(ear_interior))  # ..ib, ear back to ia
        cand2 = arc2 + ear_interior  # ..ia, ear forward to ib
        for cand in (cand1, cand2):
            if len(cand) % 2 == 0:
                return cand
    raise AssertionError("block with extra edges must contain an even cycle")


def _tree_cycle(u: int, v: int, parent: dict, depth: dict) -> list[int]:
    pu, pv = [u], [v]
    a, b = u, v
    while depth[a] > depth[b]:
        a = parent[a]
        pu.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        pv.append(b)
    while a != b:
        a = parent[a]
        b = parent[b]
        pu.append(a)
        pv.append(b)
    return pu[:-1] + list(reversed(pv))


def _ear_from(a: int, on_cycle: set[int], cyc_edges: set, nbr: dict) -> list[int] | None:
    """Shortest path from a back to the cycle avoiding cycle edges and not
    passing through cycle vertices; None if this start vertex has no ear."""
    from collections import deque

    prev = {a: None}
    q = deque([a])
    while q:
        v = q.popleft()
        for w in nbr[v]:
            if v in on_cycle and w in on_cycle and edge(v, w) in cyc_edges:
                continue
            if w in prev:
                continue
            prev[w] = v
            if w in on_cycle:
                if w != a:
                    path = [w]
                    while path[-1] is not None:
                        path.append(prev[path[-1]])
                    path.pop()
                    return list(reversed(path))
                continue
            q.append(w)
    return None


# --- rewrites -----------------------------------------------------------------


@dataclass(frozen=True)
class _Rewrite:
    rule: str
    location: tuple[int, ...]
    remove: frozenset[tuple[int, int]]
    make_red: frozenset[tuple[int, int]]
    make_blue: frozenset[tuple[int, int]]


def _apply(f: ColoredFactor, rw: _Rewrite) -> RuleStep:
    recolored = []
    for e in sorted(rw.remove):
        f.red.discard(e)
        f.blue.discard(e)
    for e in sorted(rw.make_red):
        if e not in f.red:
            recolored.append((e, "red"))
        f.blue.discard(e)
        f.red.add(e)
    for e in sorted(rw.make_blue):
        if e not in f.blue:
            recolored.append((e, "blue"))
        f.red.discard(e)
        f.blue.add(e)
    return RuleStep(rw.rule, rw.location, tuple(sorted(rw.remove)), tuple(recolored))


def _cycle_matching_rewrite(rule: str, cycle: list[int]) -> _Rewrite:
    """Even cycle: keep alternate edges as a red perfect matching, drop the rest."""
    m = len(cycle)
    keep = set()
    drop = set()
    for i in range(m):
        e = edge(cycle[i], cycle[(i + 1) % m])
        (keep if i % 2 == 0 else drop).add(e)
    return _Rewrite(rule, tuple(cycle), frozenset(drop), frozenset(keep), frozenset())


def _odd_cycle_branch_rewrite(rule: str, cycle: list[int], v: int) -> _Rewrite:
    """Odd cycle with a branch vertex v: perfectly match the path C - v in red,
    drop the unmatched path edges and the edge from v to its larger neighbour."""
    m = len(cycle)
    i = cycle.index(v)
    path = cycle[i + 1 :] + cycle[:i]  # C - v in cycle order
    n1, n2 = path[0], path[-1]
    u1, u2 = (n1, n2) if n1 < n2 else (n2, n1)
    if path[0] != u1:
        path = list(reversed(path))
    keep = set()
    drop = {edge(v, u2)}
    for j in range(len(path) - 1):
        e = edge(path[j], path[j + 1])
        (keep if j % 2 == 0 else drop).add(e)
    return _Rewrite(rule, (v,) + tuple(path), frozenset(drop), frozenset(keep), frozenset())


def _path_cover_rewrite(rule: str, order: list[int], use_p5: bool) -> _Rewrite:
    """Cover an ordered vertex run with either a leading P5 plus P2s (weights
    1,1/2,1/2,1 on the P5) or a leading P3 plus P2s, everything else red."""
    kept_red = set()
    kept_blue = set()
    if use_p5:
        a, b, c, d, e5 = order[:5]
        kept_red |= {edge(a, b), edge(d, e5)}
        kept_blue |= {edge(b, c), edge(c, d)}
        rest = order[5:]
    else:
        a, b, c = order[:3]
        kept_red |= {edge(a, b), edge(b, c)}
        rest = order[3:]
    for i in range(0, len(rest), 2):
        kept_red.add(edge(rest[i], rest[i + 1]))
    return _Rewrite(rule, tuple(order), frozenset(), frozenset(kept_red), frozenset(kept_blue))


def _finish_cover(f: ColoredFactor, rw: _Rewrite, all_edges: set) -> _Rewrite:
    drop = frozenset(all_edges - set(rw.make_red) - set(rw.make_blue))
    return _Rewrite(rw.rule, rw.location, drop, rw.make_red, rw.make_blue)


# --- rule catalogs ------------------------------------------------------------


def _find_rewrite_k1(st: _State) -> _Rewrite | None:
    f = st.f
    # R1: even cycle -> red perfect matching
    cyc = st.find_even_cycle()
    if cyc is not None:
        return _cycle_matching_rewrite("R1", cyc)
    # R2: adjacent branch vertices -> delete the joining edge
    for u, v in sorted(f.red | f.blue):
        if st.deg[u] >= 3 and st.deg[v] >= 3:
            return _Rewrite("R2", (u, v), frozenset({edge(u, v)}), frozenset(), frozenset())
    cycles = st.cycle_blocks()
    # R3: odd cycle through a branch vertex
    for cyc_v in cycles:
        branch = sorted(v for v in cyc_v if st.deg[v] >= 3)
        if branch:
            return _odd_cycle_branch_rewrite("R3", cyc_v, branch[0])
    # R4: odd cycle component of length >= 5 -> spanning {P2, P5} cover
    for cyc_v in cycles:
        if len(cyc_v) >= 5 and all(st.deg[v] == 2 for v in cyc_v):
            cyc_edges = {edge(cyc_v[i], cyc_v[(i + 1) % len(cyc_v)]) for i in range(len(cyc_v))}
            rw = _path_cover_rewrite("R4", cyc_v, use_p5=True)
            return _finish_cover(f, rw, cyc_edges)
    chains = sorted(st.chains(), key=lambda ch: tuple(sorted((ch[0], ch[2], *ch[1]))))
    # R5: branch..branch chain with >= 2 interior vertices
    for a, interior, b in chains:
        if st.deg[a] == 3 and st.deg[b] == 3 and len(interior) >= 2 and a != b:
            x, y = (a, b) if a < b else (b, a)
            path = [x] + (interior if a < b else list(reversed(interior))) + [y]
            un, un1 = path[-2], path[-3]
            drop = {edge(un, y)}
            make_red = {edge(un1, un)}
            make_blue = {edge(path[i], path[i + 1]) for i in range(len(path) - 3)}
            return _Rewrite("R5", tuple(path), frozenset(drop), frozenset(make_red), frozenset(make_blue))
    # R6: leaf..branch chain, interior length 1 or >= 3
    for a, interior, b in chains:
        ends = sorted((st.deg[a], st.deg[b]))
        if ends != [1, 3]:
            continue
        z, x = (a, b) if st.deg[a] == 1 else (b, a)
        path = [z] + (interior if a == z else list(reversed(interior))) + [x]
        n = len(interior)
        if n == 1:
            return _Rewrite("R6", tuple(path), frozenset({edge(path[1], x)}), frozenset(), frozenset())
        if n >= 3:
            drop = {edge(path[-2], x)}
            make_red = {edge(path[-3], path[-2])}
            make_blue = {edge(path[i], path[i + 1]) for i in range(1, len(path) - 3)}
            return _Rewrite("R6", tuple(path), frozenset(drop), frozenset(make_red), frozenset(make_blue))
    # R7/R8: path components
    for comp in st.components():
        if any(st.deg[v] != 2 and st.deg[v] != 1 for v in comp):
            continue
        leaves = [v for v in comp if st.deg[v] == 1]
        if len(leaves) != 2 or len(comp) < 4:
            continue
        order = _walk_path(st, min(leaves))
        comp_edges = {edge(order[i], order[i + 1]) for i in range(len(order) - 1)}
        if len(comp) % 2 == 0:
            # P2-cover of an even path
            keep = {edge(order[i], order[i + 1]) for i in range(0, len(order) - 1, 2)}
            rw = _Rewrite("R7", tuple(order), frozenset(), frozenset(keep), frozenset())
            return _finish_cover(f, rw, comp_edges)
        if len(comp) >= 7:
            rw = _path_cover_rewrite("R8", order, use_p5=True)
            return _finish_cover(f, rw, comp_edges)
    return None


def _find_rewrite_k2plus(st: _State) -> _Rewrite | None:
    f = st.f
    k = f.k
    # S1: even cycle
    cyc = st.find_even_cycle()
    if cyc is not None:
        return _cycle_matching_rewrite("S1", cyc)
    # S2: adjacent branch vertices
    for u, v in sorted(f.red | f.blue):
        if st.deg[u] >= 3 and st.deg[v] >= 3:
            return _Rewrite("S2", (u, v), frozenset({edge(u, v)}), frozenset(), frozenset())
    cycles = st.cycle_blocks()
    # S3: odd cycle through a branch vertex
    for cyc_v in cycles:
        branch = sorted(v for v in cyc_v if st.deg[v] >= 3)
        if branch:
            return _odd_cycle_branch_rewrite("S3", cyc_v, branch[0])
    # S4: odd cycle component -> spanning {P2, P3} cover, all red
    for cyc_v in cycles:
        if all(st.deg[v] == 2 for v in cyc_v):
            cyc_edges = {edge(cyc_v[i], cyc_v[(i + 1) % len(cyc_v)]) for i in range(len(cyc_v))}
            rw = _path_cover_rewrite("S4", cyc_v, use_p5=False)
            return _finish_cover(f, rw, cyc_edges)
    chains = sorted(st.chains(), key=lambda ch: tuple(sorted((ch[0], ch[2], *ch[1]))))
    # S5: branch..branch chain with >= 2 interior vertices
    for a, interior, b in chains:
        if st.deg[a] >= 3 and st.deg[b] >= 3 and len(interior) >= 2 and a != b:
            x, y = (a, b) if a < b else (b, a)
            path = [x] + (interior if a < b else list(reversed(interior))) + [y]
            drop = {edge(path[-2], y)}
            make_red = {edge(path[-3], path[-2])}
            make_blue = {edge(path[i], path[i + 1]) for i in range(len(path) - 3)}
            return _Rewrite("S5", tuple(path), frozenset(drop), frozenset(make_red), frozenset(make_blue))
    # S6: branch-u-branch gap of length two
    for a, interior, b in chains:
        if st.deg[a] >= 3 and st.deg[b] >= 3 and len(interior) == 1 and a != b:
            u1 = interior[0]
            for x, y in sorted(((a, b), (b, a))):
                if st.half_units(x) < 2 * k + 1:
                    return _Rewrite(
                        "S6",
                        (x, u1, y),
                        frozenset({edge(u1, y)}),
                        frozenset({edge(x, u1)}),
                        frozenset(),
                    )
                if st.is_red(x, u1):
                    return _Rewrite(
                        "S6", (x, u1, y), frozenset({edge(u1, y)}), frozenset(), frozenset()
                    )
    # S7: leaf chains
    s7: list[tuple[tuple, _Rewrite]] = []
    for comp in st.components():
        leaves = [v for v in comp if st.deg[v] == 1]
        if len(leaves) == 2 and all(st.deg[v] <= 2 for v in comp) and len(comp) >= 4:
            order = _walk_path(st, min(leaves))
            nxt_red = edge(order[2], order[3])
            rw = _Rewrite(
                "S7",
                tuple(order),
                frozenset({edge(order[1], order[2])}),
                frozenset({nxt_red}),
                frozenset(),
            )
            s7.append((tuple(sorted(comp)), rw))
    for a, interior, b in st.chains():
        ends = sorted((st.deg[a], st.deg[b]))
        if ends[0] != 1 or ends[1] < 3:
            continue
        z, x = (a, b) if st.deg[a] == 1 else (b, a)
        path = [z] + (interior if a == z else list(reversed(interior))) + [x]
        n = len(interior)
        if n == 1:
            rw = _Rewrite("S7", tuple(path), frozenset({edge(path[1], x)}), frozenset(), frozenset())
            s7.append((tuple(sorted(path)), rw))
        elif n >= 2:
            drop = {edge(path[-2], x)}
            make_red = {edge(path[-3], path[-2]), edge(z, path[1])}
            make_blue = {edge(path[i], path[i + 1]) for i in range(1, len(path) - 3)}
            rw = _Rewrite("S7", tuple(path), frozenset(drop), frozenset(make_red), frozenset(make_blue))
            s7.append((tuple(sorted(path)), rw))
    if s7:
        s7.sort(key=lambda item: item[0])
        return s7[0][1]
    # S8: branch-mid edge with slack at the branch and a degree-2 continuation
    for u in range(st.n):
        if st.deg[u] < 3 or st.half_units(u) >= 2 * k + 1:
            continue
        for v in st.adj[u]:
            if st.deg[v] != 2:
                continue
            z1 = next(w for w in st.adj[v] if w != u)
            if st.deg[z1] == 2:
                return _Rewrite(
                    "S8",
                    (u, v, z1),
                    frozenset({edge(u, v)}),
                    frozenset({edge(v, z1)}),
                    frozenset(),
                )
    # S9: red edge with no leaf endpoint
    for u, v in sorted(f.red):
        du, dv = st.deg[u], st.deg[v]
        if du == 1 or dv == 1:
            continue
        if du >= 3 and dv >= 3:
            return _Rewrite("S9", (u, v), frozenset({edge(u, v)}), frozenset(), frozenset())
        for x, y in ((u, v), (v, u)):
            if st.deg[x] == 2:
                z1 = next(w for w in st.adj[x] if w != y)
                if st.deg[z1] >= 3:
                    return _Rewrite(
                        "S9", (x, y, z1), frozenset({edge(x, z1)}), frozenset(), frozenset()
                    )
    return None


def _walk_path(st: _State, start: int) -> list[int]:
    order = [start]
    prev = -1
    cur = start
    while True:
        nxts = [w for w in st.adj[cur] if w != prev]
        if not nxts:
            return order
        prev, cur = cur, nxts[0]
        order.append(cur)


# --- driver ---------------------------------------------------------------------


def minimize(factor: ColoredFactor) -> tuple[ColoredFactor, RuleTrace]:
    """Rewrite to a fixpoint.  Each step removes at least one edge, so at most
    ||G|| steps run; every intermediate state is validated and a violation
    aborts loudly (it would mean a rule fired outside its guard)."""
    f = factor.copy()
    f.validate()
    trace = RuleTrace()
    budget = f.base.num_edges
    find = _find_rewrite_k1 if f.k == 1 else _find_rewrite_k2plus
    while True:
        st = _State(f)
        rw = find(st)
        if rw is None:
            break
        before = f.edge_count()
        step = _apply(f, rw)
        if f.edge_count() >= before:
            raise ReducerError(f"rule {rw.rule} did not remove an edge at {rw.location}")
        if VALIDATE_STEPS:
            f.validate()
        trace.steps.append(step)
        logger.debug("%s", step.to_line())
        if len(trace) > budget:
            raise ReducerError("rewrite count exceeded the edge budget; non-termination bug")
    return f, trace


def extract_component_factor(g: Graph, k: int) -> FactorCertificate | None:
    """None iff no half-integral [1, k+1/2] assignment exists; otherwise a
    certificate whose components all lie in the target family."""
    cert, _, _ = extract_component_factor_detailed(g, k)
    return cert


def extract_component_factor_detailed(
    g: Graph, k: int
) -> tuple[FactorCertificate | None, HalfIntegralAssignment | None, RuleTrace | None]:
    h = find_fractional_factor(g, k)
    if h is None:
        return None, None, None
    f0 = from_assignment(g, k, h)
    f, trace = minimize(f0)
    family = Family.for_k(k)
    entries = []
    st = _State(f)
    factor_edges = f.red | f.blue
    for comp in st.components():
        index = {v: i for i, v in enumerate(comp)}
        comp_edges = sorted(e for e in factor_edges if e[0] in index and e[1] in index)
        sub = Graph(len(comp), [(index[u], index[v]) for u, v in comp_edges])
        cls = classify_component(sub, family)
        entries.append(ComponentEntry(tuple(comp), tuple(comp_edges), cls))
    bad = [e for e in entries if e.cls.kind == "other"]
    if bad:
        report = _exhaustive_recheck(g, k, family)
        raise FixpointUnclassified(
            f"fixpoint component {bad[0].vertices} is outside family {family.kind}(k={k})",
            f,
            report,
        )
    return FactorCertificate(family, tuple(entries)), h, trace


def _exhaustive_recheck(g: Graph, k: int, family: Family) -> str:
    """Desk-scale fallback: scan all half-integral assignments for one of
    minimal support whose components classify; reports the outcome so the
    failure carries evidence of what a correct engine would have produced."""
    if g.num_edges > EXHAUSTIVE_RECHECK_EDGE_LIMIT:
        return f"skipped (||G||={g.num_edges} > {EXHAUSTIVE_RECHECK_EDGE_LIMIT})"
    edges = g.edges
    best: tuple[int, tuple[int, ...]] | None = None
    for vals in product((0, 1, 2), repeat=len(edges)):
        units = [0] * g.n
        for (u, v), hv in zip(edges, vals):
            units[u] += hv
            units[v] += hv
        if not all(2 <= s <= 2 * k + 1 for s in units):
            continue
        support = sum(1 for hv in vals if hv)
        if best is None or support < best[0]:
            best = (support, vals)
    if best is None:
        return "no valid assignment exists at all (extraction should have returned None)"
    vals = best[1]
    keep = [e for e, hv in zip(edges, vals) if hv]
    adj = [0] * g.n
    for u, v in keep:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    from factorsmith.graphs import connected_components

    ok = True
    for comp in connected_components(g.n, adj):
        index = {v: i for i, v in enumerate(comp)}
        comp_edges = [(index[u], index[v]) for u, v in keep if u in index and v in index]
        if classify_component(Graph(len(comp), comp_edges), family).kind == "other":
            ok = False
    return (
        "a minimal-support assignment classifies cleanly (rule engine incomplete)"
        if ok
        else "even a minimal-support assignment has an unclassifiable component"
    )


def verify_certificate(g: Graph, cert: FactorCertificate) -> bool:
    """Partition of V, edges present in g, and every class tag re-validates."""
    seen: set[int] = set()
    for entry in cert.components:
        for v in entry.vertices:
            if v in seen or not 0 <= v < g.n:
                return False
            seen.add(v)
    if len(seen) != g.n:
        return False
    base_edges = set(g.edges)
    for entry in cert.components:
        vset = set(entry.vertices)
        for u, v in entry.edges:
            if edge(u, v) not in base_edges or u not in vset or v not in vset:
                return False
        index = {v: i for i, v in enumerate(sorted(vset))}
        sub = Graph(len(vset), [(index[u], index[v]) for u, v in entry.edges])
        cls = classify_component(sub, cert.family)
        if cls.kind == "other" or cls != entry.cls:
            return False
    return True
