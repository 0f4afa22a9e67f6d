"""Maximum matching in general graphs (blossom contraction).

Classic array-based O(V^3) formulation: repeated alternating-tree searches
from exposed vertices, contracting odd cycles via base pointers.  Good enough
for desk-scale graphs and for the vertex gadgets built by the factor engines.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from factorsmith.graphs import Graph, edge


@dataclass(frozen=True)
class Matching:
    """Set of pairwise non-adjacent edges."""

    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        seen: set[int] = set()
        for u, v in self.edges:
            if u in seen or v in seen:
                raise ValueError("matching edges share a vertex")
            seen.add(u)
            seen.add(v)

    @property
    def size(self) -> int:
        return len(self.edges)

    def covers(self, v: int) -> bool:
        return any(v in e for e in self.edges)


def max_matching(g: Graph) -> Matching:
    """Maximum matching; the search stops only when no augmenting path exists
    from any exposed vertex, which certifies maximality."""
    n = g.n
    adj = [list(g.neighbors(v)) for v in range(n)]
    match = [-1] * n
    # greedy warm start
    for v in range(n):
        if match[v] == -1:
            for u in adj[v]:
                if match[u] == -1:
                    match[v] = u
                    match[u] = v
                    break

    parent = [-1] * n
    base = list(range(n))
    in_queue = [False] * n
    in_blossom = [False] * n

    def lca(a: int, b: int) -> int:
        used = [False] * n
        x = a
        while True:
            x = base[x]
            used[x] = True
            if match[x] == -1:
                break
            x = parent[match[x]]
        y = b
        while True:
            y = base[y]
            if used[y]:
                return y
            y = parent[match[y]]

    def mark_path(x: int, anchor: int, child: int) -> None:
        while base[x] != anchor:
            in_blossom[base[x]] = True
            in_blossom[base[match[x]]] = True
            parent[x] = child
            child = match[x]
            x = parent[match[x]]

    def find_augmenting_path(root: int) -> int:
        for i in range(n):
            parent[i] = -1
            base[i] = i
            in_queue[i] = False
        queue = deque([root])
        in_queue[root] = True
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    # odd cycle: contract the blossom
                    anchor = lca(v, to)
                    for i in range(n):
                        in_blossom[i] = False
                    mark_path(v, anchor, to)
                    mark_path(to, anchor, v)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = anchor
                            if not in_queue[i]:
                                in_queue[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to
                    in_queue[match[to]] = True
                    queue.append(match[to])
        return -1

    for v in range(n):
        if match[v] == -1:
            end = find_augmenting_path(v)
            if end == -1:
                continue
            # flip the alternating path back to the root
            while end != -1:
                prev = parent[end]
                nxt = match[prev]
                match[end] = prev
                match[prev] = end
                end = nxt

    return Matching(frozenset(edge(v, match[v]) for v in range(n) if match[v] > v))
