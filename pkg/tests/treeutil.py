"""Tree isomorphism helpers for tests: AHU canonical forms rooted at centroids."""

from __future__ import annotations

from factorsmith.graphs import Graph


def _rooted_canon(g: Graph, root: int, parent: int) -> tuple:
    children = sorted(
        (_rooted_canon(g, w, root) for w in g.neighbors(root) if w != parent),
        reverse=True,
    )
    return tuple(children)


def _centroids(g: Graph) -> list[int]:
    n = g.n
    if n == 1:
        return [0]
    size = [1] * n
    order: list[int] = []
    parent = [-1] * n
    stack = [0]
    seen = [False] * n
    seen[0] = True
    while stack:
        v = stack.pop()
        order.append(v)
        for w in g.neighbors(v):
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                stack.append(w)
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    best: list[int] = []
    best_w = n + 1
    for v in range(n):
        w = n - size[v]
        for u in g.neighbors(v):
            if parent[u] == v:
                w = max(w, size[u])
        if w < best_w:
            best_w = w
            best = [v]
        elif w == best_w:
            best.append(v)
    return best


def tree_canon(g: Graph) -> tuple:
    """Canonical form of a free tree; equal forms <=> isomorphic trees."""
    assert g.num_edges == g.n - 1, "tree_canon expects a tree"
    forms = sorted(_rooted_canon(g, c, -1) for c in _centroids(g))
    return tuple(forms)
