"""Spine trees: a long path with a one-node decoration below level n+1 for each n in S."""

from __future__ import annotations

from isoclass.trees.codec import tree_at
from isoclass.trees.core import FiniteTree, embeds


def spine_tree(S, M: int) -> FiniteTree:
    S = sorted(set(S))
    if S and S[-1] + 1 >= M:
        raise ValueError(f"height {M} is too small for the decoration at level {S[-1] + 1}")
    parent = [max(v - 1, 0) for v in range(M + 1)]  # spine nodes 0..M at levels 0..M
    for n in S:
        parent.append(n)
    return FiniteTree(parent)


def spine_set(T: FiniteTree) -> frozenset:
    """Levels n whose spine node carries a second child."""
    deepest = max(range(len(T)), key=lambda v: (T.levels[v], -v))
    spine = []
    v = deepest
    while True:
        spine.append(v)
        if T.parent[v] == v:
            break
        v = T.parent[v]
    return frozenset(T.levels[u] for u in spine if len(T.children[u]) > 1)


def embed_set(T: FiniteTree, bound: int) -> frozenset:
    """Indices j < bound of trees in L that embed into T."""
    return frozenset(j for j in range(bound) if embeds(tree_at(j), T))
