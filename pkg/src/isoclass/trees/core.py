"""Finite rooted trees given by their predecessor function."""

from __future__ import annotations

import json
from functools import cached_property

from isoclass.errors import ParseError


class FiniteTree:
    """A finite rooted tree: ``parent[v]`` is the predecessor of v, ``parent[root] == root``."""

    __slots__ = ("parent", "__dict__")

    def __init__(self, parent):
        parent = tuple(int(p) for p in parent)
        n = len(parent)
        if n == 0:
            raise ValueError("a tree has at least one node")
        if any(not 0 <= p < n for p in parent):
            raise ValueError("parent entries must be node indices")
        roots = [v for v, p in enumerate(parent) if p == v]
        if len(roots) != 1:
            raise ValueError(f"expected exactly one root, found {len(roots)}")
        self.parent = parent
        self.levels  # noqa: B018  (raises on cycles)

    @property
    def root(self) -> int:
        return next(v for v, p in enumerate(self.parent) if p == v)

    def __len__(self):
        return len(self.parent)

    @cached_property
    def children(self) -> tuple:
        ch = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p != v:
                ch[p].append(v)
        return tuple(tuple(c) for c in ch)

    @cached_property
    def levels(self) -> tuple:
        lev = [None] * len(self.parent)
        r = self.root
        lev[r] = 0
        order = [r]
        for v in order:
            for c in self.children[v]:
                lev[c] = lev[v] + 1
                order.append(c)
        if len(order) != len(self.parent):
            raise ValueError("parent array contains a cycle")
        return tuple(lev)

    @property
    def height(self) -> int:
        return max(self.levels)

    @cached_property
    def code(self) -> str:
        return canonical_code(self)

    def __eq__(self, other):
        return isinstance(other, FiniteTree) and self.parent == other.parent

    def __hash__(self):
        return hash(self.parent)

    def __repr__(self):
        return f"FiniteTree({list(self.parent)})"

    def to_json(self) -> str:
        return json.dumps({"parent": list(self.parent)})

    @classmethod
    def from_json(cls, text: str) -> "FiniteTree":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed tree JSON: {exc.msg}", text[exc.pos:exc.pos + 10]) from None
        if isinstance(data, dict):
            data = data.get("parent")
        if not isinstance(data, list):
            raise ParseError("a tree is {\"parent\": [...]}", str(data)[:20])
        try:
            return cls(data)
        except (TypeError, ValueError) as exc:
            raise ParseError(str(exc), str(data)[:20]) from None


def canonical_code(T: FiniteTree) -> str:
    """AHU code: a node is "(" + sorted codes of its children + ")"."""
    codes = [None] * len(T)
    for v in sorted(range(len(T)), key=lambda v: -T.levels[v]):
        codes[v] = "(" + "".join(sorted(codes[c] for c in T.children[v])) + ")"
    return codes[T.root]


def iso(S: FiniteTree, T: FiniteTree) -> bool:
    return len(S) == len(T) and S.code == T.code


def tree_from_code(code: str) -> FiniteTree:
    """The tree with a given canonical code, nodes numbered in preorder."""
    parent = []
    stack = []
    for ch in code:
        if ch == "(":
            v = len(parent)
            parent.append(stack[-1] if stack else v)
            stack.append(v)
        elif ch == ")":
            stack.pop()
        else:
            raise ParseError("tree codes use only parentheses", ch)
    return FiniteTree(parent)


def truncate(T: FiniteTree, m: int) -> FiniteTree:
    """T|_m: the subtree on levels <= m, nodes renumbered in their original order."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    keep = [v for v in range(len(T)) if T.levels[v] <= m]
    new = {v: i for i, v in enumerate(keep)}
    return FiniteTree([new[T.parent[v]] for v in keep])


def path(n: int) -> FiniteTree:
    """A path with n nodes (height n - 1)."""
    return FiniteTree([max(v - 1, 0) for v in range(n)])


def star(n: int) -> FiniteTree:
    """A root with n - 1 children."""
    return FiniteTree([0] * n)


def _match(left, right, ok) -> bool:
    """Is there a matching saturating ``left`` in the bipartite graph ``ok``?"""
    owner = {}

    def augment(u, seen):
        for w in right:
            if w in seen or not ok(u, w):
                continue
            seen.add(w)
            if w not in owner or augment(owner[w], seen):
                owner[w] = u
                return True
        return False

    return all(augment(u, set()) for u in left)


def embeds(S: FiniteTree, T: FiniteTree) -> bool:
    """Is there an injective map S -> T preserving the root and predecessors?"""
    if len(S) > len(T) or S.height > T.height:
        return False
    memo = {}

    def emb(u, v):
        key = (u, v)
        if key not in memo:
            cu, cv = S.children[u], T.children[v]
            memo[key] = len(cu) <= len(cv) and _match(cu, cv, emb)
        return memo[key]

    return emb(S.root, T.root)
