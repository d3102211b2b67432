"""Finite posets of principal open sets, and the product-of-chains test."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import prod


class Poset:
    """A finite partial order; ``leq[i][j]`` means element i lies below element j."""

    def __init__(self, labels, leq):
        n = len(labels)
        self.labels = list(labels)
        self.leq = [[bool(leq[i][j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            if not self.leq[i][i]:
                raise ValueError(f"order is not reflexive at {self.labels[i]}")
            for j in range(n):
                if i != j and self.leq[i][j] and self.leq[j][i]:
                    raise ValueError(f"order is not antisymmetric at {self.labels[i]}, {self.labels[j]}")
                if self.leq[i][j]:
                    for k in range(n):
                        if self.leq[j][k] and not self.leq[i][k]:
                            raise ValueError("order is not transitive")

    @classmethod
    def from_relation(cls, labels, rel):
        n = len(labels)
        return cls(labels, [[rel(labels[i], labels[j]) for j in range(n)] for i in range(n)])

    def __len__(self):
        return len(self.labels)

    def covers(self) -> list:
        n = len(self)
        out = []
        for i in range(n):
            for j in range(n):
                if i != j and self.leq[i][j] and not any(
                        k != i and k != j and self.leq[i][k] and self.leq[k][j] for k in range(n)):
                    out.append((i, j))
        return out

    def bottom(self):
        n = len(self)
        return next((i for i in range(n) if all(self.leq[i][j] for j in range(n))), None)

    def top(self):
        n = len(self)
        return next((i for i in range(n) if all(self.leq[j][i] for j in range(n))), None)

    def is_chain(self) -> bool:
        n = len(self)
        return all(self.leq[i][j] or self.leq[j][i] for i in range(n) for j in range(n))

    def edge_list(self) -> list:
        return [(str(self.labels[i]), str(self.labels[j])) for i, j in self.covers()]

    @classmethod
    def from_covers(cls, labels, covers):
        """The reflexive-transitive closure of a cover (or any acyclic) relation."""
        n = len(labels)
        leq = [[i == j for j in range(n)] for i in range(n)]
        for i, j in covers:
            leq[i][j] = True
        for k in range(n):
            for i in range(n):
                if leq[i][k]:
                    for j in range(n):
                        if leq[k][j]:
                            leq[i][j] = True
        return cls(labels, leq)

    def to_data(self) -> dict:
        return {"elements": [str(x) for x in self.labels], "covers": [list(c) for c in self.covers()]}

    @classmethod
    def from_data(cls, data) -> "Poset":
        if isinstance(data, dict) and "elements" in data:
            labels = list(data["elements"])
            return cls.from_covers(labels, [tuple(c) for c in data.get("covers", [])])
        if isinstance(data, list):
            # a bare edge list of label pairs
            labels = []
            for a, b in data:
                for x in (a, b):
                    if x not in labels:
                        labels.append(x)
            return cls.from_covers(labels, [(labels.index(a), labels.index(b)) for a, b in data])
        raise ValueError("a poset is {elements, covers} or a list of label pairs")

    def __repr__(self):
        return f"Poset({len(self)} elements, {len(self.covers())} covers)"


def chain(n: int) -> Poset:
    return Poset(list(range(n)), [[i <= j for j in range(n)] for i in range(n)])


def chain_product(lengths) -> Poset:
    """Product of chains of the given lengths, ordered coordinatewise."""
    elems = list(product(*[range(n) for n in lengths]))
    return Poset.from_relation(elems, lambda a, b: all(x <= y for x, y in zip(a, b)))


# -- isomorphism ---------------------------------------------------------------------------


def _signature(P: Poset):
    n = len(P)
    cov = P.covers()
    up = [0] * n
    down = [0] * n
    for i, j in cov:
        up[i] += 1
        down[j] += 1
    below = [sum(P.leq[j][i] for j in range(n)) for i in range(n)]
    above = [sum(P.leq[i][j] for j in range(n)) for i in range(n)]
    return [(below[i], above[i], up[i], down[i]) for i in range(n)]


def poset_isomorphism(P: Poset, Q: Poset):
    """An order isomorphism P -> Q as a list, or None; backtracking with invariants."""
    n = len(P)
    if n != len(Q):
        return None
    sp, sq = _signature(P), _signature(Q)
    if sorted(sp) != sorted(sq):
        return None
    order = sorted(range(n), key=lambda i: (sp[i][0], sp[i]))
    image = [None] * n
    used = [False] * n

    def place(t):
        if t == n:
            return True
        i = order[t]
        for j in range(n):
            if used[j] or sq[j] != sp[i]:
                continue
            if all(P.leq[i][k] == Q.leq[j][image[k]] and P.leq[k][i] == Q.leq[image[k]][j]
                   for k in order[:t]):
                image[i] = j
                used[j] = True
                if place(t + 1):
                    return True
                used[j] = False
        image[i] = None
        return False

    return list(image) if place(0) else None


# -- products of chains ----------------------------------------------------------------------


def _factorizations(n: int, smallest: int = 2):
    """Multisets of integers >= 2 (non-decreasing) with product n."""
    if n == 1:
        yield ()
        return
    for d in range(smallest, n + 1):
        if n % d == 0:
            for rest in _factorizations(n // d, d):
                yield (d,) + rest


@dataclass(frozen=True)
class ChainVerdict:
    is_product: bool
    lengths: tuple = ()
    reason: str = ""

    def __str__(self):
        if self.is_product:
            return "product of chains " + "x".join(map(str, self.lengths))
        return "impossible: " + self.reason


MAX_CHAIN_TEST_SIZE = 64


def product_of_chains_test(P: Poset) -> ChainVerdict:
    n = len(P)
    if n > MAX_CHAIN_TEST_SIZE:
        raise ValueError(f"posets larger than {MAX_CHAIN_TEST_SIZE} are not tested")
    if P.bottom() is None or P.top() is None:
        return ChainVerdict(False, reason="no top or no bottom element")
    if n == 1:
        return ChainVerdict(True, ())
    tried = list(_factorizations(n))
    for lengths in tried:
        if poset_isomorphism(P, chain_product(lengths)) is not None:
            return ChainVerdict(True, tuple(sorted(lengths, reverse=True)))
    shapes = ", ".join("x".join(map(str, f)) for f in tried)
    return ChainVerdict(False, reason=f"not order-isomorphic to any chain product of size {n} ({shapes})")


# -- principal open sets ---------------------------------------------------------------------


def principal_poset_ee(F) -> Poset:
    """Principal open sets containing V_F: one per subset G of F, ordered by inclusion of G."""
    F = sorted(set(F))
    subsets = [frozenset(c) for r in range(len(F) + 1) for c in combinations(F, r)]
    return Poset.from_relation(subsets, lambda a, b: a <= b)


def principal_poset_ef(g) -> Poset:
    """Functions h <= g pointwise, for g of finite support given as {x: g(x)}."""
    g = {x: v for x, v in dict(g).items() if v}
    if any(v < 0 for v in g.values()):
        raise ValueError("function values are natural numbers")
    xs = sorted(g)
    elems = [tuple(zip(xs, vals)) for vals in product(*[range(g[x] + 1) for x in xs])]
    return Poset.from_relation(elems, lambda a, b: all(u[1] <= v[1] for u, v in zip(a, b)))


def principal_count_ef(g) -> int:
    return prod(1 + v for v in dict(g).values())


def principal_poset_field(K, budget: int | None = None) -> Poset:
    """Subfields of K up to isomorphism, ordered by embeddability."""
    from isoclass.arith.text import format_poly
    from isoclass.field.closure import CLOSURE_DEGREE_BUDGET, subfield_lattice
    L = subfield_lattice(K, CLOSURE_DEGREE_BUDGET if budget is None else budget)
    labels = [format_poly(nd.minpoly) for nd in L.nodes]
    return Poset(labels, L.leq)
