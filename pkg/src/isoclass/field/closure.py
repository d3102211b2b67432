"""Normal closures, primitive elements and subfield lattices of towers."""

from __future__ import annotations

from dataclasses import dataclass, field

from isoclass.arith.poly import QQ, Poly
from isoclass.errors import DegreeBudgetExceeded
from isoclass.field.embed import Embedding, automorphisms
from isoclass.field.factor import factor_over_field, minimal_poly
from isoclass.field.tower import RATIONALS, FieldElt, FieldTower

CLOSURE_DEGREE_BUDGET = 16


def _check_budget(F: FieldTower, budget: int):
    if F.degree > budget:
        raise DegreeBudgetExceeded(f"degree {F.degree} exceeds the budget {budget}")


def rational_minpoly(F: FieldTower, e) -> Poly:
    m = minimal_poly(F, e, over=0)
    return Poly._raw([c.to_rational() for c in m.coeffs], QQ)


def normal_closure(F: FieldTower, budget: int = CLOSURE_DEGREE_BUDGET) -> FieldTower:
    """Extend F until every generator's minimal polynomial over Q splits.

    The result has F as a prefix, so F sits inside it on the nose.
    """
    _check_budget(F, budget)
    mins = [rational_minpoly(F, F.gen(i)) for i in range(F.depth)]
    N = F
    while True:
        for m in mins:
            fac = factor_over_field(N, m)
            nonlinear = next((f for f, _ in fac if f.degree > 1), None)
            if nonlinear is not None:
                if N.degree * nonlinear.degree > budget:
                    raise DegreeBudgetExceeded(
                        f"normal closure degree exceeds the budget {budget}")
                N = N.extend(nonlinear, check=False)
                break
        else:
            return N


def is_galois(F: FieldTower) -> bool:
    return len(automorphisms(F)) == F.degree


def primitive_element(F: FieldTower) -> FieldElt:
    """A generator of F over Q: the first sum_i t^i a_i of full degree."""
    if F.depth <= 1:
        return F.gen(0) if F.depth else F.one
    gens = F.gens()
    t = 1
    while True:
        for sgn in (1, -1):
            g = F.zero
            for i, a in enumerate(gens):
                g = g + a * (sgn * t ** (i + 1))
            if minimal_poly(F, g).degree == F.degree:
                return g
        t += 1


def simple_tower(F: FieldTower, name: str = "a0"):
    """(S, phi): a one-step tower S and an isomorphism phi: S -> F."""
    g = primitive_element(F)
    m = rational_minpoly(F, g)
    S = RATIONALS.extend(m, name=name, check=False) if m.degree > 1 else RATIONALS
    return S, Embedding(S, F, (g,) if S.depth else ())


# -- groups ---------------------------------------------------------------------------------


class AutGroup:
    """Automorphisms of a tower as a concrete permutation group."""

    def __init__(self, N: FieldTower):
        self.field = N
        self.auts = automorphisms(N)
        self.gamma = primitive_element(N)
        orbit = [s(self.gamma) for s in self.auts]
        index = {(x.n, x.d): i for i, x in enumerate(orbit)}
        n = len(self.auts)
        self.table = [[index[(s(orbit[j]).n, s(orbit[j]).d)] for j in range(n)] for s in self.auts]
        self.identity = next(i for i, s in enumerate(self.auts) if s.is_identity())

    def __len__(self):
        return len(self.auts)

    def mul(self, i, j):
        # (auts[i] o auts[j])(gamma) = auts[i](orbit[j])
        return self.table[i][j]

    def inverse(self, i):
        return next(j for j in range(len(self)) if self.table[i][j] == self.identity)

    def closure(self, gens) -> frozenset:
        elems = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        return frozenset(elems)

    def subgroups(self) -> list:
        seen = {self.closure([])}
        queue = list(seen)
        while queue:
            H = queue.pop()
            for g in range(len(self)):
                if g in H:
                    continue
                K = self.closure(list(H) + [g])
                if K not in seen:
                    seen.add(K)
                    queue.append(K)
        return sorted(seen, key=lambda H: (len(H), sorted(H)))

    def conjugate(self, H, g) -> frozenset:
        gi = self.inverse(g)
        return frozenset(self.mul(self.mul(g, h), gi) for h in H)

    def fixing(self, k: int) -> frozenset:
        """Elements fixing the first k generators of the field."""
        return frozenset(i for i, s in enumerate(self.auts)
                         if all(s.images[j] == self.field.gen(j) for j in range(k)))

    def fixed_field_element(self, H) -> FieldElt:
        """An element generating the fixed field of H."""
        N = self.field
        target = len(self) // len(H)
        auts = [self.auts[h] for h in H]

        def fixed(x):
            return all(s(x) == x for s in auts)

        cands = list(N.gens())
        gens = N.gens()
        for i in range(len(gens)):
            for j in range(i, len(gens)):
                cands.append(gens[i] * gens[j])
                if i != j:
                    cands.append(gens[i] + gens[j])
                    cands.append(gens[i] - gens[j])
        if target == 1:
            return N.one
        for c in cands:
            if fixed(c) and minimal_poly(N, c).degree == target:
                return c
        # coefficients of prod_{h in H} (X - h(gamma)) generate the fixed field
        X = Poly._raw((N.zero, N.one), N)
        prod = Poly._raw((N.one,), N)
        for s in auts:
            prod = prod * (X - s(self.gamma))
        coeffs = [c for c in prod.coeffs[:-1] if not c.is_rational()]
        t = 1
        while True:
            for sgn in (1, -1):
                c = N.zero
                for i, a in enumerate(coeffs):
                    c = c + a * (sgn * t ** (i + 1))
                if minimal_poly(N, c).degree == target:
                    return c
            t += 1


# -- lattice -----------------------------------------------------------------------------------


@dataclass
class SubfieldNode:
    field: FieldTower
    degree: int
    generator: object  # element of the normal closure generating a representative
    minpoly: Poly
    subgroup: frozenset


@dataclass
class SubfieldLattice:
    nodes: list
    leq: list  # leq[i][j]: node i embeds into node j
    closure: FieldTower = field(repr=False)

    def __len__(self):
        return len(self.nodes)

    def covers(self) -> list:
        n = len(self.nodes)
        out = []
        for i in range(n):
            for j in range(n):
                if i != j and self.leq[i][j]:
                    if not any(k not in (i, j) and self.leq[i][k] and self.leq[k][j] for k in range(n)):
                        out.append((i, j))
        return out

    def degrees(self) -> list:
        return [nd.degree for nd in self.nodes]


def subfield_lattice(F: FieldTower, budget: int = CLOSURE_DEGREE_BUDGET) -> SubfieldLattice:
    """Subfields of F up to isomorphism, ordered by embeddability."""
    _check_budget(F, budget)
    if F.depth == 0:
        node = SubfieldNode(RATIONALS, 1, RATIONALS.one, Poly([-1, 1]), frozenset([0]))
        return SubfieldLattice([node], [[True]], RATIONALS)
    N = normal_closure(F, budget)
    G = AutGroup(N)
    HF = G.fixing(F.depth)
    subs = [H for H in G.subgroups() if HF <= H]
    by_conj = {}
    for H in subs:
        key = frozenset(G.conjugate(H, g) for g in range(len(G)))
        by_conj.setdefault(key, []).append(H)
    classes = list(by_conj.values())
    nodes = []
    for cls in classes:
        H = cls[0]
        gen = G.fixed_field_element(H)
        m = rational_minpoly(N, gen)
        rep = RATIONALS.extend(m, check=False) if m.degree > 1 else RATIONALS
        nodes.append(SubfieldNode(rep, m.degree, gen, m, H))
    order = sorted(range(len(nodes)), key=lambda i: (nodes[i].degree, nodes[i].minpoly.sort_key()))
    nodes = [nodes[i] for i in order]
    classes = [classes[i] for i in order]
    n = len(nodes)
    conj = [{G.conjugate(c[0], g) for g in range(len(G))} for c in classes]
    leq = [[any(H2 <= nodes[i].subgroup for H2 in conj[j]) for j in range(n)] for i in range(n)]
    return SubfieldLattice(nodes, leq, N)
