"""Binomial-tail parameters and formula families for square-root Scott families."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice
from math import comb

from isoclass.arith.poly import Poly
from isoclass.field.factor import sqrt
from isoclass.field.tower import FieldTower

DEFAULT_RATIOS = (100, 40, 35)


def heads_tail(n: int, k: int) -> Fraction:
    """P[Bin(n, 1/2) >= k]."""
    return Fraction(sum(comb(n, i) for i in range(max(k, 0), n + 1)), 2 ** n)


def pairs_tail(n: int, k: int) -> Fraction:
    """P[Bin(n, 1/4) <= k]: at most k of n double flips show two heads."""
    return Fraction(sum(comb(n, i) * 3 ** (n - i) for i in range(0, min(k, n) + 1)), 4 ** n)


def _exceeds_root(P: Fraction, base: Fraction, e: int) -> bool:
    """P > base^(1/e), by comparing P^e with base (P >= 0)."""
    return P ** e > base


def scott_conditions(N: int, d: int, delta, ratios=DEFAULT_RATIOS) -> tuple:
    flips, heads, pairs = ratios
    delta = Fraction(delta)
    c1 = _exceeds_root(heads_tail(flips * N, heads * N), 1 - delta, 2 * d)
    c2 = _exceeds_root(pairs_tail(flips * N, pairs * N), 1 - delta, d * (d - 1))
    return c1, c2


@dataclass(frozen=True)
class ScottParams:
    d: int
    delta: Fraction
    N: int
    ratios: tuple = DEFAULT_RATIOS

    @property
    def flips(self) -> int:
        return self.ratios[0] * self.N

    @property
    def heads(self) -> int:
        return self.ratios[1] * self.N

    @property
    def pairs(self) -> int:
        return self.ratios[2] * self.N


def scott_N(d: int, delta, ratios=DEFAULT_RATIOS, limit: int = 10000) -> ScottParams:
    """Least positive N satisfying both tail inequalities."""
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise ValueError("delta must lie strictly between 0 and 1")
    if d < 2:
        raise ValueError("degree must be at least 2")
    flips, heads, pairs = ratios
    # otherwise the tails tend to at most 1/2 and no N exists
    if not (2 * heads < flips < 4 * pairs):
        raise ValueError("ratios need heads/flips < 1/2 < 1/4 < pairs/flips")
    for N in range(1, limit + 1):
        if all(scott_conditions(N, d, delta, ratios)):
            return ScottParams(d, delta, N, tuple(ratios))
    raise ValueError(f"no N <= {limit}")


# -- formula families --------------------------------------------------------------------


@dataclass(frozen=True)
class Formula:
    """p(X) = 0 and, for every q in S, exists Y with Y^2 = X + q."""

    p: Poly
    S: frozenset

    def __str__(self):
        parts = [f"{self.p} = 0"] + [f"EY Y^2 = X + {q}" for q in sorted(self.S)]
        return " & ".join(parts)


class ScottFamilyFragment:
    """Lazy family of the formulas for one polynomial: one per heads-sized subset of qs."""

    MATERIALIZE_LIMIT = 100000

    def __init__(self, p: Poly, params: ScottParams, qs):
        qs = tuple(Fraction(q) for q in qs)
        if len(qs) != params.flips:
            raise ValueError(f"expected {params.flips} rationals, got {len(qs)}")
        if len(set(qs)) != len(qs):
            raise ValueError("the rationals must be distinct")
        self.p, self.params, self.qs = p, params, qs

    @property
    def size(self) -> int:
        """Number of formulas; may exceed what len() can report."""
        return comb(len(self.qs), self.params.heads)

    def __len__(self):
        return self.size

    def __iter__(self):
        for S in combinations(self.qs, self.params.heads):
            yield Formula(self.p, frozenset(S))

    def take(self, n: int) -> list:
        return list(islice(iter(self), n))

    def materialize(self) -> list:
        if self.size > self.MATERIALIZE_LIMIT:
            raise ValueError(f"{self.size} formulas exceed the limit {self.MATERIALIZE_LIMIT}")
        return list(self)

    def __contains__(self, phi) -> bool:
        return (isinstance(phi, Formula) and phi.p == self.p
                and len(phi.S) == self.params.heads and phi.S <= set(self.qs))

    def square_set(self, has_sqrt) -> frozenset:
        """The qs with X + q a square, for a predicate q -> bool."""
        return frozenset(q for q in self.qs if has_sqrt(q))

    def realizes_by(self, phi: Formula, has_sqrt) -> bool:
        return all(has_sqrt(q) for q in phi.S)

    def realized_count(self, has_sqrt) -> int:
        return comb(len(self.square_set(has_sqrt)), self.params.heads)

    def disjoint(self, has_sqrt_a, has_sqrt_b) -> bool:
        """No formula is realized by both roots."""
        common = self.square_set(has_sqrt_a) & self.square_set(has_sqrt_b)
        return len(common) < self.params.heads

    # concrete fields

    def field_predicate(self, F: FieldTower, alpha):
        alpha = F.convert(alpha)
        return lambda q: sqrt(F, alpha + q) is not None

    def realizes(self, F: FieldTower, alpha, phi: Formula) -> bool:
        alpha = F.convert(alpha)
        if self.p.change_domain(F)(alpha):
            return False
        return self.realizes_by(phi, self.field_predicate(F, alpha))
