"""Rationals q separating sqrt(alpha_i + q) from sqrt(alpha_j + q).

Each q_k is found by direct search: the first rational above k (by height)
with T^2 - (alpha_i + q)/(alpha_j + q) irreducible over the current normal
closure E_k.  E_{k+1} is the normal closure of E_k(sqrt(alpha_i + q_k),
sqrt(alpha_j + q_k)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from isoclass.arith.poly import Poly
from isoclass.errors import DegreeBudgetExceeded, HeightBoundExceeded
from isoclass.field.closure import normal_closure
from isoclass.field.factor import is_irreducible_over, roots, sqrt
from isoclass.field.tower import FieldTower

DISTINGUISH_DEGREE_BUDGET = 64


def rationals_of_height(H: int) -> list:
    """Reduced fractions a/b with max(|a|, b) = H, in increasing order."""
    if H == 0:
        return [Fraction(0)]
    out = set()
    for b in range(1, H + 1):
        for a in range(-H, H + 1):
            if a and max(abs(a), b) == H and gcd(a, b) == 1:
                out.add(Fraction(a, b))
    return sorted(out)


def _sq_poly(F: FieldTower, z) -> Poly:
    return Poly._raw((-F.convert(z), F.zero, F.one), F)


def separates(E: FieldTower, ai, aj, q) -> bool:
    """Both non-membership conditions for a single step over E.

    sqrt(aj + q) is not in E(sqrt(ai + q)) and sqrt(ai + q) is not in E(sqrt(aj + q)).
    """
    q = Fraction(q)
    u, v = E.convert(ai) + q, E.convert(aj) + q
    for a, b in ((u, v), (v, u)):
        if not a or sqrt(E, a) is not None:
            return False
        Ea = E.extend(_sq_poly(E, a), check=False)
        if sqrt(Ea, Ea.convert(b)) is not None:
            return False
    return True


@dataclass(frozen=True)
class Distinguishers:
    qs: tuple
    fields: tuple  # E_0, ..., E_{count-1}
    alphas: tuple  # (alpha_i, alpha_j) in E_0

    def verify(self) -> bool:
        for k, q in enumerate(self.qs):
            E = self.fields[k]
            if q <= k or not separates(E, E.convert(self.alphas[0]), E.convert(self.alphas[1]), q):
                return False
        return list(self.qs) == sorted(set(self.qs))


def find_distinguishing_q(E: FieldTower, p, i: int, j: int, count: int = 1,
                          height_bound: int = 50,
                          budget: int = DISTINGUISH_DEGREE_BUDGET) -> Distinguishers:
    """q_0 < q_1 < ... with q_k > k distinguishing roots i and j of p (indices into
    the roots of p in the normal closure of E, in canonical order)."""
    if i == j:
        raise ValueError("root indices must differ")
    E0 = normal_closure(E, budget)
    rs = roots(E0, p.change_domain(E0))
    if max(i, j) >= len(rs) or min(i, j) < 0:
        raise ValueError(f"p has {len(rs)} roots in the normal closure")
    ai, aj = rs[i], rs[j]
    Ek = E0
    qs, fields = [], []
    for k in range(count):
        if k > 0:
            a, b = Ek.convert(ai) + qs[-1], Ek.convert(aj) + qs[-1]
            N = Ek.extend(_sq_poly(Ek, a), check=False)
            N = N.extend(_sq_poly(N, b), check=False)
            Ek = normal_closure(N, budget)
        found = None
        for H in range(1, height_bound + 1):
            for q in rationals_of_height(H):
                if q <= k or (qs and q <= qs[-1]):
                    continue
                u, v = Ek.convert(ai) + q, Ek.convert(aj) + q
                if not v:
                    continue
                if Ek.degree > budget:
                    raise DegreeBudgetExceeded(f"degree {Ek.degree} exceeds the budget {budget}")
                if is_irreducible_over(Ek, _sq_poly(Ek, u / v)) and separates(Ek, ai, aj, q):
                    found = q
                    break
            if found is not None:
                break
        if found is None:
            raise HeightBoundExceeded(f"no q of height <= {height_bound} at step {k}")
        qs.append(found)
        fields.append(Ek)
    return Distinguishers(tuple(qs), tuple(fields), (ai, aj))
