"""Set-to-field and field-to-set reductions between =^e codes and algebraic fields."""

from __future__ import annotations

from itertools import product

from isoclass.arith.factor import is_irreducible_q, nth_prime
from isoclass.arith.poly import Poly
from isoclass.errors import DegreeBudgetExceeded
from isoclass.field.factor import has_root
from isoclass.field.tower import RATIONALS, FieldTower

SET_DEGREE_BUDGET = 64


def field_from_set(S, budget: int = SET_DEGREE_BUDGET) -> FieldTower:
    """Q(sqrt(p_n) : n in S), p_n the n-th prime (p_0 = 2)."""
    S = sorted(set(S))
    if 2 ** len(S) > budget:
        raise DegreeBudgetExceeded(f"degree 2^{len(S)} exceeds the budget {budget}")
    F = RATIONALS
    for n in S:
        F = F.extend(Poly([-nth_prime(n), 0, 1]), name=f"s{n}")
    return F


def h_list():
    """Irreducible monic rational polynomials of degree >= 2 with integer coefficients.

    Listed by weight = degree + height, then degree, then coefficients
    (constant term first) with values ordered -1, 1, -2, 2, ...
    """
    w = 3
    while True:
        for d in range(2, w):
            H = w - d
            values = [0] + [v for a in range(1, H + 1) for v in (-a, a)]
            for cs in product(values, repeat=d):
                if max(abs(c) for c in cs) != H:
                    continue
                p = Poly(list(cs) + [1])
                if is_irreducible_q(p):
                    yield p
        w += 1


def h_prefix(n: int) -> list:
    out = []
    for p in h_list():
        if len(out) >= n:
            break
        out.append(p)
    return out


def set_from_field(F: FieldTower, n: int) -> frozenset:
    """Indices k < n with h_k having a root in F."""
    return frozenset(k for k, p in enumerate(h_prefix(n)) if has_root(F, p.change_domain(F)))
