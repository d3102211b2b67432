"""Finite-code models of =^e, =^f, E_card and E_card^forall.

Sets are explicit finite subsets of the naturals; pairs are coded with the
Cantor pairing function.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import isqrt

OMEGA = "omega"


def pair(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


def unpair(z: int) -> tuple:
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def code_pairs(pairs) -> frozenset:
    return frozenset(pair(x, y) for x, y in pairs)


def projection(A) -> frozenset:
    """pi_1(A): first coordinates of the pairs coded in A."""
    return frozenset(unpair(z)[0] for z in A)


def columns(A) -> Counter:
    """x -> |{y : <x, y> in A}|."""
    return Counter(unpair(z)[0] for z in A)


def ee_equiv(A, B) -> bool:
    return projection(A) == projection(B)


def ef_equiv(A, B) -> bool:
    return columns(A) == columns(B)


def ecard_equiv(A, B) -> bool:
    return len(set(A)) == len(set(B))


@dataclass(frozen=True)
class Card:
    """A cardinality in {0, 1, ..., omega}."""

    finite: int | None

    @property
    def infinite(self) -> bool:
        return self.finite is None

    def __str__(self):
        return "omega" if self.infinite else str(self.finite)


def complement_card(A, bound: int | None = None) -> Card:
    """|omega - pi_1(A)|.  The part below ``bound`` is counted; the tail from
    ``bound`` on is cofinite in omega and so always infinite."""
    proj = projection(A)
    if bound is not None and any(x >= bound for x in proj):
        raise ValueError("bound must exceed every projected element")
    return Card(None)


def ecard_forall_equiv(A, B, bound: int | None = None) -> bool:
    """(omega - pi_1(A)) E_card (omega - pi_1(B)); for finite codes both sides are infinite."""
    return complement_card(A, bound) == complement_card(B, bound)


def acf_open_membership(degree, n: int) -> bool:
    """Does the type of transcendence degree ``degree`` lie in the open set U_n?"""
    if n < 0:
        raise ValueError("n must be a natural number")
    if degree == OMEGA:
        return True
    if not isinstance(degree, int) or degree < 0:
        raise ValueError("degree is a natural number or OMEGA")
    return degree >= n
