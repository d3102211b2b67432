"""The isomorphism functional Theta driven by root predicates.

Source generators are mapped in order.  A generator with several candidate
images in K keeps them until square-root templates rule all but one out.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from isoclass.errors import DegreeBudgetExceeded
from isoclass.field.embed import Embedding, iter_embeddings
from isoclass.field.factor import roots, sqrt
from isoclass.field.tower import FieldElt, FieldTower

THETA_TEMPLATE_BUDGET = 200


@dataclass(frozen=True)
class Witness:
    """Template Z^2 - (c_0 + sum_j c_{j+1} x_j) that ruled out a candidate."""

    element: int
    candidate: FieldElt
    coeffs: tuple
    source_side: bool  # root exists on the source side


@dataclass(frozen=True)
class Total:
    iso: Embedding
    witnesses: tuple = ()

    kind = "total"


@dataclass(frozen=True)
class Diverged:
    element: int
    certificate: Embedding
    survivors: tuple
    witnesses: tuple = ()

    kind = "diverged"


@dataclass(frozen=True)
class BudgetExhausted:
    element: int
    survivors: tuple
    witnesses: tuple = ()

    kind = "budget"


def _values(H: int) -> list:
    return [0] + [v for a in range(1, H + 1) for v in (-a, a)]


def templates(n: int):
    """Integer coefficient vectors (c_0, ..., c_n) by height, then position order.

    Vectors with c_1 = ... = c_n = 0 are skipped: a rational square test
    cannot tell candidates apart.
    """
    H = 1
    while True:
        for cs in product(_values(H), repeat=n + 1):
            if max(abs(c) for c in cs) == H and any(cs[1:]):
                yield cs
        H += 1


def _linear(F: FieldTower, cs, elts) -> FieldElt:
    z = F.convert(cs[0])
    for c, e in zip(cs[1:], elts):
        if c:
            z = z + e * c
    return z


def is_square(F: FieldTower, z: FieldElt) -> bool:
    return sqrt(F, z) is not None


def divergence_certificate(K: FieldTower, fixed, candidates):
    """An automorphism of K fixing ``fixed`` pointwise and moving one candidate to another."""
    fixed = tuple(fixed.images) if isinstance(fixed, Embedding) else tuple(fixed)
    cands = [K.convert(c) for c in candidates]
    if len(cands) < 2:
        return None
    for sigma in iter_embeddings(K, K):
        if any(sigma(a) != a for a in fixed):
            continue
        for c in cands:
            img = sigma(c)
            if img != c and img in cands:
                return sigma
    return None


def theta_iso(F: FieldTower, K: FieldTower, budget: int = THETA_TEMPLATE_BUDGET):
    """Run Theta on F and K; the template budget applies per source generator.

    A factorization that outgrows its degree budget ends the run as BudgetExhausted.
    """
    part = Embedding(F.prefix(0), K, ())
    witnesses = []
    for i in range(F.depth):
        survivors = []
        try:
            part, survivors = _step(F, K, part, i, budget, witnesses)
        except DegreeBudgetExceeded:
            return BudgetExhausted(i, tuple(survivors), tuple(witnesses))
        if isinstance(part, (Diverged, BudgetExhausted)):
            return part
    return Total(part, tuple(witnesses))


def _step(F, K, part, i, budget, witnesses):
    """Map generator i; returns (extended embedding or final outcome, survivors)."""
    survivors = list(roots(K, part.map_poly(F.minpolys[i])))
    if len(survivors) > 1:
        xs = F.gens()[:i + 1]
        for tried, cs in enumerate(templates(i + 1)):
            if tried >= budget or len(survivors) <= 1:
                break
            left = is_square(F, _linear(F, cs, xs))
            keep = []
            for y in survivors:
                if is_square(K, _linear(K, cs, part.images + (y,))) == left:
                    keep.append(y)
                else:
                    witnesses.append(Witness(i, y, cs, left))
            survivors = keep
    if len(survivors) == 1:
        return part.extend(survivors[0], F.prefix(i + 1)), survivors
    if len(survivors) > 1:
        cert = divergence_certificate(K, part, survivors)
        if cert is not None:
            return Diverged(i, cert, tuple(survivors), tuple(witnesses)), survivors
    return BudgetExhausted(i, tuple(survivors), tuple(witnesses)), survivors


def verify_witness(F: FieldTower, K: FieldTower, partial: Embedding, w: Witness) -> bool:
    """Re-check that a witness separates its candidate from the source side."""
    xs = F.gens()[:w.element + 1]
    left = is_square(F, _linear(F, w.coeffs, xs))
    right = is_square(K, _linear(K, w.coeffs, tuple(partial.images[:w.element]) + (w.candidate,)))
    return left == w.source_side and left != right


def verify_total(F: FieldTower, K: FieldTower, out: Total) -> bool:
    """The map is an embedding, and for equal degrees an inverse embedding exists."""
    if not out.iso.verify():
        return False
    if F.degree == K.degree:
        return next(iter_embeddings(K, F), None) is not None
    return True


def verify_certificate(K: FieldTower, out: Diverged, fixed) -> bool:
    sigma = out.certificate
    if sigma.source is not K or sigma.target is not K or not sigma.verify():
        return False
    return all(sigma(a) == a for a in fixed) and any(
        sigma(c) != c and sigma(c) in out.survivors for c in out.survivors)


def describe(out) -> str:
    if isinstance(out, Total):
        return "Total " + ", ".join(f"{n} -> {img}" for n, img in zip(out.iso.source.names, out.iso.images))
    if isinstance(out, Diverged):
        pairs = ", ".join(f"{n} -> {img}" for n, img in zip(out.certificate.source.names, out.certificate.images))
        return f"Diverged at generator {out.element}; certificate {pairs}"
    return f"BudgetExhausted at generator {out.element}; {len(out.survivors)} candidates survive"
