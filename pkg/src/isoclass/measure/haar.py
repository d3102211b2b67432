"""Haar-compatible and Lebesgue measures on the canonical Cantor tree.

Node masses are exact rationals.  Event measures explore the tree until each
branch is decided; mass still undecided at the depth horizon is reported as
the width of an interval rather than guessed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from isoclass.arith.poly import QQ, Poly
from isoclass.arith.text import format_poly
from isoclass.canonical.config import EnumerationConfig
from isoclass.canonical.tree import canonical_tree
from isoclass.errors import DegreeBudgetExceeded, DepthBudgetExceeded, NotGalois
from isoclass.field.closure import is_galois, primitive_element, rational_minpoly
from isoclass.field.factor import _direct_roots, factor_over_field, has_root
from isoclass.field.tower import FieldTower

HAAR = "haar"
LEBESGUE = "lebesgue"
EVENT_DEGREE_BUDGET = 64


@dataclass(frozen=True)
class MeasureValue:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper <= 1:
            raise ValueError(f"bad measure interval [{self.lower}, {self.upper}]")

    @classmethod
    def point(cls, q) -> "MeasureValue":
        return cls(Fraction(q), Fraction(q))

    @property
    def is_point(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> Fraction:
        if not self.is_point:
            raise ValueError("measure is undecided at this depth")
        return self.lower

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def __str__(self):
        if self.is_point:
            return str(self.lower)
        return f"[{self.lower}, {self.upper}]"

    @classmethod
    def parse(cls, text: str) -> "MeasureValue":
        text = text.strip()
        if text.startswith("["):
            lo, hi = text.strip("[]").split(",")
            return cls(Fraction(lo.strip()), Fraction(hi.strip()))
        return cls.point(Fraction(text))


# -- node masses ---------------------------------------------------------------------


def node_haar(sigma: str, cfg: EnumerationConfig) -> Fraction:
    t = canonical_tree(cfg)
    mass = Fraction(1)
    for k, bit in enumerate(sigma):
        d = t.offered(t.node(sigma[:k])).degree
        mass *= Fraction(1, d) if bit == "1" else Fraction(d - 1, d)
    return mass


def node_lebesgue(sigma: str) -> Fraction:
    return Fraction(1, 2 ** len(sigma))


def _child_masses(t, nd, kind):
    if kind == LEBESGUE:
        return Fraction(1, 2), Fraction(1, 2)
    d = t.offered(nd).degree
    return Fraction(d - 1, d), Fraction(1, d)


# -- events ------------------------------------------------------------------------------


@dataclass(frozen=True)
class HasRootOf:
    poly: Poly

    def __post_init__(self):
        if self.poly.dom is not QQ or self.poly.degree < 1:
            raise ValueError("events need a nonconstant rational polynomial")

    def target(self) -> Poly:
        return self.poly

    def __str__(self):
        return f"root-of:{format_poly(self.poly)}"


@dataclass(frozen=True)
class ContainsCopyOf:
    field: FieldTower

    def target(self) -> Poly:
        # K embeds into F iff the minimal polynomial of a primitive element has a root in F
        K = self.field
        return rational_minpoly(K, primitive_element(K))

    def __str__(self):
        return f"contains:{self.field}"


def _excluded(F: FieldTower, g: Poly, refused, budget: int) -> bool:
    if any(not (r.change_domain(F) % g) for r in refused):
        return True
    if F.degree * g.degree > budget:
        return False
    F1 = F.extend(g, check=False)
    return any(has_root(F1, r.change_domain(F1)) for r in refused)


def decide(F: FieldTower, refused, p: Poly, budget: int = EVENT_DEGREE_BUDGET) -> int:
    """+1 if F has a root of p, -1 if every irreducible factor of p over F
    forces a root of a refused polynomial, 0 if neither is established."""
    pF = p.change_domain(F)
    if _direct_roots(F, pF.monic()):
        return 1
    try:
        fac = factor_over_field(F, pF)
    except DegreeBudgetExceeded:
        return 0
    if any(f.degree == 1 for f, _ in fac):
        return 1
    if all(_excluded(F, f, refused, budget) for f, _ in fac):
        return -1
    return 0


def event_measure(ev, cfg: EnumerationConfig, kind: str = HAAR, depth: int = 8,
                  strict: bool = False, budget: int = EVENT_DEGREE_BUDGET) -> MeasureValue:
    """Measure of the event among fields, explored to the given depth.

    With ``strict`` an undecided branch at the horizon raises instead of
    widening the interval.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if kind not in (HAAR, LEBESGUE):
        raise ValueError(f"unknown measure kind {kind!r}")
    p = ev.target()
    t = canonical_tree(cfg)
    pos = Fraction(0)
    undecided = Fraction(0)
    stack = [("", Fraction(1))]
    while stack:
        sigma, mass = stack.pop()
        nd = t.node(sigma)
        verdict = decide(nd.field, nd.refused, p, budget)
        if verdict > 0:
            pos += mass
        elif verdict == 0:
            if len(sigma) >= depth:
                if strict:
                    raise DepthBudgetExceeded(f"branch {sigma!r} undecided at depth {depth}")
                undecided += mass
            else:
                m0, m1 = _child_masses(t, nd, kind)
                stack.append((sigma + "1", mass * m1))
                stack.append((sigma + "0", mass * m0))
    return MeasureValue(pos, pos + undecided)


def leaf_measure(ev, cfg: EnumerationConfig, kind: str = HAAR, depth: int = 6,
                 budget: int = EVENT_DEGREE_BUDGET) -> MeasureValue:
    """Event measure summed over all 2^depth leaves, each decided on its own."""
    p = ev.target()
    t = canonical_tree(cfg)
    pos = Fraction(0)
    undecided = Fraction(0)
    for i in range(2 ** depth):
        sigma = format(i, f"0{depth}b") if depth else ""
        mass = node_haar(sigma, cfg) if kind == HAAR else node_lebesgue(sigma)
        nd = t.node(sigma)
        v = decide(nd.field, nd.refused, p, budget)
        if v > 0:
            pos += mass
        elif v == 0:
            undecided += mass
    return MeasureValue(pos, pos + undecided)


# -- Galois check --------------------------------------------------------------------


_GEN = re.compile(r"\b([A-Za-z_]\w*)\b")


def config_for(K: FieldTower) -> EnumerationConfig:
    """A prefix offering K's own steps in order, generators renamed r0, r1, ..."""
    rename = {name: f"r{k}" for k, name in enumerate(K.names)}
    entries = []
    for name, p in K.steps():
        text = format_poly(p)
        entries.append(_GEN.sub(lambda m: rename.get(m.group(1), m.group(1)), text))
    return EnumerationConfig(tuple(entries))


@dataclass(frozen=True)
class GaloisVerdict:
    measure: MeasureValue
    expected: Fraction
    equal: bool


def galois_haar_identity_check(K: FieldTower, cfg: EnumerationConfig | None = None,
                               depth: int | None = None) -> GaloisVerdict:
    if not is_galois(K):
        raise NotGalois(f"{K} is not a Galois extension of Q")
    cfg = config_for(K) if cfg is None else cfg
    depth = K.depth + 2 if depth is None else depth
    m = event_measure(ContainsCopyOf(K), cfg, HAAR, depth)
    expected = Fraction(1, K.degree)
    return GaloisVerdict(m, expected, m.is_point and m.lower == expected)


def parse_event(text: str, load_tower=None):
    """``root-of:<poly>`` or ``contains:<tower>`` (tower as JSON, file, or step list)."""
    from isoclass.arith.text import parse_poly
    from isoclass.errors import ParseError
    kind, sep, rest = text.partition(":")
    if not sep:
        raise ParseError("events look like root-of:<poly> or contains:<tower>", text)
    kind = kind.strip()
    if kind == "root-of":
        return HasRootOf(parse_poly(rest))
    if kind == "contains":
        if load_tower is None:
            from isoclass.field.serial import load_tower
        return ContainsCopyOf(load_tower(rest))
    raise ParseError("unknown event kind", kind)
