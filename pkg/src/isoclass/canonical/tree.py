"""The canonical node family {F_sigma, f_sigma} and the codecs Gamma and Phi.

Each node sigma carries a field F_sigma and offers one polynomial f_sigma.
Bit 1 adjoins a root of f_sigma, bit 0 refuses it for good: no field further
down that branch may contain one of its roots.
"""

from __future__ import annotations

import threading
from itertools import combinations, product

from isoclass.arith.poly import Poly
from isoclass.arith.text import parse_poly
from isoclass.canonical.config import EnumerationConfig
from isoclass.errors import FallbackExhausted
from isoclass.field.embed import Embedding
from isoclass.field.factor import has_root, is_irreducible_over, roots
from isoclass.field.tower import RATIONALS, FieldTower

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n ** 0.5) + 1))


class CanonicalNode:
    """Node sigma of the canonical tree.

    ``accepted`` maps prefix indices to the generator index of the root they
    contributed; ``dead`` holds prefix indices that can never again be offered
    on this branch (already offered, or reducible / conflicting for good).
    """

    __slots__ = ("sigma", "field", "refused", "accepted", "dead", "_chosen", "_source", "_lock")

    def __init__(self, sigma, field, refused, accepted, dead):
        self.sigma = sigma
        self.field = field
        self.refused = refused
        self.accepted = accepted
        self.dead = dead
        self._chosen = None
        self._source = None
        self._lock = threading.Lock()

    @property
    def depth(self) -> int:
        return len(self.sigma)

    def __repr__(self):
        return f"CanonicalNode({self.sigma!r}, {self.field})"


def _refusal_free(F1: FieldTower, refused) -> bool:
    return not any(has_root(F1, g.change_domain(F1)) for g in refused)


def eligible(F: FieldTower, f: Poly, refused) -> bool:
    """Monic, prime degree, irreducible over F, and adjoining a root of f
    produces no root of any refused polynomial."""
    if f.degree < 2 or not _is_prime(f.degree) or f.lc != F.one:
        return False
    if not is_irreducible_over(F, f):
        return False
    return _refusal_free(F.extend(f, check=False), refused)


def fallback_candidates(F: FieldTower, max_degree: int, max_height: int):
    """Monic prime-degree polynomials over F with integer coordinates.

    Ordered by degree, then height (largest absolute coordinate), then the
    number of nonzero coordinates, then position (constant term first, lower
    basis monomials first) and values in the order -1, 1, -2, 2, ...
    """
    D = F.degree
    for p in (q for q in _PRIMES if q <= max_degree):
        slots = p * D
        for H in range(1, max_height + 1):
            values = [v for a in range(1, H + 1) for v in (-a, a)]
            for s in range(1, slots + 1):
                for pos in combinations(range(slots), s):
                    for vals in product(values, repeat=s):
                        if max(abs(v) for v in vals) != H:
                            continue
                        coords = [0] * slots
                        for i, v in zip(pos, vals):
                            coords[i] = v
                        coeffs = [F.from_coords(coords[j * D:(j + 1) * D]) for j in range(p)]
                        yield Poly._raw(tuple(coeffs) + (F.one,), F)


class CanonicalTree:
    """Memoized canonical tree for one configuration.

    The cache only saves work: a node's content depends on (sigma, cfg) alone.
    """

    def __init__(self, cfg: EnumerationConfig):
        self.cfg = cfg
        self._nodes = {"": CanonicalNode("", RATIONALS, (), {}, frozenset())}
        self._lock = threading.Lock()

    def node(self, sigma: str) -> CanonicalNode:
        nd = self._nodes.get(sigma)
        if nd is not None:
            return nd
        parent = self.node(sigma[:-1])
        child = self._child(parent, sigma[-1])
        with self._lock:
            return self._nodes.setdefault(sigma, child)

    def _child(self, parent: CanonicalNode, bit: str) -> CanonicalNode:
        f = self.offered(parent)
        src = parent._source
        dead = parent.dead | ({src} if src is not None else set())
        if bit == "1":
            F = parent.field.extend(f, check=False)
            accepted = dict(parent.accepted)
            if src is not None:
                accepted[src] = F.depth - 1
            return CanonicalNode(parent.sigma + "1", F, parent.refused, accepted, frozenset(dead))
        if bit != "0":
            raise ValueError(f"not a bit: {bit!r}")
        return CanonicalNode(parent.sigma + "0", parent.field, parent.refused + (f,),
                             parent.accepted, frozenset(dead))

    def offered(self, nd: CanonicalNode) -> Poly:
        """f_sigma: the first eligible candidate, prefix templates before the fallback."""
        if nd._chosen is not None:
            return nd._chosen
        with nd._lock:
            if nd._chosen is None:
                nd._chosen, nd._source, extra_dead = self._select(nd)
                nd.dead = nd.dead | extra_dead
        return nd._chosen

    def _template(self, nd: CanonicalNode, k: int):
        need = self.cfg.roots_of(k)
        if not need <= nd.accepted.keys():
            return None
        F = nd.field
        symbols = {f"r{j}": F.gen(nd.accepted[j]) for j in need}
        return parse_poly(self.cfg.prefix[k], F, None, symbols)

    def _select(self, nd: CanonicalNode):
        F = nd.field
        newly_dead = set()
        for k in range(len(self.cfg.prefix)):
            if k in nd.dead:
                continue
            f = self._template(nd, k)
            if f is None:
                continue
            if eligible(F, f, nd.refused):
                return f, k, frozenset(newly_dead)
            # reducibility and refusal conflicts persist in every extension
            newly_dead.add(k)
        for f in fallback_candidates(F, self.cfg.max_degree, self.cfg.max_height):
            if eligible(F, f, nd.refused):
                return f, None, frozenset(newly_dead)
        raise FallbackExhausted(
            f"no eligible polynomial of degree <= {self.cfg.max_degree} and height <= "
            f"{self.cfg.max_height} at node {nd.sigma!r}")


_TREES: dict = {}
_TREES_LOCK = threading.Lock()


def canonical_tree(cfg: EnumerationConfig) -> CanonicalTree:
    t = _TREES.get(cfg)
    if t is None:
        with _TREES_LOCK:
            t = _TREES.setdefault(cfg, CanonicalTree(cfg))
    return t


def node(sigma: str, cfg: EnumerationConfig) -> CanonicalNode:
    return canonical_tree(cfg).node(sigma)


def select_f_sigma(nd: CanonicalNode, cfg: EnumerationConfig) -> Poly:
    return canonical_tree(cfg).offered(nd)


def offered_poly(sigma: str, cfg: EnumerationConfig) -> Poly:
    t = canonical_tree(cfg)
    return t.offered(t.node(sigma))


def phi_decode(h: str, cfg: EnumerationConfig) -> FieldTower:
    """F_h: the field at the node reached by following h from the root."""
    return node(h, cfg).field


def _height(q) -> int:
    return max(abs(q.numerator), q.denominator)


def presentation_key(e):
    """Position of e in a fixed enumeration of the tower's elements.

    Smaller height first, then fewer nonzero coordinates, then comparison
    from the highest basis monomial down with v before -v.  Under this order
    a tower generator is the least root of its own minimal polynomial.
    """
    cs = e.coords()
    return (max((_height(q) for q in cs if q), default=0),
            sum(1 for q in cs if q),
            tuple((abs(q), q < 0) for q in reversed(cs)))


def gamma_trace(F: FieldTower, m: int, cfg: EnumerationConfig):
    """(bits, g): the first m bits of Gamma(F) and the embedding g: F_sigma -> F."""
    t = canonical_tree(cfg)
    g = Embedding(RATIONALS, F, ())
    bits = []
    for _ in range(m):
        nd = t.node("".join(bits))
        f = t.offered(nd)
        rs = roots(F, g.map_poly(f))
        if rs:
            child = t.node(nd.sigma + "1")
            g = g.extend(min(rs, key=presentation_key), child.field)
            bits.append("1")
        else:
            bits.append("0")
    return "".join(bits), g


def gamma_encode(F: FieldTower, m: int, cfg: EnumerationConfig) -> str:
    return gamma_trace(F, m, cfg)[0]
