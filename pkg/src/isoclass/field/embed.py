"""Field embeddings between towers, automorphism groups and isomorphism tests."""

from __future__ import annotations

from dataclasses import dataclass

from isoclass.arith.poly import Poly
from isoclass.field.factor import roots
from isoclass.field.tower import FieldElt, FieldTower


@dataclass(frozen=True, eq=False)
class Embedding:
    """A field homomorphism determined by the images of the source generators.

    ``source`` may be a prefix of a larger tower; the map is then a partial
    embedding defined on that prefix only.
    """

    source: FieldTower
    target: FieldTower
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.source.depth:
            raise ValueError("one image per source generator is required")

    def _internal_images(self):
        imgs = self.__dict__.get("_bimgs")
        if imgs is None:
            imgs = [img * L.M for img, L in zip(self.images, self.source._levels)]
            object.__setattr__(self, "_bimgs", imgs)
        return imgs

    def _eval(self, k, vec):
        T = self.target
        if k == 0:
            return T.convert(vec[0])
        L = self.source._levels[k - 1]
        s = L.below
        B = self._internal_images()[k - 1]
        acc = None
        for j in range(L.d - 1, -1, -1):
            chunk = vec[j * s:(j + 1) * s]
            if acc is not None:
                acc = acc * B
            if any(chunk):
                term = self._eval(k - 1, chunk)
                acc = term if acc is None else acc + term
        return acc if acc is not None else T.zero

    def __call__(self, x) -> FieldElt:
        if not isinstance(x, FieldElt):
            return self.target.convert(x)
        if x.F is not self.source and not x.F.is_prefix_of(self.source):
            if not self.source.is_prefix_of(x.F):
                raise TypeError("element is not in the source field")
            x = x.restrict(self.source.depth)
        x = self.source.convert(x)
        k = x.level()
        return self._eval(k, x.n[:x.F.prefix(k).degree]) / x.d

    def map_poly(self, p: Poly) -> Poly:
        return Poly._raw([self(c) for c in p.coeffs], self.target)

    def restrict(self, k: int) -> "Embedding":
        return Embedding(self.source.prefix(k), self.target, self.images[:k])

    def extend(self, image: FieldElt, source: FieldTower) -> "Embedding":
        return Embedding(source, self.target, self.images + (image,))

    def verify(self) -> bool:
        """Each image is a root of its generator's minimal polynomial mapped so far."""
        for k, L in enumerate(self.source._levels):
            part = self.restrict(k)
            if part.map_poly(L.minpoly)(self.images[k]):
                return False
        return True

    def compose(self, inner: "Embedding") -> "Embedding":
        """self after inner (inner.target must be self.source)."""
        return Embedding(inner.source, self.target, tuple(self(img) for img in inner.images))

    def is_identity(self) -> bool:
        return self.source == self.target and all(
            img == self.target.gen(i) for i, img in enumerate(self.images))

    def __eq__(self, other):
        return (isinstance(other, Embedding) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self):
        return hash(tuple((img.n, img.d) for img in self.images))

    def __repr__(self):
        pairs = ", ".join(f"{n} -> {img}" for n, img in zip(self.source.names, self.images))
        return f"Embedding({pairs})"


def iter_embeddings(F: FieldTower, K: FieldTower, fixed: Embedding | None = None):
    """All embeddings F -> K, optionally extending a partial embedding of a prefix."""
    if K.degree % F.degree:
        return
    start = fixed if fixed is not None else Embedding(F.prefix(0), K, ())

    def rec(part: Embedding):
        k = part.source.depth
        if k == F.depth:
            yield Embedding(F, K, part.images)
            return
        mp = part.map_poly(F._levels[k].minpoly)
        for r in roots(K, mp):
            yield from rec(part.extend(r, F.prefix(k + 1)))

    yield from rec(start)


def embeddings_into(F: FieldTower, K: FieldTower) -> list:
    return list(iter_embeddings(F, K))


def automorphisms(F: FieldTower) -> list:
    return embeddings_into(F, F)


def is_isomorphic(F: FieldTower, K: FieldTower) -> bool:
    if F.degree != K.degree:
        return False
    return next(iter_embeddings(F, K), None) is not None


def find_isomorphism(F: FieldTower, K: FieldTower):
    if F.degree != K.degree:
        return None
    return next(iter_embeddings(F, K), None)
