"""Finite towers of algebraic extensions of the rationals with exact elements.

A tower ``Q = F_0 < F_1 < ... < F_n`` adjoins generators ``a0, a1, ...``,
each a root of a monic irreducible polynomial over the field below.  Elements
are coordinate vectors on the power-product basis ``a0^e0 * a1^e1 * ...``
(``e_k < deg_k``), flattened with the lowest generator varying fastest, so an
element of ``F_k`` is literally a prefix of the coordinate vector in ``F_n``.

Internally each generator is rescaled to ``b_k = M_k * a_k`` with ``M_k`` an
integer chosen so that every step polynomial has integral coordinates.  An
element is then a tuple of integer numerators over one positive common
denominator, and products never leave integer arithmetic until the final
normalization.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from isoclass.arith import zz
from isoclass.arith.poly import QQ, Poly


class _Level:
    """Data of one tower step; shared by every tower that contains the step."""

    __slots__ = ("name", "d", "M", "c", "c_scalar", "below", "size", "minpoly",
                 "tower", "sig", "scale")

    def __repr__(self):
        return f"_Level({self.name}, d={self.d})"


def _vgcd(v, den=0):
    g = den
    for x in v:
        if x:
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


def _add(a, b):
    return [x + y for x, y in zip(a, b)]


def _sub(a, b):
    return [x - y for x, y in zip(a, b)]


def _is_scalar(v):
    return not any(v[1:])


def _mul(levels, k, a, b):
    """Product of two integer coordinate vectors of the level-k field."""
    if k == 0:
        return [a[0] * b[0]]
    if _is_scalar(a):
        c = a[0]
        return [c * y for y in b] if c else [0] * len(b)
    if _is_scalar(b):
        c = b[0]
        return [c * x for x in a] if c else [0] * len(a)
    L = levels[k - 1]
    d, s = L.d, L.below
    if s == 1:
        prod = zz.kmul(a, b)
        prod += [0] * (2 * d - 1 - len(prod))
        return _reduce_ints(prod, L)
    A = [a[j * s:(j + 1) * s] for j in range(d)]
    B = [b[j * s:(j + 1) * s] for j in range(d)]
    zero = [0] * s
    C = [None] * (2 * d - 1)
    if d == 2:
        a0, a1 = A
        b0, b1 = B
        nz_a1, nz_b1 = any(a1), any(b1)
        p00 = _mul(levels, k - 1, a0, b0)
        if nz_a1 and nz_b1:
            p11 = _mul(levels, k - 1, a1, b1)
            mid = _mul(levels, k - 1, _add(a0, a1), _add(b0, b1))
            C = [p00, _sub(_sub(mid, p00), p11), p11]
        elif nz_a1:
            C = [p00, _mul(levels, k - 1, a1, b0), None]
        elif nz_b1:
            C = [p00, _mul(levels, k - 1, a0, b1), None]
        else:
            return p00 + zero
    else:
        nzA = [any(x) for x in A]
        nzB = [any(x) for x in B]
        for i in range(d):
            if not nzA[i]:
                continue
            for j in range(d):
                if not nzB[j]:
                    continue
                t = _mul(levels, k - 1, A[i], B[j])
                C[i + j] = t if C[i + j] is None else _add(C[i + j], t)
    # reduce with b^d = -sum c_j b^j
    for m in range(2 * d - 2, d - 1, -1):
        cm = C[m]
        if cm is None or not any(cm):
            continue
        for j in range(d):
            cj = L.c[j]
            if L.c_scalar[j] is not None:
                sc = L.c_scalar[j]
                if not sc:
                    continue
                t = [sc * x for x in cm]
            else:
                t = _mul(levels, k - 1, cm, cj)
            tgt = C[m - d + j]
            C[m - d + j] = [-x for x in t] if tgt is None else _sub(tgt, t)
    out = []
    for j in range(d):
        out.extend(C[j] if C[j] is not None else zero)
    return out


def _reduce_ints(prod, L):
    # prod: integer polynomial in b (single-step level over Q), length >= d
    d = L.d
    c = [v[0] for v in L.c]
    for m in range(len(prod) - 1, d - 1, -1):
        t = prod[m]
        if t:
            for j in range(d):
                if c[j]:
                    prod[m - d + j] -= t * c[j]
            prod[m] = 0
    return prod[:d]


def _inv(tower, k, a):
    """Inverse of a nonzero level-k integer vector as (numerators, den)."""
    levels = tower._levels
    if k == 0:
        x = a[0]
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return ([1], x) if x > 0 else ([-1], -x)
    if _is_scalar(a):
        x = a[0]
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        v = [0] * len(a)
        v[0] = 1 if x > 0 else -1
        return v, abs(x)
    L = levels[k - 1]
    d, s = L.d, L.below
    if d == 2:
        z0, z1 = a[:s], a[s:]
        c0, c1 = L.c
        if any(c1):
            conj0 = _sub(z0, _mul(levels, k - 1, c1, z1))
        else:
            conj0 = z0
        conj1 = [-x for x in z1]
        N = _add(_mul(levels, k - 1, z0, conj0), _mul(levels, k - 1, c0, _mul(levels, k - 1, z1, z1)))
        ninv, nden = _inv(tower, k - 1, N)
        out = _mul(levels, k - 1, conj0, ninv) + _mul(levels, k - 1, conj1, ninv)
        return out, nden
    # general step: extended gcd over the field below
    sub = tower.prefix(k - 1)
    zpoly = Poly._raw([FieldElt._make(sub, tuple(a[j * s:(j + 1) * s]), 1) for j in range(d)], sub)
    mpoly = Poly._raw([FieldElt._make(sub, tuple(cj), 1) for cj in L.c] + [sub.one], sub)
    g, u, _ = zpoly.gcdex(mpoly)
    if g.degree != 0:
        raise ZeroDivisionError("element is not invertible")
    coeffs = list(u.coeffs) + [sub.zero] * (d - len(u.coeffs))
    den = reduce(lcm, (e.d for e in coeffs), 1)
    out = []
    for e in coeffs:
        f = den // e.d
        out.extend(x * f for x in e.n)
    return out, den


class FieldTower:
    """A tower of fields over Q; immutable, compared structurally."""

    __slots__ = ("_levels", "_scale", "_gens", "_zero", "_one", "__weakref__", "_hash", "_cache")

    def __init__(self, _levels=()):
        self._levels = tuple(_levels)
        self._hash = None
        self._cache = {}
        D = self.degree
        if self._levels:
            self._scale = self._levels[-1].scale
        else:
            self._scale = (1,)
        self._zero = FieldElt._make(self, (0,) * D, 1)
        self._one = FieldElt._make(self, (1,) + (0,) * (D - 1), 1)
        self._gens = None

    # -- construction --------------------------------------------------------------

    @classmethod
    def from_steps(cls, steps, check: bool = True) -> "FieldTower":
        """Build from ``[(name, poly_text_or_Poly), ...]``."""
        from isoclass.arith.text import parse_poly
        F = RATIONALS
        for name, p in steps:
            if isinstance(p, str):
                p = parse_poly(p, F, var=None)
            F = F.extend(p, name=name, check=check)
        return F

    def extend(self, p: Poly, name: str | None = None, check: bool = True) -> "FieldTower":
        from isoclass.errors import DegenerateInput, Reducible
        if not isinstance(p, Poly):
            from isoclass.arith.text import parse_poly
            p = parse_poly(p, self)
        if p.dom is not self:
            p = p.change_domain(self)
        if p.degree < 2:
            raise DegenerateInput(f"step polynomial must have degree >= 2, got {p}")
        p = p.monic()
        if check:
            from isoclass.field.factor import factor_over_field
            fac = factor_over_field(self, p)
            if not fac.is_irreducible():
                raise Reducible(p, fac)
        # equal extensions share one object, so per-tower caches are reused
        key = ("ext", tuple((c.n, c.d) for c in p.coeffs), name)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if name is None:
            name = f"a{self.depth}"
        if name in self.names:
            raise DegenerateInput(f"generator name {name!r} already used")
        F = FieldTower._with_level(self, p, name)
        self._cache[key] = F
        return F

    @staticmethod
    def _with_level(base: "FieldTower", p: Poly, name: str) -> "FieldTower":
        d = p.degree
        coeffs = p.coeffs[:-1]
        M = reduce(lcm, (c.d for c in coeffs), 1)
        D = base.degree
        L = _Level()
        L.name, L.d, L.M, L.below, L.size = name, d, M, D, D * d
        cs = []
        for j, c in enumerate(coeffs):
            f = M ** (d - j)
            cs.append([x * f // c.d for x in c.n])
        L.c = cs
        L.c_scalar = [v[0] if _is_scalar(v) else None for v in cs]
        L.minpoly = p
        L.sig = (name, d, M, tuple(tuple(v) for v in cs))
        base_scale = base._scale
        L.scale = tuple(s * M ** j for j in range(d) for s in base_scale)
        T = FieldTower(base._levels + (L,))
        L.tower = T
        return T

    # -- structure -------------------------------------------------------------------

    @property
    def depth(self) -> int:
        return len(self._levels)

    @property
    def degree(self) -> int:
        return self._levels[-1].size if self._levels else 1

    @property
    def degrees(self) -> tuple:
        return tuple(L.d for L in self._levels)

    @property
    def names(self) -> tuple:
        return tuple(L.name for L in self._levels)

    @property
    def minpolys(self) -> tuple:
        return tuple(L.minpoly for L in self._levels)

    def steps(self):
        return [(L.name, L.minpoly) for L in self._levels]

    def prefix(self, k: int) -> "FieldTower":
        if k == self.depth:
            return self
        if k == 0:
            return RATIONALS
        return self._levels[k - 1].tower

    def is_prefix_of(self, other: "FieldTower") -> bool:
        k = self.depth
        if k > other.depth:
            return False
        if k == 0:
            return True
        if other._levels[k - 1] is self._levels[-1]:
            return True
        return self.signature() == other.prefix(k).signature()

    def signature(self):
        return tuple(L.sig for L in self._levels)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldTower):
            return NotImplemented
        return self.signature() == other.signature()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.signature())
        return self._hash

    def __repr__(self):
        if not self._levels:
            return "FieldTower(Q)"
        inner = ", ".join(f"{L.name}: {L.minpoly}" for L in self._levels)
        return f"FieldTower({inner})"

    # -- elements ----------------------------------------------------------------------

    @property
    def zero(self) -> "FieldElt":
        return self._zero

    @property
    def one(self) -> "FieldElt":
        return self._one

    def gen(self, i: int) -> "FieldElt":
        if self._gens is None:
            gens = []
            for k, L in enumerate(self._levels):
                v = [0] * self.degree
                v[L.below] = 1
                gens.append(FieldElt._make(self, tuple(v), 1)._scaled(Fraction(1, L.M)))
            self._gens = tuple(gens)
        return self._gens[i]

    def gens(self):
        return [self.gen(i) for i in range(self.depth)]

    def convert(self, x) -> "FieldElt":
        if isinstance(x, FieldElt):
            if x.F is self:
                return x
            if x.F.is_prefix_of(self):
                return FieldElt._make(self, x.n + (0,) * (self.degree - len(x.n)), x.d)
            raise TypeError(f"element of {x.F} is not in {self}")
        if isinstance(x, int):
            return FieldElt._make(self, (x,) + (0,) * (self.degree - 1), 1)
        if isinstance(x, Fraction):
            return FieldElt._make(self, (x.numerator,) + (0,) * (self.degree - 1), x.denominator)
        if isinstance(x, str):
            from isoclass.arith.text import parse_element
            return parse_element(x, self)
        raise TypeError(f"cannot convert {x!r} into {self}")

    def __call__(self, x) -> "FieldElt":
        return self.convert(x)

    def from_coords(self, coords) -> "FieldElt":
        """Element with the given user coordinates on the power-product basis."""
        coords = [Fraction(c) for c in coords]
        if len(coords) != self.degree:
            raise ValueError("wrong number of coordinates")
        den = reduce(lcm, (c.denominator * s for c, s in zip(coords, self._scale) if c), 1)
        n = tuple(int(c * den / s) for c, s in zip(coords, self._scale))
        return FieldElt.normalized(self, n, den)

    def monomial_names(self):
        """Text of each basis monomial, in coordinate order ("" for 1)."""
        if "mon" in self._cache:
            return self._cache["mon"]
        mons = [""]
        for L in self._levels:
            new = []
            for j in range(L.d):
                g = "" if j == 0 else (L.name if j == 1 else f"{L.name}^{j}")
                for m in mons:
                    new.append("*".join(x for x in (m, g) if x))
            mons = new
        self._cache["mon"] = mons
        return mons

    def elt_terms(self, c: "FieldElt"):
        mons = self.monomial_names()
        return [(q, mons[i]) for i, q in enumerate(c.coords()) if q]

    @staticmethod
    def elt_key(c: "FieldElt"):
        return tuple((q.numerator, q.denominator) for q in c.coords())

    def element_from_text(self, text: str) -> "FieldElt":
        from isoclass.arith.text import parse_element
        return parse_element(text, self)

    def poly(self, text: str, var: str | None = None) -> Poly:
        from isoclass.arith.text import parse_poly
        return parse_poly(text, self, var)


class FieldElt:
    """An element of a FieldTower: integer numerators over a common denominator."""

    __slots__ = ("F", "n", "d", "_user")

    @staticmethod
    def _make(F, n, d):
        e = object.__new__(FieldElt)
        e.F = F
        e.n = n
        e.d = d
        e._user = None
        return e

    @staticmethod
    def normalized(F, n, d):
        if d < 0:
            n = [-x for x in n]
            d = -d
        g = _vgcd(n, d)
        if g > 1:
            n = [x // g for x in n]
            d //= g
        return FieldElt._make(F, tuple(n), d)

    # -- coordinates ----------------------------------------------------------------------

    def coords(self) -> tuple:
        """User coordinates (Fractions) on the power-product basis of the generators."""
        if self._user is None:
            self._user = tuple(Fraction(x * s, self.d) if x else Fraction(0)
                               for x, s in zip(self.n, self.F._scale))
        return self._user

    def is_rational(self) -> bool:
        return not any(self.n[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.n[0], self.d)

    def level(self) -> int:
        """Smallest k with this element in the k-th prefix field."""
        last = max((i for i, x in enumerate(self.n) if x), default=0)
        if last == 0:
            return 0
        for k, L in enumerate(self.F._levels):
            if last < L.size:
                return k + 1
        return self.F.depth

    def restrict(self, k: int) -> "FieldElt":
        """The same element viewed in prefix(k); it must lie there."""
        sub = self.F.prefix(k)
        D = sub.degree
        if any(self.n[D:]):
            raise ValueError("element does not lie in the requested subfield")
        return FieldElt._make(sub, self.n[:D], self.d)

    # -- arithmetic -------------------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElt):
            if other.F is self.F:
                return other
            if other.F.is_prefix_of(self.F):
                return self.F.convert(other)
            if self.F.is_prefix_of(other.F):
                return None
            raise TypeError("elements of unrelated towers")
        if isinstance(other, (int, Fraction)):
            return self.F.convert(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.d == o.d:
            return FieldElt.normalized(self.F, [x + y for x, y in zip(self.n, o.n)], self.d)
        return FieldElt.normalized(self.F, [x * o.d + y * self.d for x, y in zip(self.n, o.n)],
                                   self.d * o.d)

    __radd__ = __add__

    def __neg__(self):
        return FieldElt._make(self.F, tuple(-x for x in self.n), self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scaled(Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = _mul(self.F._levels, self.F.depth, list(self.n), list(o.n))
        return FieldElt.normalized(self.F, prod, self.d * o.d)

    __rmul__ = __mul__

    def _scaled(self, q: Fraction):
        if not q:
            return self.F.zero
        return FieldElt.normalized(self.F, [x * q.numerator for x in self.n], self.d * q.denominator)

    def inverse(self):
        if not any(self.n):
            raise ZeroDivisionError("inverse of zero")
        v, den = _inv(self.F, self.F.depth, list(self.n))
        return FieldElt.normalized(self.F, [x * self.d for x in v], den)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self._scaled(1 / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.F.convert(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.F.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __bool__(self):
        return any(self.n)

    def __eq__(self, other):
        if isinstance(other, FieldElt):
            if other.F is self.F or other.F == self.F:
                return self.n == other.n and self.d == other.d
            if other.F.is_prefix_of(self.F):
                o = self.F.convert(other)
                return self.n == o.n and self.d == o.d
            if self.F.is_prefix_of(other.F):
                return other == self
            return False
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.n[0], self.d) == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.n[0], self.d))
        return hash((self.n, self.d))

    def sort_key(self):
        return FieldTower.elt_key(self)

    def __str__(self):
        from isoclass.arith.text import format_element
        return format_element(self.F, self)

    def __repr__(self):
        return f"FieldElt({str(self)!r})"


RATIONALS = FieldTower()


def extend_field(F: FieldTower, p, name: str | None = None) -> FieldTower:
    """Adjoin a root of p (monic irreducible over F); raises Reducible otherwise."""
    return F.extend(p, name=name, check=True)


def tower(*steps, names=None) -> FieldTower:
    """Convenience: ``tower("X^2-2", "X^2-a0")`` builds Q(2^(1/4)) as two steps."""
    F = RATIONALS
    for k, s in enumerate(steps):
        F = F.extend(s, name=None if names is None else names[k])
    return F
