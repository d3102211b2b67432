"""Dense univariate polynomials over the rationals or over a field tower.

Coefficients are stored lowest degree first with no trailing zeros, so the
zero polynomial is the empty tuple and has degree -1.  The coefficient domain
is either :data:`QQ` (coefficients are :class:`fractions.Fraction`) or a
:class:`~isoclass.field.tower.FieldTower` (coefficients are its elements).
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm


class RationalField:
    """The coefficient domain of rational polynomials."""

    zero = Fraction(0)
    one = Fraction(1)
    degree = 1
    names: tuple = ()

    def convert(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if hasattr(x, "to_rational"):
            return x.to_rational()
        raise TypeError(f"cannot convert {x!r} to a rational")

    @staticmethod
    def elt_key(c):
        return ((c.numerator, c.denominator),)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return "QQ"


QQ = RationalField()


class Poly:
    __slots__ = ("coeffs", "dom", "_hash")

    def __init__(self, coeffs=(), dom=QQ):
        conv = dom.convert
        cs = [conv(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.dom = dom
        self._hash = None

    @classmethod
    def _raw(cls, coeffs, dom):
        # coeffs already converted; strips trailing zeros only
        n = len(coeffs)
        while n and not coeffs[n - 1]:
            n -= 1
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs[:n])
        p.dom = dom
        p._hash = None
        return p

    @classmethod
    def monomial(cls, n, c=1, dom=QQ):
        return cls([0] * n + [c], dom)

    @classmethod
    def x(cls, dom=QQ):
        return cls([0, 1], dom)

    @classmethod
    def constant(cls, c, dom=QQ):
        return cls([c], dom)

    # -- basic accessors -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.dom.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.dom.one

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.dom.zero

    def __iter__(self):
        return iter(self.coeffs)

    # -- equality, hashing, order ------------------------------------------

    def _same_dom(self, other):
        return self.dom is other.dom or self.dom == other.dom

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs and self._same_dom(other)
        if not self.coeffs:
            return other == 0
        if len(self.coeffs) == 1:
            return self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def sort_key(self):
        """Canonical order: degree, then coefficients lowest first by (num, den)."""
        key = []
        ek = self.dom.elt_key
        for c in self.coeffs:
            key.extend(ek(c))
        return (self.degree, tuple(key))

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if not self._same_dom(other):
                # allow rational polys to mix with tower polys
                if other.dom is QQ:
                    return other.change_domain(self.dom)
                if self.dom is QQ:
                    return None
                raise TypeError(f"domain mismatch: {self.dom} vs {other.dom}")
            return other
        return Poly._raw((self.dom.convert(other),), self.dom)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] = res[i] + c
        return Poly._raw(res, self.dom)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.dom)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.dom.convert(other)
            if not c:
                return Poly._raw((), self.dom)
            return Poly._raw([x * c for x in self.coeffs], self.dom)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly._raw((), self.dom)
        res = [self.dom.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    res[i + j] = res[i + j] + x * y
        return Poly._raw(res, self.dom)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly._raw((self.dom.one,), self.dom)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        return self * c

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == self.dom.one:
            return self
        inv = self.dom.one / lc
        return Poly._raw([c * inv for c in self.coeffs[:-1]] + [self.dom.one], self.dom)

    def divmod(self, other: "Poly"):
        o = self._coerce(other)
        if o is None or not o.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        db = len(o.coeffs) - 1
        if len(r) - 1 < db:
            return Poly._raw((), self.dom), self
        b = o.coeffs
        inv = self.dom.one / b[-1]
        monic = b[-1] == self.dom.one
        q = [self.dom.zero] * (len(r) - db)
        for i in range(len(r) - 1 - db, -1, -1):
            c = r[i + db]
            if not c:
                continue
            if not monic:
                c = c * inv
            q[i] = c
            for j in range(db):
                if b[j]:
                    r[i + j] = r[i + j] - c * b[j]
            r[i + db] = self.dom.zero
        return Poly._raw(q, self.dom), Poly._raw(r[:db], self.dom)

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def divides(self, other: "Poly") -> bool:
        return not (other % self)

    # -- calculus and evaluation ------------------------------------------------

    def derivative(self) -> "Poly":
        return Poly._raw([c * i for i, c in enumerate(self.coeffs)][1:], self.dom)

    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            if isinstance(x, Poly):
                return Poly._raw((), x.dom)
            return self.dom.zero
        return acc

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly._raw((), other.dom)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shift(self, c) -> "Poly":
        """Return p(X + c) (Taylor shift)."""
        c = self.dom.convert(c)
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                cs[j] = cs[j] + c * cs[j + 1]
        return Poly._raw(cs, self.dom)

    def reverse_sign(self) -> "Poly":
        """Return p(-X)."""
        return Poly._raw([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)], self.dom)

    def change_domain(self, dom) -> "Poly":
        return Poly([dom.convert(c) for c in self.coeffs], dom)

    def map_coeffs(self, fn, dom) -> "Poly":
        return Poly._raw([fn(c) for c in self.coeffs], dom)

    # -- gcd and squarefree parts -----------------------------------------------

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, self._coerce(other)
        b = b.monic()
        while b.coeffs:
            a, b = b, (a % b).monic()
        return a.monic()

    def gcdex(self, other: "Poly"):
        """Return (g, s, t) with s*self + t*other = g, g monic."""
        one = Poly._raw((self.dom.one,), self.dom)
        zero = Poly._raw((), self.dom)
        r0, r1 = self, self._coerce(other)
        s0, s1 = one, zero
        t0, t1 = zero, one
        while r1.coeffs:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if not r0.coeffs:
            return r0, s0, t0
        inv = self.dom.one / r0.lc
        return r0 * inv, s0 * inv, t0 * inv

    def squarefree_part(self) -> "Poly":
        if self.degree < 1:
            return self.monic()
        g = self.gcd(self.derivative())
        return (self // g).monic()

    def squarefree_decomposition(self):
        """Yun's algorithm: list of (a_i, i) with self = lc * prod a_i**i."""
        if self.degree < 1:
            return []
        f = self.monic()
        out = []
        df = f.derivative()
        a0 = f.gcd(df)
        b = f // a0
        c = df // a0
        d = c - b.derivative()
        i = 1
        while b.degree > 0:
            a = b.gcd(d)
            b = b // a
            c = d // a
            if a.degree > 0:
                out.append((a.monic(), i))
            i += 1
            d = c - b.derivative()
        return out

    # -- integer views (rational domain only) -------------------------------------

    def content_primitive(self):
        """For a rational poly: (c, g) with self = c * g, g integral primitive, lc(g) > 0."""
        if not self.coeffs:
            return Fraction(0), []
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [v // g for v in ints]

    @classmethod
    def from_ints(cls, ints, dom=QQ):
        return cls._raw([Fraction(v) for v in ints], dom)

    # -- text ---------------------------------------------------------------------

    def to_text(self, var: str = "X") -> str:
        from isoclass.arith.text import format_poly
        return format_poly(self, var)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Poly({self.to_text()!r}, dom={self.dom!r})"


def poly(text: str, dom=QQ, var: str | None = None) -> Poly:
    """Parse polynomial text such as ``"X^4 - 2"``."""
    from isoclass.arith.text import parse_poly
    return parse_poly(text, dom, var)
