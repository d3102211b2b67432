"""Factorization of rational polynomials.

Squarefree decomposition, then Zassenhaus: factor modulo a well-chosen small
prime (Cantor-Zassenhaus), Hensel-lift the local factors past a coefficient
bound, and recombine subsets of local factors by trial division.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, isqrt

from isoclass.arith import modp, zz
from isoclass.arith.poly import QQ, Poly
from isoclass.errors import DegenerateInput


@dataclass(frozen=True)
class Factorization:
    """``unit * prod(f**m for f, m in factors)``; factors monic, canonically ordered."""

    unit: object
    factors: tuple

    def expand(self) -> Poly:
        dom = self.factors[0][0].dom if self.factors else QQ
        acc = Poly([self.unit], dom)
        for f, m in self.factors:
            acc = acc * f ** m
        return acc

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def is_irreducible(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def __str__(self):
        parts = [] if self.unit == 1 else [str(self.unit)]
        for f, m in self.factors:
            s = f"({f})"
            parts.append(s if m == 1 else f"{s}^{m}")
        return "*".join(parts) or "1"


# -- primes ---------------------------------------------------------------------

_PRIMES: list[int] = []


def small_primes(limit: int = 20000) -> list[int]:
    global _PRIMES
    if not _PRIMES or _PRIMES[-1] < limit // 2:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for i in range(2, int(limit ** 0.5) + 1):
            if sieve[i]:
                sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
        _PRIMES = [i for i, v in enumerate(sieve) if v]
    return _PRIMES


def nth_prime(n: int) -> int:
    ps = small_primes()
    while n >= len(ps):
        ps = small_primes(2 * ps[-1])
    return ps[n]


# -- finite field factorization ----------------------------------------------------


def squarefree_modp(f, p) -> bool:
    df = zz.to_modp([i * c for i, c in enumerate(f)][1:], p)
    if not df:
        return False
    return len(modp.pgcd(f, df, p)) == 1


def ddf(f, p):
    """Distinct-degree factorization of a monic squarefree f over Z/p."""
    out = []
    x = [0, 1]
    h = x
    i = 0
    cur = list(f)
    while 2 * (i + 1) <= len(cur) - 1:
        i += 1
        h = modp.ppowmod(h, p, cur, p)
        g = modp.pgcd(cur, zz.to_modp(zz.sub(h, x), p), p)
        if len(g) > 1:
            out.append((g, i))
            cur = modp.pdivmod(cur, g, p)[0]
            h = modp.prem(h, cur, p)
    if len(cur) > 1:
        out.append((cur, len(cur) - 1))
    return out


def edf(g, d, p, rng):
    """Equal-degree split of g (all factors of degree d) over Z/p, p odd."""
    n = len(g) - 1
    if n == d:
        return [g]
    e = (p ** d - 1) // 2
    while True:
        a = zz.trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        b = modp.ppowmod(a, e, g, p)
        b = zz.to_modp(zz.sub(b, [1]), p)
        u = modp.pgcd(g, b, p)
        if 1 < len(u) < len(g):
            v = modp.pdivmod(g, u, p)[0]
            return edf(u, d, p, rng) + edf(modp.pmonic(v, p), d, p, rng)


def factor_modp(f, p, rng):
    out = []
    for g, d in ddf(f, p):
        out.extend(edf(g, d, p, rng))
    return out


def _degree_sums(degs):
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


def choose_prime(f, tries: int = 6, max_primes: int = 400):
    """Pick a good prime: fewest local factors among the first few candidates.

    Returns (p, ddf_result, allowed_degrees); allowed_degrees is the
    intersection of possible factor degrees over all primes tried.
    """
    n = len(f) - 1
    lc = f[-1]
    best = None
    allowed = None
    tried = 0
    for p in small_primes()[1:max_primes]:
        if lc % p == 0:
            continue
        fp = zz.to_modp(f, p)
        if not squarefree_modp(fp, p):
            continue
        fp = modp.pmonic(fp, p)
        dd = ddf(fp, p)
        degs = []
        for g, d in dd:
            degs.extend([d] * ((len(g) - 1) // d))
        sums = _degree_sums(degs)
        allowed = sums if allowed is None else allowed & sums
        if best is None or len(degs) < best[2]:
            best = (p, dd, len(degs))
        tried += 1
        if len(degs) == 1 or allowed == {0, n} or tried >= tries:
            break
    if best is None:
        raise RuntimeError("no suitable prime found")
    return best[0], best[1], allowed


# -- Hensel lifting -------------------------------------------------------------------


def _hensel_step(f, g, h, s, t, m):
    """Lift f = g*h mod m (h monic, s*g + t*h = 1 mod m) to modulus m**2."""
    M = m * m
    e = zz.reduce_mod(zz.sub(f, zz.kmul(g, h)), M)
    q, r = zz.divmod_monic(zz.kmul(s, e), h, M)
    g2 = zz.reduce_mod(zz.add(zz.add(g, zz.kmul(t, e)), zz.kmul(q, g)), M)
    h2 = zz.reduce_mod(zz.add(h, r), M)
    b = zz.reduce_mod(zz.sub(zz.add(zz.kmul(s, g2), zz.kmul(t, h2)), [1]), M)
    c, d = zz.divmod_monic(zz.kmul(s, b), h2, M)
    s2 = zz.reduce_mod(zz.sub(s, d), M)
    t2 = zz.reduce_mod(zz.sub(zz.sub(t, zz.kmul(t, b)), zz.kmul(c, g2)), M)
    return g2, h2, s2, t2


def hensel_lift(f, local, p, k):
    """Lift monic local factors of f mod p to monic factors mod p**k."""
    P = p ** k
    if len(local) == 1:
        inv = pow(f[-1], -1, P)
        return [zz.reduce_mod([c * inv for c in f], P)]
    half = len(local) // 2
    left, right = local[:half], local[half:]
    g0 = [f[-1] % p]
    for u in left:
        g0 = modp.pmul(g0, u, p)
    h0 = [1]
    for u in right:
        h0 = modp.pmul(h0, u, p)
    _, s, t = zz.xgcd_modp(g0, h0, p)
    g, h, m = g0, h0, p
    fm = zz.reduce_mod(f, P)
    while m < P:
        g, h, s, t = _hensel_step(zz.reduce_mod(fm, m * m), g, h, s, t, m)
        m = m * m
    g = zz.reduce_mod(g, P)
    h = zz.reduce_mod(h, P)
    return hensel_lift(g, left, p, k) + hensel_lift(h, right, p, k)


# -- Zassenhaus over Z -------------------------------------------------------------------


def coefficient_bound(f) -> int:
    """Bound on |coefficients| of any integer factor of f (times lc)."""
    n = len(f) - 1
    return comb(n, n // 2) * zz.norm2_ceil(f) * abs(f[-1])


def _factor_squarefree_zz(f, rng):
    """Irreducible factors (primitive, positive lc) of a squarefree primitive f."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    if n == 2:
        a, b, c = f[2], f[1], f[0]
        disc = b * b - 4 * a * c
        if disc < 0 or isqrt(disc) ** 2 != disc:
            return [f]
        r = isqrt(disc)
        return sorted([zz.primitive([b + r, 2 * a]), zz.primitive([b - r, 2 * a])])
    if f[0] == 0:
        return [[0, 1]] + _factor_squarefree_zz(f[1:], rng)
    p, dd, allowed = choose_prime(f)
    nloc = sum((len(g) - 1) // d for g, d in dd)
    if nloc == 1 or allowed == {0, n}:
        return [f]
    local = []
    for g, d in dd:
        local.extend(edf(g, d, p, rng))
    local.sort(key=lambda u: (len(u), u))
    bound = 2 * coefficient_bound(f) + 1
    k = 1
    while p ** k <= bound:
        k += 1
    lifted = hensel_lift(f, local, p, k)
    return _recombine(f, lifted, p ** k, allowed)


def _recombine(f, lifted, P, allowed):
    factors = []
    rest = list(f)
    local = list(lifted)
    s = 1
    while 2 * s <= len(local):
        found = False
        n_rest = len(rest) - 1
        lc = rest[-1]
        for idx in combinations(range(len(local)), s):
            deg = sum(len(local[i]) - 1 for i in idx)
            if deg not in allowed or deg > n_rest // 1:
                continue
            # trailing-coefficient test
            tc = lc
            for i in idx:
                tc = tc * local[i][0] % P
            tc = tc - P if tc > P // 2 else tc
            if tc == 0 or (lc * rest[0]) % tc:
                continue
            g = [lc]
            for i in idx:
                g = zz.reduce_mod(zz.kmul(g, local[i]), P)
            g = zz.primitive(zz.symmetric(g, P))
            q = zz.exact_div(rest, g)
            if q is None:
                continue
            factors.append(g)
            rest = q
            chosen = set(idx)
            local = [u for i, u in enumerate(local) if i not in chosen]
            found = True
            break
        if not found:
            s += 1
    if len(rest) > 1:
        factors.append(zz.primitive(rest))
    return factors


def factor_squarefree_zz(f, seed: int = 0):
    rng = random.Random(seed)
    return _factor_squarefree_zz(zz.primitive(f), rng)


# -- public API ------------------------------------------------------------------


def _to_monic_q(g) -> Poly:
    lc = g[-1]
    return Poly._raw([Fraction(c, lc) for c in g], QQ)


def is_squarefree_fast(f, primes: int = 3) -> bool:
    """True if f (integer coefficients) is certainly squarefree (modular test)."""
    lc = f[-1]
    seen = 0
    for p in small_primes()[1:200]:
        if lc % p == 0:
            continue
        if squarefree_modp(zz.to_modp(f, p), p):
            return True
        seen += 1
        if seen >= primes:
            return False
    return False


def factor_over_q(p: Poly, seed: int = 0) -> Factorization:
    if p.dom is not QQ:
        raise TypeError("factor_over_q expects a rational polynomial")
    if p.is_zero():
        raise DegenerateInput("cannot factor the zero polynomial")
    unit = p.lc
    if p.degree == 0:
        return Factorization(unit, ())
    _, ints = p.content_primitive()
    rng = random.Random(seed)
    if is_squarefree_fast(ints):
        parts = [(ints, 1)]
    else:
        parts = [(a.content_primitive()[1], m) for a, m in p.squarefree_decomposition()]
    out = []
    for f, m in parts:
        for g in _factor_squarefree_zz(f, rng):
            out.append((_to_monic_q(g), m))
    out.sort(key=lambda fm: fm[0].sort_key())
    return Factorization(unit, tuple(out))


def is_irreducible_q(p: Poly) -> bool:
    if p.degree < 1:
        raise DegenerateInput("irreducibility of a constant polynomial is undefined")
    return factor_over_q(p).is_irreducible()
