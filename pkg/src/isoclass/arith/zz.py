"""Integer polynomial helpers: fast products and arithmetic modulo big moduli.

Polynomials are lists of Python ints, lowest degree first.
"""

from __future__ import annotations

from math import isqrt

from isoclass.arith import modp

_SCHOOLBOOK = 24


def trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _school(a, b):
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return res


def kmul(a, b):
    """Product of integer polynomials (Kronecker substitution for long inputs)."""
    if not a or not b:
        return []
    if min(len(a), len(b)) < _SCHOOLBOOK:
        return trim(_school(a, b))
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    bound = ma * mb * min(len(a), len(b))
    w = ((bound.bit_length() + 2) + 7) // 8  # bytes per slot
    shift = 8 * w
    A = 0
    for c in reversed(a):
        A = (A << shift) + c
    B = 0
    for c in reversed(b):
        B = (B << shift) + c
    n = len(a) + len(b) - 1
    half = 1 << (shift - 1)
    pattern = (half).to_bytes(w, "little")
    C = A * B + int.from_bytes(pattern * n, "little")
    raw = C.to_bytes(w * n + 1, "little")
    out = [int.from_bytes(raw[i * w:(i + 1) * w], "little") - half for i in range(n)]
    return trim(out)


def ksqr(a):
    return kmul(a, a)


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    res = list(a)
    for i, c in enumerate(b):
        res[i] += c
    return trim(res)


def sub(a, b):
    res = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        res[i] -= c
    return trim(res)


def scale(a, c):
    return trim([x * c for x in a]) if c else []


def reduce_mod(a, m):
    return trim([c % m for c in a])


def symmetric(a, m):
    half = m // 2
    return trim([(c % m) - m if c % m > half else c % m for c in a])


def divmod_monic(a, b, m=None):
    """Divide by a monic b, optionally reducing modulo m."""
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], reduce_mod(r, m) if m else trim(r)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1 - db, -1, -1):
        c = r[i + db]
        if m:
            c %= m
        q[i] = c
        if c:
            for j in range(db):
                r[i + j] -= c * b[j]
        r[i + db] = 0
    rem = r[:db]
    if m:
        return reduce_mod(q, m), reduce_mod(rem, m)
    return trim(q), trim(rem)


def exact_div(a, b):
    """Exact division over Z; returns None when b does not divide a."""
    if not b:
        raise ZeroDivisionError
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [] if not any(r) else None
    lb = b[-1]
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1 - db, -1, -1):
        c, rem = divmod(r[i + db], lb)
        if rem:
            return None
        q[i] = c
        if c:
            for j in range(db):
                r[i + j] -= c * b[j]
        r[i + db] = 0
    if any(r[:db]):
        return None
    return trim(q)


def content(a):
    from math import gcd
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(a):
    g = content(a)
    if not g:
        return []
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def norm2_ceil(a):
    s = sum(c * c for c in a)
    r = isqrt(s)
    return r if r * r == s else r + 1


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


# -- mod-p bridging -----------------------------------------------------------


def to_modp(a, p):
    return trim([c % p for c in a])


def xgcd_modp(a, b, p):
    """(g, s, t) over Z/p with s*a + t*b = g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = modp.pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, to_modp(sub(s0, modp.pmul(q, s1, p)), p)
        t0, t1 = t1, to_modp(sub(t0, modp.pmul(q, t1, p)), p)
    inv = pow(r0[-1], -1, p)
    return [c * inv % p for c in r0], [c * inv % p for c in s0], [c * inv % p for c in t0]
