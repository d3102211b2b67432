"""Dense polynomial arithmetic over Z/p, pure Python.

Polynomials are lists of ints in [0, p), lowest degree first, with no
trailing zeros.  The compiled module ``_modp`` exposes the same functions.
"""


def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def pmul(a, b, p):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return _trim([c % p for c in res])


def pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero mod p")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _trim(r)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1 - db, -1, -1):
        c = r[i + db] * inv % p
        q[i] = c
        if c:
            for j in range(db):
                r[i + j] = (r[i + j] - c * b[j]) % p
        r[i + db] = 0
    return _trim(q), _trim(r[:db])


def prem(a, b, p):
    return pdivmod(a, b, p)[1]


def pmonic(a, p):
    if not a or a[-1] == 1:
        return list(a)
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    return pmonic(a, p)


def pmulmod(a, b, m, p):
    return pdivmod(pmul(a, b, p), m, p)[1]


def ppowmod(a, e, m, p):
    result = [1]
    base = pdivmod(a, m, p)[1]
    while e:
        if e & 1:
            result = pmulmod(result, base, m, p)
        e >>= 1
        if e:
            base = pmulmod(base, base, m, p)
    return pdivmod(result, m, p)[1]
