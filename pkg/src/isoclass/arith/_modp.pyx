# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense polynomial arithmetic over Z/p (p < 2**31).

Same API and results as the pure-Python ``_modp_py``.
"""

from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef i64 _inv(i64 a, i64 p):
    cdef i64 t = 0, nt = 1, r = p, nr = a % p, q, tmp
    while nr:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if r != 1:
        raise ZeroDivisionError("not invertible mod p")
    if t < 0:
        t += p
    return t


cdef list _tolist(i64* buf, Py_ssize_t n):
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    return [buf[i] for i in range(n)]


cdef i64* _load(object a, Py_ssize_t n, i64 p) except NULL:
    cdef i64* buf = <i64*> malloc((n if n > 0 else 1) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = <i64> (a[i] % p)
    return buf


cdef Py_ssize_t _divmod_inplace(i64* r, Py_ssize_t nr, i64* b, Py_ssize_t nb, i64* q, i64 p) except -2:
    # reduces r (length nr) modulo b (length nb, b[nb-1] != 0); quotient into q
    cdef Py_ssize_t db = nb - 1, i, j
    cdef i64 inv = _inv(b[db], p), c
    for i in range(nr - 1 - db, -1, -1):
        c = r[i + db] * inv % p
        if q != NULL:
            q[i] = c
        if c:
            for j in range(db):
                r[i + j] = (r[i + j] - c * b[j]) % p
                if r[i + j] < 0:
                    r[i + j] += p
        r[i + db] = 0
    return db


def pmul(a, b, long long p):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    if na == 0 or nb == 0:
        return []
    cdef i64* x = _load(a, na, p)
    cdef i64* y = _load(b, nb, p)
    cdef i64* res = <i64*> malloc((na + nb - 1) * sizeof(i64))
    cdef i64 xi
    try:
        for i in range(na + nb - 1):
            res[i] = 0
        for i in range(na):
            xi = x[i]
            if xi:
                for j in range(nb):
                    res[i + j] = (res[i + j] + xi * y[j]) % p
        return _tolist(res, na + nb - 1)
    finally:
        free(x); free(y); free(res)


def pdivmod(a, b, long long p):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if nb == 0:
        raise ZeroDivisionError("polynomial division by zero mod p")
    if na < nb:
        return [], [c % p for c in a]
    cdef i64* r = _load(a, na, p)
    cdef i64* y = _load(b, nb, p)
    cdef i64* q = <i64*> malloc((na - nb + 1) * sizeof(i64))
    try:
        _divmod_inplace(r, na, y, nb, q, p)
        return _tolist(q, na - nb + 1), _tolist(r, nb - 1)
    finally:
        free(r); free(y); free(q)


def prem(a, b, long long p):
    return pdivmod(a, b, p)[1]


def pmonic(a, long long p):
    if not a or a[len(a) - 1] == 1:
        return list(a)
    cdef i64 inv = _inv(a[len(a) - 1], p)
    return [c * inv % p for c in a]


def pgcd(a, b, long long p):
    a, b = list(a), list(b)
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    return pmonic(a, p)


cdef Py_ssize_t _mulmod(i64* x, Py_ssize_t nx, i64* y, Py_ssize_t ny,
                        i64* m, Py_ssize_t nm, i64* out, i64* tmp, i64 p) except -2:
    # out <- x*y mod m; tmp has room for nx+ny-1 entries; returns length of out
    cdef Py_ssize_t i, j, n
    cdef i64 xi
    if nx == 0 or ny == 0:
        return 0
    n = nx + ny - 1
    for i in range(n):
        tmp[i] = 0
    for i in range(nx):
        xi = x[i]
        if xi:
            for j in range(ny):
                tmp[i + j] = (tmp[i + j] + xi * y[j]) % p
    if n >= nm:
        _divmod_inplace(tmp, n, m, nm, NULL, p)
        n = nm - 1
    while n > 0 and tmp[n - 1] == 0:
        n -= 1
    for i in range(n):
        out[i] = tmp[i]
    return n


def pmulmod(a, b, m, long long p):
    cdef Py_ssize_t na = len(a), nb = len(b), nm = len(m), n
    if nm == 0:
        raise ZeroDivisionError("polynomial division by zero mod p")
    ra = pdivmod(a, m, p)[1]
    rb = pdivmod(b, m, p)[1]
    na = len(ra)
    nb = len(rb)
    cdef i64* x = _load(ra, na, p)
    cdef i64* y = _load(rb, nb, p)
    cdef i64* mm = _load(m, nm, p)
    cdef i64* tmp = <i64*> malloc((na + nb + 1) * sizeof(i64))
    cdef i64* out = <i64*> malloc((nm + 1) * sizeof(i64))
    try:
        n = _mulmod(x, na, y, nb, mm, nm, out, tmp, p)
        return _tolist(out, n)
    finally:
        free(x); free(y); free(mm); free(tmp); free(out)


def ppowmod(a, e, m, long long p):
    cdef Py_ssize_t nm = len(m), nb, nr, k
    if nm == 0:
        raise ZeroDivisionError("polynomial division by zero mod p")
    base0 = pdivmod(a, m, p)[1]
    if nm == 1:
        return []
    cdef i64* mm = _load(m, nm, p)
    cdef i64* base = <i64*> malloc(nm * sizeof(i64))
    cdef i64* res = <i64*> malloc(nm * sizeof(i64))
    cdef i64* tmp = <i64*> malloc(2 * nm * sizeof(i64))
    try:
        nb = len(base0)
        for k in range(nb):
            base[k] = base0[k]
        res[0] = 1
        nr = 1
        e = int(e)
        while e:
            if e & 1:
                nr = _mulmod(res, nr, base, nb, mm, nm, res, tmp, p)
            e >>= 1
            if e:
                nb = _mulmod(base, nb, base, nb, mm, nm, base, tmp, p)
        return _tolist(res, nr)
    finally:
        free(mm); free(base); free(res); free(tmp)
