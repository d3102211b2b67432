"""Factorization and root finding over field towers.

Irreducible factors come from Trager's method: shift the polynomial by a
combination of generators until its norm down to Q is squarefree, factor the
norm over Q, and recover factors as gcds over the tower.  Norms are taken one
step at a time; for a quadratic step ``b^2 + c1*b + c0`` the norm of
``U + V*b`` is ``U^2 - c1*U*V + c0*V^2``, and other steps use evaluation,
determinants over the field below, and interpolation.

Square roots in towers of quadratic steps are found recursively without any
factoring, which is what keeps root tests cheap in large 2-power towers.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from isoclass.arith import zz
from isoclass.arith.factor import Factorization, factor_over_q, is_squarefree_fast
from isoclass.arith.poly import QQ, Poly
from isoclass.errors import DegenerateInput, DegreeBudgetExceeded
from isoclass.field.tower import RATIONALS, FieldElt, FieldTower

FACTOR_DEGREE_BUDGET = 128


# -- polynomials over a tower, split along the top step --------------------------------


def _split_top(F: FieldTower, p: Poly):
    """Write p in F[Y] as sum_j P_j(Y) b^j with P_j over the field below."""
    L = F._levels[-1]
    sub = F.prefix(F.depth - 1)
    s = L.below
    parts = [[] for _ in range(L.d)]
    for c in p.coeffs:
        for j in range(L.d):
            chunk = c.n[j * s:(j + 1) * s]
            parts[j].append(FieldElt.normalized(sub, list(chunk), c.d))
    return [Poly._raw(cs, sub) for cs in parts], sub, L


def relative_norm(F: FieldTower, p: Poly) -> Poly:
    """Norm of p in F[Y] down to the field one step below."""
    if F.depth == 0:
        return p
    parts, sub, L = _split_top(F, p)
    if L.d == 2:
        U, V = parts
        c0 = FieldElt._make(sub, tuple(L.c[0]), 1)
        c1 = FieldElt._make(sub, tuple(L.c[1]), 1)
        N = U * U + (V * V) * c0
        if c1:
            N = N - (U * V) * c1
        return N
    return _norm_by_interpolation(F, p, sub, L)


def _mul_by_gen_matrix(F, z, sub, L):
    # columns: z * b^i for i < d, written on 1, b, ..., b^(d-1) over sub
    s, d = L.below, L.d
    bvec = [0] * F.degree
    bvec[s] = 1
    b = FieldElt._make(F, tuple(bvec), 1)
    cols = []
    cur = z
    for _ in range(d):
        cols.append([FieldElt.normalized(sub, list(cur.n[j * s:(j + 1) * s]), cur.d) for j in range(d)])
        cur = cur * b
    return [[cols[i][j] for i in range(d)] for j in range(d)]


def _det(mat, one):
    n = len(mat)
    m = [row[:] for row in mat]
    det = one
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return one * 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det = det * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            f = m[r][col]
            if f:
                f = f * inv
                for c in range(col + 1, n):
                    if m[col][c]:
                        m[r][c] = m[r][c] - f * m[col][c]
    return det


def _interpolate(points, values, dom):
    """Newton interpolation over dom at integer points."""
    n = len(points)
    coef = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / Fraction(points[i] - points[i - j])
    acc = Poly._raw((), dom)
    for i in range(n - 1, -1, -1):
        acc = acc * Poly._raw((dom.convert(-points[i]), dom.one), dom) + coef[i]
    return acc


def _norm_by_interpolation(F, p, sub, L):
    deg = L.d * p.degree
    half = deg // 2
    points = list(range(-half, deg - half + 1))
    values = []
    for y in points:
        z = p(F.convert(y))
        values.append(_det(_mul_by_gen_matrix(F, z, sub, L), sub.one))
    return _interpolate(points, values, sub)


def absolute_norm(F: FieldTower, p: Poly) -> Poly:
    """Norm of p in F[Y] down to Q, as a rational polynomial."""
    cur_F, cur = F, p
    while cur_F.depth > 0:
        cur = relative_norm(cur_F, cur)
        cur_F = cur_F.prefix(cur_F.depth - 1)
    return Poly._raw([c.to_rational() for c in cur.coeffs], QQ)


# -- square roots ----------------------------------------------------------------------


def _sqrt_rational(q: Fraction):
    if q < 0:
        return None
    a, b = q.numerator, q.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def sqrt(F: FieldTower, z: FieldElt):
    """A square root of z in F, or None.  Which of the two is unspecified."""
    z = F.convert(z)
    if not z:
        return F.zero
    cache = F._cache.setdefault("sqrt", {})
    key = (z.n, z.d)
    if key in cache:
        return cache[key]
    r = cache[key] = _sqrt(F, z)
    return r


def _sqrt(F: FieldTower, z: FieldElt):
    k = F.depth
    if k == 0:
        r = _sqrt_rational(z.to_rational())
        return None if r is None else F.convert(r)
    L = F._levels[k - 1]
    if L.d != 2:
        rs = roots(F, Poly._raw((-z, F.zero, F.one), F), use_sqrt=False)
        return rs[0] if rs else None
    sub = F.prefix(k - 1)
    s = L.below
    u = FieldElt.normalized(sub, list(z.n[:s]), z.d)
    v = FieldElt.normalized(sub, list(z.n[s:]), z.d)
    c0 = FieldElt._make(sub, tuple(L.c[0]), 1)
    c1 = FieldElt._make(sub, tuple(L.c[1]), 1)
    # b' = b + c1/2 satisfies b'^2 = delta; z = u' + v b'
    half_c1 = c1 * Fraction(1, 2)
    delta = half_c1 * half_c1 - c0
    u1 = u - v * half_c1
    bvec = [0] * F.degree
    bvec[s] = 1
    b = FieldElt._make(F, tuple(bvec), 1)
    bprime = b + F.convert(half_c1)
    if not v:
        x = sqrt(sub, u1)
        if x is not None:
            return F.convert(x)
        y = sqrt(sub, u1 / delta)
        if y is not None:
            return F.convert(y) * bprime
        return None
    n = u1 * u1 - delta * v * v
    t = sqrt(sub, n)
    if t is None:
        return None
    for sign in (1, -1):
        x2 = (u1 + t * sign) * Fraction(1, 2)
        if not x2:
            continue
        x = sqrt(sub, x2)
        if x is not None:
            y = v / (x * 2)
            return F.convert(x) + F.convert(y) * bprime
    return None


def all_quadratic(F: FieldTower) -> bool:
    return all(d == 2 for d in F.degrees)


# -- Trager ------------------------------------------------------------------------------


def _shift_candidates(F: FieldTower, h: Poly):
    rational = all(c.is_rational() for c in h.coeffs)
    if not rational:
        yield F.zero
    gens = F.gens()
    t = 1
    while True:
        for sgn in (1, -1):
            theta = F.zero
            for i, g in enumerate(gens):
                theta = theta + g * (sgn * t ** (i + 1))
            yield theta
        t += 1


def _rational_ints(N: Poly):
    return N.content_primitive()[1]


def _squarefree_norm(F: FieldTower, h: Poly, budget: int):
    if F.degree * h.degree > budget:
        raise DegreeBudgetExceeded(
            f"norm degree {F.degree * h.degree} exceeds the factorization budget {budget}")
    for tries, theta in enumerate(_shift_candidates(F, h)):
        hs = h.shift(-theta) if theta else h
        N = absolute_norm(F, hs)
        ints = _rational_ints(N)
        if is_squarefree_fast(ints):
            return theta, hs, N
        if tries >= 12 and N.gcd(N.derivative()).degree == 0:
            return theta, hs, N
        if tries > 60:
            raise RuntimeError("no squarefree norm found")


def _trager(F: FieldTower, h: Poly, budget: int, roots_only: bool = False):
    """Irreducible monic factors of a monic squarefree h over F (deg >= 2)."""
    theta, hs, N = _squarefree_norm(F, h, budget)
    NF = factor_over_q(N)
    if NF.is_irreducible():
        return [] if roots_only else [h]
    out = []
    rest = hs
    pending = [Ni for Ni, _ in NF if not roots_only or Ni.degree == F.degree]
    for idx, Ni in enumerate(pending):
        if not roots_only and idx == len(pending) - 1:
            g = rest
        else:
            g = rest.gcd(Ni.change_domain(F))
        if g.degree >= 1:
            out.append(g.shift(theta) if theta else g)
            if not roots_only:
                rest = rest // g
    return out


# -- public API ----------------------------------------------------------------------------


def _as_poly(F: FieldTower, p) -> Poly:
    if isinstance(p, str):
        return F.poly(p)
    if p.dom is not F:
        return p.change_domain(F)
    return p


def _factor_squarefree(F, h, budget):
    if h.degree == 1:
        return [h]
    if h.degree == 2 and all_quadratic(F):
        b, c = h.coeffs[1], h.coeffs[0]
        disc = b * b - c * 4
        r = sqrt(F, disc)
        if r is None:
            return [h]
        r1 = (r - b) * Fraction(1, 2)
        r2 = (-r - b) * Fraction(1, 2)
        return [Poly._raw((-r1, F.one), F), Poly._raw((-r2, F.one), F)]
    if F.depth == 0:
        hq = Poly._raw([c.to_rational() for c in h.coeffs], QQ)
        return [g.change_domain(F) for g, _ in factor_over_q(hq)]
    return _trager(F, h, budget)


def factor_over_field(F: FieldTower, p, budget: int | None = None) -> Factorization:
    """Factor p over F: unit times canonically ordered monic irreducibles."""
    budget = FACTOR_DEGREE_BUDGET if budget is None else budget
    p = _as_poly(F, p)
    if p.is_zero():
        raise DegenerateInput("cannot factor the zero polynomial")
    unit = p.lc
    if p.degree == 0:
        return Factorization(unit, ())
    pm = p.monic()
    if pm.degree == 1:
        return Factorization(unit, ((pm, 1),))
    g = pm.gcd(pm.derivative())
    parts = [(pm, 1)] if g.degree == 0 else pm.squarefree_decomposition()
    out = []
    for a, m in parts:
        for f in _factor_squarefree(F, a.monic(), budget):
            out.append((f.monic(), m))
    out.sort(key=lambda fm: fm[0].sort_key())
    return Factorization(unit, tuple(out))


def is_irreducible_over(F: FieldTower, p, budget: int | None = None) -> bool:
    p = _as_poly(F, p)
    if p.degree < 1:
        raise DegenerateInput("irreducibility of a constant polynomial is undefined")
    return factor_over_field(F, p, budget).is_irreducible()


def _direct_roots(F: FieldTower, p: Poly):
    cands = [F.zero, F.one, -F.one]
    for g in F.gens():
        cands.extend((g, -g))
    return [c for c in cands if not p(c)]


def roots(F: FieldTower, p, use_sqrt: bool = True, budget: int | None = None):
    """Distinct roots of p in F, ordered as the linear factors of the factorization."""
    budget = FACTOR_DEGREE_BUDGET if budget is None else budget
    p = _as_poly(F, p)
    if p.is_zero():
        raise DegenerateInput("every element is a root of the zero polynomial")
    if p.degree < 1:
        return []
    h = p.monic()
    if h.degree > 1:
        g = h.gcd(h.derivative())
        if g.degree > 0:
            h = h // g
    found = []
    if h.degree == 1:
        found = [-h.coeffs[0]]
    elif h.degree == 2 and (use_sqrt and all_quadratic(F) or F.depth == 0):
        found = [-f.coeffs[0] for f in _factor_squarefree(F, h, budget) if f.degree == 1]
    elif F.depth == 0:
        hq = Poly._raw([c.to_rational() for c in h.coeffs], QQ)
        found = [F.convert(-g.coeffs[0]) for g, _ in factor_over_q(hq) if g.degree == 1]
    else:
        direct = _direct_roots(F, h)
        if len(direct) == h.degree:
            found = direct
        else:
            rest = h
            for r in direct:
                rest = rest // Poly._raw((-r, F.one), F)
            found = list(direct)
            if rest.degree == 1:
                found.append(-rest.coeffs[0])
            elif rest.degree > 1:
                found.extend(-f.coeffs[0] for f in _trager(F, rest.monic(), budget, roots_only=True))
    uniq = {}
    for r in found:
        uniq.setdefault((r.n, r.d), r)
    # canonical order of the linear factors X - r
    return sorted(uniq.values(), key=lambda r: FieldTower.elt_key(-r))


def has_root(F: FieldTower, p, budget: int | None = None) -> bool:
    p = _as_poly(F, p)
    if p.degree >= 1 and _direct_roots(F, p.monic()):
        return True
    return bool(roots(F, p, budget=budget))


def root_predicate(F: FieldTower, coeffs) -> bool:
    """R_n(a_0, ..., a_{n-1}): does X^n + a_{n-1} X^{n-1} + ... + a_0 have a root in F?"""
    coeffs = [F.convert(c) for c in coeffs]
    if len(coeffs) < 2:
        raise DegenerateInput("root predicates need n >= 2")
    return has_root(F, Poly._raw(tuple(coeffs) + (F.one,), F))


def minimal_poly(F: FieldTower, e: FieldElt, over: int = 0) -> Poly:
    """Minimal polynomial of e over the prefix field of the given depth."""
    e = F.convert(e)
    sub = F.prefix(over)
    Ds = sub.degree
    # coordinates of an element over sub: contiguous chunks of length Ds
    chunks = F.degree // Ds

    def vec(x):
        return [FieldElt.normalized(sub, list(x.n[j * Ds:(j + 1) * Ds]), x.d) for j in range(chunks)]

    basis = []  # echelon rows: (pivot, row, combination of powers)
    power = F.one
    for m in range(chunks + 1):
        row = vec(power)
        comb = [sub.zero] * m + [sub.one]
        for piv, brow, bcomb in basis:
            f = row[piv]
            if f:
                row = [a - f * b for a, b in zip(row, brow)]
                for i, b in enumerate(bcomb):
                    comb[i] = comb[i] - f * b
        piv = next((i for i, x in enumerate(row) if x), None)
        if piv is None:
            return Poly._raw(comb, sub).monic()
        inv = row[piv].inverse()
        basis.append((piv, [x * inv for x in row], [x * inv for x in comb]))
        power = power * e
    raise AssertionError("no linear dependence found")
