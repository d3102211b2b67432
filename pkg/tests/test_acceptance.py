"""Acceptance criteria, one test each.  Every test records a PASS/FAIL line that
is printed in the terminal summary of the run."""

import time
from fractions import Fraction
from itertools import combinations, product

from isoclass.arith.poly import Poly, poly
from isoclass.arith.text import parse_poly
from isoclass.canonical.config import parse_config
from isoclass.canonical.tree import gamma_encode, phi_decode
from isoclass.categoricity.distinguish import find_distinguishing_q
from isoclass.categoricity.montecarlo import mc_categoricity
from isoclass.categoricity.scott import scott_N
from isoclass.categoricity.theta import (
    Diverged, Total, theta_iso, verify_certificate, verify_total)
from isoclass.field.closure import normal_closure
from isoclass.field.embed import is_isomorphic
from isoclass.field.factor import factor_over_field
from isoclass.field.tower import tower
from isoclass.measure.haar import (
    HAAR, LEBESGUE, HasRootOf, MeasureValue, event_measure, galois_haar_identity_check, node_haar,
    node_lebesgue)
from isoclass.quotient.fields import field_from_set
from isoclass.quotient.posets import (
    Poset, poset_isomorphism, principal_count_ef, principal_poset_ef, principal_poset_field,
    product_of_chains_test)
from isoclass.trees.codec import finite_variant_decode, finite_variant_encode, tree_gamma, tree_phi
from isoclass.trees.core import FiniteTree, iso
from isoclass.trees.spine import spine_tree

from oracles import all_parent_arrays, binomial_cdf

CFG1 = parse_config("X^2-2, X^2-r0, X^2+r0")
CFG2 = parse_config("X^2+1, X^2-2, X^2-r1, X^2+r1")
CFG3 = parse_config("X^2-5, X^2+(1/2-1/2*r0)*X+1")
CONFIGS = {"sqrt2": CFG1, "gaussian": CFG2, "zeta5": CFG3}

# fixed seed for the Monte Carlo run; its result is recorded in the decisions notes
GOLDEN_SEED = 0


def strings(n):
    return ["".join(b) for b in product("01", repeat=n)]


def test_criterion_01_factorization(acceptance):
    t = time.perf_counter()
    F = tower("X^8-2")
    got = factor_over_field(F, parse_poly("X^12-2", F))
    elapsed = time.perf_counter() - t
    expect = {str(parse_poly(s, F)) for s in ("X^3 - a0^2", "X^3 + a0^2", "X^6 + a0^4")}
    found = {str(f) for f, m in got.factors if m == 1}
    ok = len(got.factors) == 3 and found == expect and got.unit == 1 and elapsed < 60
    acceptance(1, ok, f"{len(got.factors)} factors in {elapsed:.2f}s")
    assert ok


def test_criterion_02_haar_worked_examples(acceptance):
    a = event_measure(HasRootOf(poly("X^4-2")), CFG1, HAAR, 4)
    b = event_measure(HasRootOf(poly("X^4-2")), CFG2, HAAR, 4)
    ok = a == MeasureValue.point(Fraction(3, 8)) and b == MeasureValue.point(Fraction(5, 16))
    acceptance(2, ok, f"{a} and {b}")
    assert ok


def test_criterion_03_prime_degree_contrast(acceptance):
    cfg = parse_config("X^11-2")
    ev = HasRootOf(poly("X^11-2"))
    h = event_measure(ev, cfg, HAAR, 2)
    leb = event_measure(ev, cfg, LEBESGUE, 2)
    ok = h == MeasureValue.point(Fraction(1, 11)) and leb == MeasureValue.point(Fraction(1, 2))
    acceptance(3, ok, f"Haar {h}, Lebesgue {leb}")
    assert ok


def test_criterion_04_galois_identity(acceptance):
    fields = {"Q(sqrt2)": tower("X^2-2"), "Q(i)": tower("X^2+1"),
              "Q(zeta5)": tower("X^2-5", "X^2+(1/2-1/2*a0)*X+1")}
    ok, parts = True, []
    for name, K in fields.items():
        t = time.perf_counter()
        v = galois_haar_identity_check(K)
        elapsed = time.perf_counter() - t
        good = v.equal and v.measure == MeasureValue.point(Fraction(1, K.degree)) and elapsed < 10
        ok = ok and good
        parts.append(f"{name} {v.measure} in {elapsed:.2f}s")
    acceptance(4, ok, "; ".join(parts))
    assert ok


def test_criterion_05_codec_round_trips(acceptance):
    t = time.perf_counter()
    bad = []
    for name, cfg in CONFIGS.items():
        for s in strings(8):
            if gamma_encode(phi_decode(s, cfg), 8, cfg) != s:
                bad.append((name, s))
    for n in range(5):
        for h in product(range(5), repeat=n):
            if tree_gamma(tree_phi(h), n) != h:
                bad.append(("baire", h))
    trees = {}
    for n in range(1, 7):
        for pa in all_parent_arrays(n):
            T = FiniteTree(pa)
            trees.setdefault(T.code, T)
    for T in trees.values():
        if not iso(finite_variant_decode(finite_variant_encode(T)), T):
            bad.append(("finite", T.code))
    elapsed = time.perf_counter() - t
    ok = not bad and elapsed < 300
    acceptance(5, ok, f"3x256 bit strings, 781 Baire words, {len(trees)} finite trees, "
                      f"{len(bad)} mismatches in {elapsed:.1f}s")
    assert ok


def test_criterion_06_measure_coherence(acceptance):
    bad = 0
    for cfg in CONFIGS.values():
        for n in range(9):
            level = strings(n)
            if sum(node_haar(s, cfg) for s in level) != 1:
                bad += 1
            if n < 8:
                bad += sum(node_haar(s, cfg) != node_haar(s + "0", cfg) + node_haar(s + "1", cfg)
                           for s in level)
    for n in range(9):
        if sum(node_lebesgue(s) for s in strings(n)) != 1:
            bad += 1
    acceptance(6, bad == 0, f"{bad} violations over depths <= 8")
    assert bad == 0


def test_criterion_07_theta(acceptance):
    F = tower("X^2-2", "X^2-1-a0")
    K = tower("X^4-2*X^2-1")
    first = theta_iso(F, K)
    total_ok = isinstance(first, Total) and verify_total(F, K, first)
    E = tower("X^2-2")
    second = theta_iso(E, E)
    div_ok = isinstance(second, Diverged) and verify_certificate(E, second, ())
    deterministic = theta_iso(F, K) == first and theta_iso(E, E) == second
    ok = total_ok and div_ok and deterministic
    acceptance(7, ok, f"two presentations: {first.kind} at generator {getattr(first, 'element', '-')}; "
                      f"Q(sqrt2): {second.kind}")
    assert ok


def test_criterion_08_distinguishing_rationals(acceptance):
    t = time.perf_counter()
    E = tower("X^2-2")
    D = find_distinguishing_q(E, poly("X^2-2"), 0, 1)
    elapsed = time.perf_counter() - t
    q = D.qs[0]
    E0 = D.fields[0]
    ai, aj = (E0.convert(a) for a in D.alphas)
    checks = []
    for a, b in ((ai, aj), (aj, ai)):
        # Y^2 - (a + q) irreducible over E0, and Y^2 - (b + q) stays irreducible over E0(sqrt(a + q))
        sq_a = Poly._raw((-(a + q), E0.zero, E0.one), E0)
        checks.append(len(factor_over_field(E0, sq_a).factors) == 1)
        L = E0.extend(sq_a)
        sq_b = Poly._raw((-(L.convert(b) + q), L.zero, L.one), L)
        fac = factor_over_field(L, sq_b)
        checks.append(len(fac.factors) == 1 and fac.factors[0][0].degree == 2)
    ok = all(checks) and D.verify() and elapsed < 30
    acceptance(8, ok, f"q = {q} in {elapsed:.2f}s")
    assert ok


def _oracle_conditions(N, d, delta):
    c1 = (1 - binomial_cdf(100 * N, 40 * N - 1, 1, 2)) ** (2 * d) > 1 - delta
    c2 = binomial_cdf(100 * N, 35 * N, 1, 4) ** (d * (d - 1)) > 1 - delta
    return c1 and c2


def test_criterion_09_scott_parameters(acceptance):
    cases = [(d, Fraction(delta)) for d in (2, 3) for delta in ("1/2", "1/4")]
    # one tight case where N > 1, so that minimality is not vacuous
    cases.append((2, Fraction(1, 10 ** 6)))
    tails_ok = True
    Ns = []
    for d, delta in cases:
        N = scott_N(d, delta).N
        Ns.append(N)
        tails_ok = tails_ok and _oracle_conditions(N, d, delta)
        if N > 1:
            tails_ok = tails_ok and not _oracle_conditions(N - 1, d, delta)
    stats = mc_categoricity(trials=200, depth=6, seed=GOLDEN_SEED)
    mc_ok = stats.success_fraction >= Fraction(9, 10)
    ok = tails_ok and mc_ok
    acceptance(9, ok, f"N = {Ns} oracle {'agrees' if tails_ok else 'DISAGREES'}; "
                      f"mc seed {GOLDEN_SEED}: {stats.successes}/{stats.trials} total, "
                      f"{stats.divergences} diverged, {stats.exhausted} exhausted")
    assert ok


def _dihedral_figure():
    """Subfields of the splitting field of X^4 - 2 up to isomorphism, by generator."""
    labels = ["Q", "sqrt2", "i", "sqrt-2", "2^(1/4)", "(1+i)2^(1/4)", "Q(sqrt2,i)", "top"]
    covers = [("Q", "sqrt2"), ("Q", "i"), ("Q", "sqrt-2"), ("sqrt2", "2^(1/4)"),
              ("sqrt-2", "(1+i)2^(1/4)"), ("sqrt2", "Q(sqrt2,i)"), ("i", "Q(sqrt2,i)"),
              ("sqrt-2", "Q(sqrt2,i)"), ("2^(1/4)", "top"), ("(1+i)2^(1/4)", "top"),
              ("Q(sqrt2,i)", "top")]
    idx = {x: k for k, x in enumerate(labels)}
    return Poset.from_covers(labels, [(idx[a], idx[b]) for a, b in covers])


def test_criterion_10_quotient_obstructions(acceptance):
    z = principal_poset_field(tower("X^2-5", "X^2+(1/2-1/2*a0)*X+1"))
    z_ok = len(z) == 3 and z.is_chain()
    P = principal_poset_field(normal_closure(tower("X^4-2")))
    fig = _dihedral_figure()
    d_ok = (len(P) == 8 and poset_isomorphism(P, fig) is not None
            and not product_of_chains_test(P).is_product)
    ef_ok = True
    count = 0
    for support in range(4):
        for vals in product(range(1, 4), repeat=support):
            g = dict(zip(range(support), vals))
            Q = principal_poset_ef(g)
            expect = 1
            for v in vals:
                expect *= 1 + v
            ef_ok = ef_ok and len(Q) == principal_count_ef(g) == expect
            ef_ok = ef_ok and product_of_chains_test(Q).is_product
            count += 1
    ok = z_ok and d_ok and ef_ok
    acceptance(10, ok, f"zeta5 chain of {len(z)}; closure of X^4-2: {len(P)} elements, "
                       f"{product_of_chains_test(P).is_product and 'product' or 'not a product'}; "
                       f"{count} functions g checked")
    assert ok


def test_criterion_11_spine_reduction(acceptance):
    t = time.perf_counter()
    subsets = [frozenset(c) for r in range(6) for c in combinations(range(5), r)]
    trees = {S: spine_tree(S, 6) for S in subsets}
    bad = sum((S == S2) != iso(trees[S], trees[S2]) for S in subsets for S2 in subsets)
    small = [S for S in subsets if len(S) <= 3]
    fields = {S: field_from_set(S) for S in small}
    bad += sum((S == S2) != is_isomorphic(fields[S], fields[S2]) for S in small for S2 in small)
    elapsed = time.perf_counter() - t
    ok = bad == 0 and elapsed < 120
    acceptance(11, ok, f"{len(subsets)} spine trees, {len(small)} fields, {bad} mismatches "
                       f"in {elapsed:.2f}s")
    assert ok
