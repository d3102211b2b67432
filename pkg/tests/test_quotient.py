import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from isoclass.arith.poly import poly
from isoclass.errors import DegreeBudgetExceeded
from isoclass.field.closure import normal_closure
from isoclass.field.embed import is_isomorphic
from isoclass.field.tower import RATIONALS, tower
from isoclass.quotient.fields import field_from_set, h_prefix, set_from_field
from isoclass.quotient.posets import (
    MAX_CHAIN_TEST_SIZE, Poset, chain, chain_product, poset_isomorphism, principal_count_ef,
    principal_poset_ee, principal_poset_ef, principal_poset_field, product_of_chains_test)
from isoclass.quotient.relations import (
    OMEGA, Card, acf_open_membership, code_pairs, columns, complement_card, ecard_equiv,
    ecard_forall_equiv, ee_equiv, ef_equiv, pair, projection, unpair)

from oracles import is_chain_product_birkhoff

pairs_ = st.tuples(st.integers(0, 6), st.integers(0, 6))
codes = st.frozensets(pairs_, max_size=6).map(code_pairs)


# -- pairing and relations ---------------------------------------------------------------------


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_pairing_round_trip(x, y):
    assert unpair(pair(x, y)) == (x, y)


def test_pairing_is_a_bijection_onto_an_initial_segment():
    assert sorted(pair(x, y) for x in range(20) for y in range(20) if x + y < 20) == list(range(210))


def test_relation_examples():
    A = code_pairs([(0, 0), (0, 1), (2, 5)])
    B = code_pairs([(0, 3), (2, 0), (2, 1)])
    assert projection(A) == {0, 2}
    assert columns(A) == {0: 2, 2: 1}
    assert ee_equiv(A, B)
    assert not ef_equiv(A, B)
    assert ef_equiv(A, code_pairs([(0, 7), (0, 8), (2, 2)]))
    assert ecard_equiv(A, B)
    assert not ecard_equiv(A, code_pairs([(1, 1)]))


@given(codes, codes, codes)
def test_relations_are_equivalences(a, b, c):
    for rel in (ee_equiv, ef_equiv, ecard_equiv, ecard_forall_equiv):
        assert rel(a, a)
        assert rel(a, b) == rel(b, a)
        if rel(a, b) and rel(b, c):
            assert rel(a, c)


@given(codes, codes)
def test_ef_refines_ee(a, b):
    if ef_equiv(a, b):
        assert ee_equiv(a, b)


@given(codes, codes)
def test_complements_of_finite_codes_are_infinite(a, b):
    assert complement_card(a) == Card(None)
    assert ecard_forall_equiv(a, b)


def test_complement_bound_checked():
    A = code_pairs([(4, 0)])
    assert str(complement_card(A, 5)) == "omega"
    with pytest.raises(ValueError):
        complement_card(A, 4)


def test_acf_open_sets():
    assert not acf_open_membership(0, 1)
    assert acf_open_membership(OMEGA, 10 ** 9)
    assert acf_open_membership(3, 3)
    assert acf_open_membership(5, 0)
    with pytest.raises(ValueError):
        acf_open_membership(-1, 2)
    with pytest.raises(ValueError):
        acf_open_membership(2, -1)


@given(st.integers(0, 40), st.integers(0, 40))
def test_acf_open_sets_nested(d, n):
    # U_{n+1} is contained in U_n
    if acf_open_membership(d, n + 1):
        assert acf_open_membership(d, n)


# -- posets ----------------------------------------------------------------------------------


def all_posets(n):
    """Every partial order on range(n), by brute force over relations."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in product((False, True), repeat=len(off)):
        leq = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), b in zip(off, bits):
            leq[i][j] = b
        try:
            yield Poset(list(range(n)), leq)
        except ValueError:
            continue


def test_poset_axioms_enforced():
    with pytest.raises(ValueError):
        Poset([0, 1], [[True, True], [True, True]])
    with pytest.raises(ValueError):
        Poset([0], [[False]])
    with pytest.raises(ValueError):
        Poset([0, 1, 2], [[1, 1, 0], [0, 1, 1], [0, 0, 1]])


def test_poset_counts_small():
    # labeled posets on n points
    assert [sum(1 for _ in all_posets(n)) for n in range(1, 5)] == [1, 3, 19, 219]


def test_chain_test_agrees_with_lattice_oracle_exhaustive():
    for n in range(1, 5):
        for P in all_posets(n):
            verdict = product_of_chains_test(P)
            assert verdict.is_product == is_chain_product_birkhoff(n, P.leq)


def _random_lattice_like(rng, n):
    """A random poset with a bottom 0 and top n-1."""
    covers = [(0, n - 1)]
    for j in range(1, n - 1):
        for i in range(j):
            if rng.random() < 0.35:
                covers.append((i, j))
        covers.append((0, j))
        covers.append((j, n - 1))
    return Poset.from_covers(list(range(n)), covers)


def test_chain_test_agrees_with_lattice_oracle_random():
    rng = random.Random(7)
    for _ in range(150):
        P = _random_lattice_like(rng, rng.randint(2, 12))
        assert product_of_chains_test(P).is_product == is_chain_product_birkhoff(len(P), P.leq)


@pytest.mark.parametrize("lengths", [(2, 2), (3, 2), (2, 2, 2), (4, 3), (2, 2, 3), (6, 2), (4, 4, 4)])
def test_chain_products_recognized(lengths):
    P = chain_product(lengths)
    rng = random.Random(len(P))
    perm = list(range(len(P)))
    rng.shuffle(perm)
    Q = Poset([P.labels[p] for p in perm], [[P.leq[a][b] for b in perm] for a in perm])
    v = product_of_chains_test(Q)
    assert v.is_product
    assert v.lengths == tuple(sorted(lengths, reverse=True))
    assert is_chain_product_birkhoff(len(Q), Q.leq)


def test_chain_verdict_text():
    assert str(product_of_chains_test(chain_product((2, 3)))) == "product of chains 3x2"
    diamond = Poset.from_covers(list(range(5)), [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
    assert str(product_of_chains_test(diamond)).startswith("impossible: ")
    vee = Poset.from_covers([0, 1, 2], [(0, 1), (0, 2)])
    assert "no top" in str(product_of_chains_test(vee))


def test_chain_test_size_guard():
    with pytest.raises(ValueError):
        product_of_chains_test(chain(MAX_CHAIN_TEST_SIZE + 1))


def test_isomorphism_is_an_order_isomorphism():
    P, Q = chain_product((2, 3)), chain_product((3, 2))
    f = poset_isomorphism(P, Q)
    assert sorted(f) == list(range(6))
    assert all(P.leq[i][j] == Q.leq[f[i]][f[j]] for i in range(6) for j in range(6))
    assert poset_isomorphism(chain(6), P) is None


def test_poset_data_round_trip():
    for P in (chain_product((2, 3)), principal_poset_ee({1, 2}), chain(1)):
        data = P.to_data()
        Q = Poset.from_data(data)
        assert Q.labels == [str(x) for x in P.labels]
        assert Q.leq == P.leq
    Q = Poset.from_data([["a", "b"], ["a", "c"]])
    assert Q.labels == ["a", "b", "c"] and Q.bottom() == 0 and Q.top() is None
    with pytest.raises(ValueError):
        Poset.from_data({"nodes": []})


# -- principal open sets ---------------------------------------------------------------------


@pytest.mark.parametrize("k", range(5))
def test_ee_poset_is_boolean(k):
    P = principal_poset_ee(range(k))
    assert len(P) == 2 ** k
    assert poset_isomorphism(P, chain_product((2,) * k)) is not None
    assert product_of_chains_test(P).lengths == (2,) * k


def test_ef_poset_small_functions():
    for support in range(4):
        for vals in product(range(1, 4), repeat=support):
            g = dict(zip(range(support), vals))
            P = principal_poset_ef(g)
            assert len(P) == principal_count_ef(g)
            v = product_of_chains_test(P)
            assert v.is_product
            assert v.lengths == tuple(sorted((x + 1 for x in vals), reverse=True))


def test_ef_poset_rejects_negative_values():
    with pytest.raises(ValueError):
        principal_poset_ef({0: -1})


def test_ef_poset_example():
    P = principal_poset_ef({0: 2})
    assert P.is_chain() and len(P) == 3


def test_field_posets():
    P = principal_poset_field(tower("X^4-2"))
    assert P.labels == ["X - 1", "X^2 - 2", "X^4 - 2"] and P.is_chain()
    P = principal_poset_field(tower("X^2-5", "X^2+(1/2-1/2*a0)*X+1"))
    assert str(product_of_chains_test(P)) == "product of chains 3"
    P = principal_poset_field(tower("X^2-2", "X^2-3"))
    assert len(P) == 5 and len(P.covers()) == 6
    assert not product_of_chains_test(P).is_product
    assert len(principal_poset_field(RATIONALS)) == 1


def test_field_poset_of_dihedral_closure():
    P = principal_poset_field(normal_closure(tower("X^4-2")))
    assert len(P) == 8
    v = product_of_chains_test(P)
    assert not v.is_product
    assert not is_chain_product_birkhoff(len(P), P.leq)


# -- sets and fields ---------------------------------------------------------------------------


def test_field_from_set_degrees():
    assert field_from_set(set()) is RATIONALS
    F = field_from_set({0, 1})
    assert F.degree == 4
    assert [str(p) for p in F.minpolys] == ["X^2 - 2", "X^2 - 3"]
    with pytest.raises(DegreeBudgetExceeded):
        field_from_set(range(7))


def test_field_from_set_reflects_equality():
    subsets = [frozenset(i for i in range(3) if m >> i & 1) for m in range(8)]
    fields = {S: field_from_set(S) for S in subsets}
    for S in subsets:
        for T in subsets:
            assert (S == T) == is_isomorphic(fields[S], fields[T])


def _squarefree(n):
    sign, n = (-1 if n < 0 else 1), abs(n)
    out, p = 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
        if n % p == 0:
            out *= p
            n //= p
        p += 1
    return sign * out * n


def test_h_list_prefix_shape():
    hs = h_prefix(40)
    assert len(set(map(str, hs))) == 40
    assert str(hs[0]) == "X^2 - X - 1"
    weights = [p.degree + max(abs(c) for c in p.coeffs) for p in hs]
    assert weights == sorted(weights)
    assert all(p.degree >= 2 and p.coeffs[-1] == 1 for p in hs)


@pytest.mark.parametrize("d", [2, -1, 5, 3])
def test_set_from_quadratic_field_matches_discriminants(d):
    # a quadratic field has a root of h_k iff h_k is quadratic with discriminant d * square
    F = tower(f"X^2-({d})")
    expect = set()
    for k, p in enumerate(h_prefix(60)):
        if p.degree == 2:
            c, b, _ = p.coeffs
            if _squarefree(int(b * b - 4 * c)) == d:
                expect.add(k)
    assert set_from_field(F, 60) == expect


def test_set_from_field_biquadratic():
    assert sorted(set_from_field(field_from_set({0, 2}), 40)) == [0, 1, 5, 6, 7, 29, 30]
    assert set_from_field(RATIONALS, 40) == frozenset()
    assert set_from_field(tower("X^2-2"), 0) == frozenset()
    assert str(h_prefix(8)[7]) == str(poly("X^2-2"))
