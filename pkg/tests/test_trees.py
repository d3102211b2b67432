from itertools import product

import pytest
from hypothesis import given, strategies as st

from isoclass.errors import ParseError
from isoclass.trees.codec import (
    codes_of_size, extensions, finite_variant_decode, finite_variant_encode, format_word, index_of,
    parse_word, tree_at, tree_gamma, tree_phi)
from isoclass.trees.core import (
    FiniteTree, canonical_code, embeds, iso, path, star, tree_from_code, truncate)
from isoclass.trees.spine import embed_set, spine_set, spine_tree

from oracles import all_parent_arrays, tree_embeds_brute, tree_iso_brute


@st.composite
def trees(draw, max_nodes=9):
    n = draw(st.integers(1, max_nodes))
    parent = [0] + [draw(st.integers(0, v - 1)) for v in range(1, n)]
    perm = draw(st.permutations(range(n)))
    out = [0] * n
    for v in range(n):
        out[perm[v]] = perm[parent[v]]
    return FiniteTree(out)


def small_trees(n_max):
    seen = {}
    for n in range(1, n_max + 1):
        for pa in all_parent_arrays(n):
            T = FiniteTree(pa)
            seen.setdefault(T.code, T)
    return list(seen.values())


# -- structure ------------------------------------------------------------------------------


def test_malformed_parent_arrays():
    for bad in ([], [1, 0], [0, 0, 3, 2], [0, 5]):
        with pytest.raises(ValueError):
            FiniteTree(bad)


def test_levels_and_height():
    T = FiniteTree([0, 0, 1, 1, 3])
    assert T.levels == (0, 1, 2, 2, 3)
    assert T.height == 3


def test_code_agrees_with_permutation_oracle():
    corpus = [FiniteTree(pa) for n in range(1, 6) for pa in all_parent_arrays(n)]
    for a in corpus:
        for b in corpus:
            if len(a) == len(b):
                assert iso(a, b) == tree_iso_brute(a.parent, b.parent)


@given(trees())
def test_code_is_label_invariant(T):
    assert tree_from_code(T.code).code == T.code
    assert iso(tree_from_code(T.code), T)


def test_counts_of_rooted_trees():
    # unlabeled rooted trees by node count
    assert [len(codes_of_size(n)) for n in range(1, 10)] == [1, 1, 2, 4, 9, 20, 48, 115, 286]


def test_enumeration_index():
    assert tree_at(0).code == "()"
    for j in range(200):
        assert index_of(tree_at(j)) == j
    sizes = [len(tree_at(j)) for j in range(200)]
    assert sizes == sorted(sizes)


def test_truncate():
    T = FiniteTree([0, 0, 1, 2, 0])
    assert truncate(T, 0).code == "()"
    assert truncate(T, 1).code == "(()())"
    assert iso(truncate(T, 5), T)
    with pytest.raises(ValueError):
        truncate(T, -1)


# -- Baire codec ----------------------------------------------------------------------------


def test_phi_of_empty_word():
    assert tree_phi(()).code == "()"


def test_all_zero_word_gives_path():
    assert iso(tree_phi((0, 0, 0)), path(4))


def test_extensions_listed_by_size_then_code():
    exts = [code for code, _ in zip(extensions(path(2), 1), range(6))]
    keys = [(len(c), c) for c in exts]
    assert keys == sorted(keys)
    assert exts[0] == "((()))"


def test_baire_round_trip_exhaustive():
    for n in range(5):
        for h in product(range(5), repeat=n):
            T = tree_phi(h)
            assert T.height == n
            assert tree_gamma(T, n) == h


@given(st.lists(st.integers(0, 6), max_size=4))
def test_levelwise_consistency(h):
    T = tree_phi(h)
    for m in range(len(h) + 1):
        assert iso(truncate(T, m), tree_phi(h[:m]))


def test_gamma_needs_enough_levels():
    with pytest.raises(ValueError):
        tree_gamma(path(2), 3)


def test_finite_variant_examples():
    assert finite_variant_encode(FiniteTree([0])) == (0,)
    assert finite_variant_decode((2, 0, 0)).height == 1
    assert finite_variant_encode(path(2), length=4) == (1, 0, 0, 0)


def test_finite_variant_round_trip_small_trees():
    for T in small_trees(6):
        word = finite_variant_encode(T)
        assert word[-1] == 0 and all(w > 0 for w in word[:-1])
        assert iso(finite_variant_decode(word), T)
        assert iso(finite_variant_decode(word + (0, 0)), T)


def test_finite_variant_rejects_resumption():
    with pytest.raises(ValueError):
        finite_variant_decode((1, 0, 2))


def test_word_text_round_trip():
    assert parse_word(format_word((3, 0, 12))) == (3, 0, 12)
    assert parse_word("") == ()
    with pytest.raises(ParseError) as exc:
        parse_word("1,x,2")
    assert exc.value.token == "x"


# -- embeddings ----------------------------------------------------------------------------


def test_embed_examples():
    assert not embeds(path(4), star(4))
    assert embeds(star(3), FiniteTree([0, 0, 0, 1]))
    T = FiniteTree([0, 0, 1, 1, 2])
    for m in range(4):
        assert embeds(truncate(T, m), T)


def test_embeds_agrees_with_brute_force():
    corpus = small_trees(5)
    for S in corpus:
        for T in corpus:
            assert embeds(S, T) == tree_embeds_brute(S.parent, T.parent)


def test_mutual_embedding_is_isomorphism():
    corpus = small_trees(6)
    by_size = {}
    for T in corpus:
        by_size.setdefault(len(T), []).append(T)
    for group in by_size.values():
        for S in group:
            for T in group:
                assert (embeds(S, T) and embeds(T, S)) == iso(S, T)


@given(trees(7), trees(7), trees(7))
def test_embeds_reflexive_and_transitive(a, b, c):
    assert embeds(a, a)
    if embeds(a, b) and embeds(b, c):
        assert embeds(a, c)


# -- spine trees -----------------------------------------------------------------------------


def _subsets(n):
    return [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(2 ** n)]


def test_spine_examples():
    assert iso(spine_tree(set(), 4), path(5))
    T = spine_tree({0}, 3)
    assert T.code == canonical_code(FiniteTree([0, 0, 1, 2, 0]))
    with pytest.raises(ValueError):
        spine_tree({3}, 3)


def test_spine_reduction_matches_set_equality():
    M = 6
    subsets = _subsets(5)
    trees_ = {S: spine_tree(S, M) for S in subsets}
    for S in subsets:
        assert spine_set(trees_[S]) == S
        for S2 in subsets:
            assert (S == S2) == iso(trees_[S], trees_[S2])


def test_embed_set():
    T = FiniteTree([0, 0, 1, 1])
    E = embed_set(T, 30)
    assert 0 in E
    assert E == {j for j in range(30) if embeds(tree_at(j), T)}
    assert embed_set(T, 10) == {j for j in E if j < 10}
    assert embed_set(path(3), 10) == {0, 1, 2}


@given(trees(8))
def test_json_round_trip(T):
    assert FiniteTree.from_json(T.to_json()) == T


def test_json_errors_carry_token():
    with pytest.raises(ParseError):
        FiniteTree.from_json('{"parent": [0, 0')
    with pytest.raises(ParseError):
        FiniteTree.from_json('{"parent": [1, 0]}')
