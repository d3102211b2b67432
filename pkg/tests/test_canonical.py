from itertools import product

import pytest

from isoclass.arith.poly import Poly
from isoclass.canonical.config import EnumerationConfig, parse_bits, parse_config
from isoclass.canonical.tree import (
    CanonicalTree, eligible, gamma_encode, gamma_trace, node, offered_poly, phi_decode,
    presentation_key)
from isoclass.errors import FallbackExhausted, ParseError
from isoclass.field.closure import primitive_element, rational_minpoly
from isoclass.field.embed import is_isomorphic
from isoclass.field.factor import has_root, roots
from isoclass.field.tower import RATIONALS, FieldTower, tower

CFG1 = parse_config("X^2-2, X^2-r0, X^2+r0")
CFG2 = parse_config("X^2+1, X^2-2, X^2-r1, X^2+r1")
CFG3 = parse_config("X^2-5, X^2+(1/2-1/2*r0)*X+1")
CONFIGS = [CFG1, CFG2, CFG3]


def strings(n):
    return ["".join(b) for b in product("01", repeat=n)]


def upto(n):
    return [s for k in range(n + 1) for s in strings(k)]


# -- configuration grammar --------------------------------------------------------------


def test_config_parse_and_text():
    assert CFG1.prefix == ("X^2-2", "X^2-r0", "X^2+r0")
    assert parse_config(CFG1.text()) == CFG1
    assert parse_config("") == EnumerationConfig()


def test_config_forward_reference_rejected():
    with pytest.raises(ParseError) as exc:
        parse_config("X^2-r1, X^2-2")
    assert "r1" in str(exc.value)


def test_config_digest_stable():
    assert CFG1.digest() == parse_config("X^2-2,X^2-r0,X^2+r0").digest()
    assert CFG1.digest() != CFG2.digest()


def test_parse_bits_rejects_other_symbols():
    assert parse_bits(" 0101 ") == "0101"
    with pytest.raises(ParseError) as exc:
        parse_bits("01x1")
    assert exc.value.token == "x"


# -- the node family ------------------------------------------------------------------------


def test_root_offers_first_template():
    assert str(offered_poly("", CFG1)) == "X^2 - 2"
    assert phi_decode("", CFG1) is RATIONALS


def test_templates_follow_accepted_roots():
    F = phi_decode("1", CFG1)
    assert F.degree == 2
    assert str(offered_poly("1", CFG1)) == "X^2 - a0"
    assert phi_decode("11", CFG1).degree == 4


def test_fallback_after_templates_die():
    # over Q(i) after refusing X^2-2 the remaining templates need r1
    assert str(offered_poly("110", CFG2)) == "X^2 - 1 - a0"


def test_fourth_root_presentation():
    F = phi_decode("0101", CFG2)
    assert [str(p) for p in F.minpolys] == ["X^2 - 2", "X^2 + a0"]


def test_tree_consistency():
    for cfg in CONFIGS:
        for s in upto(5):
            nd = node(s, cfg)
            f = offered_poly(s, cfg)
            assert f.degree in (2, 3, 5, 7)
            assert eligible(nd.field, f, nd.refused)
            assert phi_decode(s + "0", cfg) is nd.field
            child = phi_decode(s + "1", cfg)
            assert child.prefix(nd.field.depth) is nd.field
            assert child.degree == nd.field.degree * f.degree


def test_refusal_is_permanent():
    for cfg in (CFG1, CFG2):
        for s in upto(3):
            f = offered_poly(s, cfg)
            for tail in upto(3):
                F = phi_decode(s + "0" + tail, cfg)
                assert not has_root(F, f.change_domain(F))


def test_fresh_tree_is_deterministic():
    fresh = CanonicalTree(CFG2)
    for s in upto(5):
        assert fresh.offered(fresh.node(s)) == offered_poly(s, CFG2)


def test_fallback_exhaustion():
    cfg = EnumerationConfig((), max_height=1, max_degree=2)
    assert [str(offered_poly(s, cfg)) for s in ("", "0", "00")] == [
        "X^2 + 1", "X^2 - X - 1", "X^2 - X + 1"]
    with pytest.raises(FallbackExhausted):
        offered_poly("000", cfg)


# -- codecs -----------------------------------------------------------------------------------


def test_generator_is_least_root_of_its_polynomial():
    for cfg in CONFIGS:
        F = phi_decode("1111", cfg)
        for i in range(F.depth):
            p = Poly._raw([F.convert(c) for c in F.minpolys[i].coeffs], F)
            assert min(roots(F, p), key=presentation_key) == F.gen(i)


@pytest.mark.parametrize("cfg", CONFIGS, ids=["sqrt2", "gaussian", "zeta5"])
def test_gamma_phi_round_trip_short(cfg):
    for s in upto(6):
        assert gamma_encode(phi_decode(s, cfg), len(s), cfg) == s


def test_gamma_embedding_is_inclusion():
    s = "1101"
    bits, g = gamma_trace(phi_decode(s, CFG1), 4, CFG1)
    assert bits == s
    assert g.verify()
    assert list(g.images) == list(phi_decode(s, CFG1).gens())


def _same_field(F, G):
    if F.degree != G.degree:
        return False
    m = rational_minpoly(F, primitive_element(F))
    return has_root(G, m.change_domain(G)) and is_isomorphic(F, G)


@pytest.mark.parametrize("F", [
    RATIONALS,
    tower("X^2-8"),
    FieldTower.from_steps([("a0", "X^2-8"), ("a1", "X^2+1/2*a0")]),
    tower("X^2+4"),
], ids=["Q", "sqrt8", "i-fourth-root", "sqrt-4"])
def test_phi_gamma_recovers_foreign_presentations(F):
    cfg = CFG2
    h = gamma_encode(F, 6, cfg)
    assert _same_field(phi_decode(h, cfg), F)
