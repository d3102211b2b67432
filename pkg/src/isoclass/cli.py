"""Command-line interface.

Exit status: 0 on success, 1 on a domain error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from isoclass.errors import IsoclassError, ParseError

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- formats ------------------------------------------------------------------------------


def format_tower(F) -> str:
    from isoclass.arith.text import format_poly
    if F.depth == 0:
        return "Q"
    return "; ".join(format_poly(p) for _, p in F.steps())


def _tower(text: str):
    from isoclass.field.serial import load_tower
    return load_tower(text)


def _cfg(args):
    from isoclass.canonical.config import EnumerationConfig
    bounds = {}
    if getattr(args, "max_height", None) is not None:
        bounds["max_height"] = args.max_height
    if getattr(args, "max_degree", None) is not None:
        bounds["max_degree"] = args.max_degree
    return EnumerationConfig.parse(args.enum, **bounds)


def _poly(text: str, dom=None):
    from isoclass.arith.poly import QQ
    from isoclass.arith.text import parse_poly
    return parse_poly(text, QQ if dom is None else dom)


def _int_set(text: str) -> frozenset:
    out = set()
    for tok in text.replace("{", "").replace("}", "").split(","):
        tok = tok.strip()
        if not tok:
            continue
        if not tok.isdigit():
            raise ParseError("sets are comma-separated naturals", tok)
        out.add(int(tok))
    return frozenset(out)


def format_set(S) -> str:
    return ",".join(str(x) for x in sorted(S))


def _function(text: str) -> dict:
    g = {}
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        x, sep, v = tok.partition(":")
        if not sep or not x.strip().isdigit() or not v.strip().isdigit():
            raise ParseError("functions are comma-separated x:v pairs of naturals", tok)
        g[int(x)] = int(v)
    return g


def _rational(text: str) -> Fraction:
    from isoclass.arith.text import parse_rational
    return parse_rational(text)


def _tree(text: str):
    from isoclass.trees.core import FiniteTree, tree_from_code
    text = text.strip()
    if text.startswith("["):
        return FiniteTree.from_json(text)
    return tree_from_code(text)


def _poset_label(x) -> str:
    if isinstance(x, frozenset):
        return "{" + format_set(x) + "}"
    if isinstance(x, tuple):
        return ",".join(f"{a}:{b}" for a, b in x)
    return str(x)


def format_poset(P, as_json: bool) -> str:
    from isoclass.quotient.posets import product_of_chains_test
    data = {"elements": [_poset_label(x) for x in P.labels], "covers": [list(c) for c in P.covers()]}
    verdict = str(product_of_chains_test(P)) if len(P) <= 64 else "untested"
    if as_json:
        data["shape"] = verdict
        return json.dumps(data)
    lines = [f"elements {len(P)}"]
    lines += [f"{data['elements'][i]} < {data['elements'][j]}" for i, j in data["covers"]]
    lines.append(verdict)
    return "\n".join(lines)


def _emit(args, text: str, data=None):
    if args.json and data is not None:
        print(json.dumps(data))
    else:
        print(text)


# -- commands --------------------------------------------------------------------------------


def cmd_factor(args):
    from isoclass.arith.factor import factor_over_q
    from isoclass.arith.text import format_poly
    from isoclass.field.factor import factor_over_field
    if args.over:
        F = _tower(args.over)
        p = _poly(args.poly, F)
        fac = factor_over_field(F, p, args.budget)
    else:
        fac = factor_over_q(_poly(args.poly), seed=args.seed)
    factors = [[format_poly(f), m] for f, m in fac]
    _emit(args, str(fac), {"unit": str(fac.unit), "factors": factors})


def cmd_field(args):
    from isoclass.arith.text import format_element, format_poly
    from isoclass.field.closure import normal_closure, subfield_lattice
    from isoclass.field.embed import automorphisms, find_isomorphism
    from isoclass.field.serial import tower_to_data
    F = _tower(args.tower)
    op = args.op
    if op == "extend":
        if not args.poly:
            raise UsageError("field extend needs --poly")
        G = F.extend(_poly(args.poly, F), check=True)
        _emit(args, format_tower(G), tower_to_data(G))
    elif op == "degree":
        _emit(args, str(F.degree), {"degree": F.degree, "degrees": list(F.degrees)})
    elif op == "iso":
        if not args.other:
            raise UsageError("field iso needs --other")
        emb = find_isomorphism(F, _tower(args.other))
        if emb is None:
            _emit(args, "not isomorphic", {"isomorphic": False})
        else:
            images = {n: format_element(emb.target, img) for n, img in zip(F.names, emb.images)}
            text = "isomorphic\n" + "\n".join(f"{n} -> {v}" for n, v in images.items())
            _emit(args, text, {"isomorphic": True, "images": images})
    elif op == "aut":
        auts = automorphisms(F)
        rows = [{n: format_element(F, img) for n, img in zip(F.names, s.images)} for s in auts]
        text = "\n".join([f"automorphisms {len(auts)}"] +
                         [", ".join(f"{n} -> {v}" for n, v in r.items()) or "identity" for r in rows])
        _emit(args, text, {"count": len(auts), "automorphisms": rows})
    elif op == "lattice":
        L = subfield_lattice(F, args.budget or 16)
        nodes = [{"degree": nd.degree, "minpoly": format_poly(nd.minpoly)} for nd in L.nodes]
        lines = [f"subfields {len(L)}"]
        lines += [f"{i}: degree {n['degree']}, {n['minpoly']}" for i, n in enumerate(nodes)]
        lines += [f"{i} < {j}" for i, j in L.covers()]
        _emit(args, "\n".join(lines), {"nodes": nodes, "covers": [list(c) for c in L.covers()]})
    elif op == "closure":
        N = normal_closure(F, args.budget or 16)
        _emit(args, format_tower(N), tower_to_data(N))


def cmd_decode(args):
    from isoclass.canonical.config import parse_bits
    from isoclass.canonical.tree import phi_decode
    from isoclass.field.serial import tower_to_data
    F = phi_decode(parse_bits(args.bits), _cfg(args))
    _emit(args, format_tower(F), tower_to_data(F))


def cmd_encode(args):
    from isoclass.canonical.tree import gamma_encode
    F = _tower(args.tower)
    m = args.length if args.length is not None else args.depth
    if m is None:
        raise UsageError("encode needs --length")
    bits = gamma_encode(F, m, _cfg(args))
    _emit(args, bits, {"bits": bits})


def cmd_measure(args):
    from isoclass.measure.haar import HAAR, LEBESGUE, event_measure, parse_event
    kind = LEBESGUE if args.lebesgue else HAAR
    depth = 8 if args.depth is None else args.depth
    m = event_measure(parse_event(args.event), _cfg(args), kind, depth, budget=args.budget or 64)
    _emit(args, str(m), {"lower": str(m.lower), "upper": str(m.upper)})


def cmd_theta(args):
    from isoclass.categoricity.theta import THETA_TEMPLATE_BUDGET, describe, theta_iso
    out = theta_iso(_tower(args.source), _tower(args.target), args.budget or THETA_TEMPLATE_BUDGET)
    _emit(args, describe(out), {"outcome": out.kind, "element": getattr(out, "element", None),
                                "text": describe(out)})


def cmd_distinguish(args):
    from isoclass.categoricity.distinguish import find_distinguishing_q
    kw = {"count": args.count, "height_bound": args.height_bound}
    if args.budget:
        kw["budget"] = args.budget
    d = find_distinguishing_q(_tower(args.tower), _poly(args.poly), args.i, args.j, **kw)
    text = ",".join(str(q) for q in d.qs)
    _emit(args, text, {"qs": [str(q) for q in d.qs], "verified": d.verify()})


def cmd_scott_n(args):
    from isoclass.categoricity.scott import scott_N
    ratios = tuple(int(x) for x in args.ratios.split(","))
    if len(ratios) != 3:
        raise ParseError("ratios are flips,heads,pairs", args.ratios)
    p = scott_N(args.d, _rational(args.delta), ratios)
    text = f"d={p.d}\ndelta={p.delta}\nN={p.N}\nratios={','.join(map(str, p.ratios))}"
    _emit(args, text, {"d": p.d, "delta": str(p.delta), "N": p.N, "ratios": list(p.ratios)})


def cmd_mc(args):
    from isoclass.categoricity.montecarlo import mc_categoricity
    from isoclass.categoricity.theta import THETA_TEMPLATE_BUDGET
    s = mc_categoricity(_cfg(args), args.trials, 6 if args.depth is None else args.depth, args.seed,
                        "haar" if args.haar else "lebesgue", args.budget or THETA_TEMPLATE_BUDGET)
    print(s.to_json() if args.json else s.to_text())


def cmd_tree(args):
    from isoclass.trees.codec import (finite_variant_decode, finite_variant_encode, format_word,
                                      parse_word, tree_gamma, tree_phi)
    from isoclass.trees.core import embeds
    from isoclass.trees.spine import spine_set, spine_tree
    op = args.op
    if op == "encode":
        T = _tree(args.tree)
        word = finite_variant_encode(T) if args.finite else tree_gamma(T, args.levels or T.height)
        _emit(args, format_word(word), {"word": list(word)})
    elif op == "decode":
        word = parse_word(args.word)
        T = finite_variant_decode(word) if args.finite else tree_phi(word)
        _emit(args, T.code, {"code": T.code, "parent": list(T.parent)})
    elif op == "embed":
        ok = embeds(_tree(args.tree), _tree(args.into))
        _emit(args, "true" if ok else "false", {"embeds": ok})
    elif op == "spine":
        if args.tree:
            S = spine_set(_tree(args.tree))
            _emit(args, format_set(S), {"set": sorted(S)})
        else:
            S = _int_set(args.set or "")
            M = args.height if args.height is not None else (max(S) + 2 if S else 1)
            T = spine_tree(S, M)
            _emit(args, T.code, {"code": T.code, "parent": list(T.parent)})


def cmd_quotient(args):
    from isoclass.quotient import posets, relations
    op = args.op
    if op in ("ee", "ef", "ecard", "ecard-forall"):
        if args.left is None or args.right is None:
            raise UsageError(f"quotient {op} needs --left and --right")
        A, B = _int_set(args.left), _int_set(args.right)
        fn = {"ee": relations.ee_equiv, "ef": relations.ef_equiv, "ecard": relations.ecard_equiv,
              "ecard-forall": relations.ecard_forall_equiv}[op]
        ok = fn(A, B)
        _emit(args, "true" if ok else "false", {"equivalent": ok})
    elif op == "poset-ee":
        print(format_poset(posets.principal_poset_ee(_int_set(args.set or "")), args.json))
    elif op == "poset-ef":
        print(format_poset(posets.principal_poset_ef(_function(args.fn or "")), args.json))
    elif op == "poset-field":
        if not args.tower:
            raise UsageError("quotient poset-field needs --tower")
        print(format_poset(posets.principal_poset_field(_tower(args.tower), args.budget), args.json))
    elif op == "chains":
        if not args.poset:
            raise UsageError("quotient chains needs --poset")
        text = args.poset
        if text.strip().endswith(".json"):
            with open(text.strip(), encoding="utf-8") as fh:
                text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed poset JSON: {exc.msg}", text[exc.pos:exc.pos + 10]) from None
        v = posets.product_of_chains_test(posets.Poset.from_data(data))
        _emit(args, str(v), {"product": v.is_product, "lengths": list(v.lengths), "reason": v.reason})


# -- parser ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="degree or search budget")
    common.add_argument("--depth", type=int, default=None, help="exploration depth")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="JSON output")

    enum = _Parser(add_help=False)
    enum.add_argument("--enum", default="", help="comma-separated prefix templates")
    enum.add_argument("--max-height", type=int, default=None)
    enum.add_argument("--max-degree", type=int, default=None)

    p = _Parser(prog="isoclass", description="Exact classification of algebraic fields and trees.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("factor", parents=[common], help="factor a polynomial")
    s.add_argument("poly")
    s.add_argument("--over", help="tower to factor over (default Q)")
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("field", parents=[common], help="number field towers")
    s.add_argument("op", choices=["extend", "degree", "iso", "aut", "lattice", "closure"])
    s.add_argument("--tower", default="Q")
    s.add_argument("--poly")
    s.add_argument("--other")
    s.set_defaults(func=cmd_field)

    s = sub.add_parser("decode", parents=[common, enum], help="bit string to field")
    s.add_argument("--bits", required=True)
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("encode", parents=[common, enum], help="field to bit string")
    s.add_argument("--tower", required=True)
    s.add_argument("--length", type=int)
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("measure", parents=[common, enum], help="event measure")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--haar", action="store_true")
    g.add_argument("--lebesgue", action="store_true")
    s.add_argument("--event", required=True, help="root-of:<poly> or contains:<tower>")
    s.set_defaults(func=cmd_measure)

    s = sub.add_parser("theta", parents=[common], help="run the isomorphism functional")
    s.add_argument("--source", required=True)
    s.add_argument("--target", required=True)
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("distinguish", parents=[common], help="distinguishing rationals")
    s.add_argument("--tower", required=True)
    s.add_argument("--poly", required=True)
    s.add_argument("--i", type=int, default=0)
    s.add_argument("--j", type=int, default=1)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--height-bound", type=int, default=50)
    s.set_defaults(func=cmd_distinguish)

    s = sub.add_parser("scott-n", parents=[common], help="binomial tail parameter N")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--delta", required=True)
    s.add_argument("--ratios", default="100,40,35")
    s.set_defaults(func=cmd_scott_n)

    s = sub.add_parser("mc", parents=[common, enum], help="Monte Carlo run of the functional")
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--haar", action="store_true", help="sample by Haar branch weights")
    s.set_defaults(func=cmd_mc)

    s = sub.add_parser("tree", parents=[common], help="finite trees")
    s.add_argument("op", choices=["encode", "decode", "embed", "spine"])
    s.add_argument("--tree", help="canonical code like (()()) or a JSON parent list")
    s.add_argument("--into", help="target tree for embed")
    s.add_argument("--word", default="")
    s.add_argument("--levels", type=int)
    s.add_argument("--finite", action="store_true")
    s.add_argument("--set")
    s.add_argument("--height", type=int)
    s.set_defaults(func=cmd_tree)

    s = sub.add_parser("quotient", parents=[common], help="quotient relations and posets")
    s.add_argument("op", choices=["ee", "ef", "ecard", "ecard-forall", "poset-ee", "poset-ef",
                                  "poset-field", "chains"])
    s.add_argument("--left")
    s.add_argument("--right")
    s.add_argument("--set")
    s.add_argument("--fn")
    s.add_argument("--tower")
    s.add_argument("--poset")
    s.set_defaults(func=cmd_quotient)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IsoclassError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
