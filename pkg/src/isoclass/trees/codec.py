"""The enumeration L of finite trees and the Baire-space codec.

L lists isomorphism types of finite rooted trees by node count, then by
canonical code.  A Baire word h names a tree level by level: h(m) is the rank,
in L order, of the height-(m+1) extension chosen for the current truncation.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

from isoclass.errors import ParseError
from isoclass.trees.core import FiniteTree, canonical_code, tree_from_code, truncate


# -- the list L ------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _forests(n: int, max_code: str | None) -> tuple:
    """Sorted child-code multisets of total size n, codes non-increasing (<= max_code)."""
    if n == 0:
        return ((),)
    out = []
    for k in range(1, n + 1):
        for c in codes_of_size(k):
            if max_code is not None and c > max_code:
                continue
            for rest in _forests(n - k, c):
                out.append((c,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def codes_of_size(n: int) -> tuple:
    """Canonical codes of all rooted trees with n nodes, sorted."""
    if n < 1:
        return ()
    return tuple(sorted("(" + "".join(sorted(f)) + ")" for f in _forests(n - 1, None)))


def _offset(n: int) -> int:
    return sum(len(codes_of_size(k)) for k in range(1, n))


def tree_at(j: int) -> FiniteTree:
    if j < 0:
        raise IndexError("tree indices are natural numbers")
    n = 1
    while j >= len(codes_of_size(n)):
        j -= len(codes_of_size(n))
        n += 1
    return tree_from_code(codes_of_size(n)[j])


def index_of(T: FiniteTree) -> int:
    codes = codes_of_size(len(T))
    lo, hi = 0, len(codes)
    code = T.code
    while lo < hi:
        mid = (lo + hi) // 2
        if codes[mid] < code:
            lo = mid + 1
        else:
            hi = mid
    return _offset(len(T)) + lo


def l_key(T: FiniteTree):
    """Position key in L: node count, then canonical code."""
    return (len(T), T.code)


# -- level extensions --------------------------------------------------------------------


def _extensions_with(B: FiniteTree, m: int, k: int) -> list:
    """Codes of trees obtained from B (height m) by adding k leaves at level m + 1."""
    tops = [v for v in range(len(B)) if B.levels[v] == m]
    seen = set()
    for choice in combinations_with_replacement(range(len(tops)), k):
        parent = list(B.parent)
        for i in choice:
            parent.append(tops[i])
        seen.add(canonical_code(FiniteTree(parent)))
    return sorted(seen)


def extensions(B: FiniteTree, m: int):
    """Height-(m+1) trees S with S|_m isomorphic to B, lazily in L order."""
    if B.height != m:
        raise ValueError(f"base tree has height {B.height}, expected {m}")
    k = 1
    while True:
        for code in _extensions_with(B, m, k):
            yield code
        k += 1


def _nth_extension(B: FiniteTree, m: int, r: int) -> FiniteTree:
    for i, code in enumerate(extensions(B, m)):
        if i == r:
            return tree_from_code(code)
    raise AssertionError("unreachable")


def _rank(T1: FiniteTree, B: FiniteTree, m: int) -> int:
    target = T1.code
    for i, code in enumerate(extensions(B, m)):
        if code == target:
            return i
        if len(code) > len(target):
            break
    raise ValueError("tree is not an extension of its own truncation")


def tree_gamma(T: FiniteTree, M: int) -> tuple:
    """The first M entries of the Baire word naming T."""
    if T.height < M:
        raise ValueError(f"tree of height {T.height} cannot supply {M} levels")
    return tuple(_rank(truncate(T, m + 1), truncate(T, m), m) for m in range(M))


def tree_phi(h) -> FiniteTree:
    """The tree named by a finite Baire word (height len(h))."""
    T = FiniteTree([0])
    for m, r in enumerate(h):
        if r < 0:
            raise ValueError("Baire words have natural-number entries")
        T = _nth_extension(T, m, r)
    return T


# -- finite variant -------------------------------------------------------------------------


def finite_variant_encode(T: FiniteTree, length: int | None = None) -> tuple:
    """0 marks the level where T stops; k >= 1 is an extension of rank k - 1.

    The word has length ``height + 1`` unless a longer ``length`` pads it with 0s.
    """
    word = tuple(r + 1 for r in tree_gamma(T, T.height)) + (0,)
    if length is not None:
        if length < len(word):
            raise ValueError(f"the word needs at least {len(word)} entries")
        word += (0,) * (length - len(word))
    return word


def check_finite_word(h) -> None:
    for i in range(len(h) - 1):
        if h[i] == 0 and h[i + 1] != 0:
            raise ValueError(f"entry {i + 1} is nonzero after a 0 at entry {i}")


def finite_variant_decode(h) -> FiniteTree:
    check_finite_word(h)
    T = FiniteTree([0])
    for m, r in enumerate(h):
        if r == 0:
            break
        T = _nth_extension(T, m, r - 1)
    return T


def parse_word(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok.isdigit():
            raise ParseError("Baire words are comma-separated naturals", tok)
        out.append(int(tok))
    return tuple(out)


def format_word(h) -> str:
    return ",".join(str(x) for x in h)
