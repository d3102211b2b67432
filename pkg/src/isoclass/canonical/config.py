"""Enumeration configurations for the canonical Cantor tree.

A configuration is an ordered list of polynomial templates over Q, followed by
the node-local fallback enumeration.  Templates may mention ``r0, r1, ...``:
``rk`` stands for the root adjoined when entry ``k`` was accepted on the
current branch.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

from isoclass.arith.text import tokenize
from isoclass.errors import ParseError

_ROOT = re.compile(r"r(\d+)$")

DEFAULT_MAX_HEIGHT = 20
DEFAULT_MAX_DEGREE = 7


def template_roots(text: str) -> frozenset:
    """Indices k of the root symbols rk a template mentions."""
    out = set()
    for kind, val in tokenize(text):
        if kind == "name":
            m = _ROOT.match(val)
            if m:
                out.add(int(m.group(1)))
    return frozenset(out)


def _check_template(text: str, index: int):
    names = set()
    for kind, val in tokenize(text):
        if kind == "name" and not _ROOT.match(val):
            names.add(val)
    if len(names) > 1:
        raise ParseError("template has more than one free variable", sorted(names)[1])
    for k in template_roots(text):
        if k >= index:
            raise ParseError(f"template {index} refers to a later entry", f"r{k}")


@dataclass(frozen=True)
class EnumerationConfig:
    prefix: tuple = ()
    max_height: int = DEFAULT_MAX_HEIGHT
    max_degree: int = DEFAULT_MAX_DEGREE

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(s.strip() for s in self.prefix))
        for i, s in enumerate(self.prefix):
            if not s:
                raise ParseError("empty template", f"entry {i}")
            _check_template(s, i)
        if self.max_height < 1 or self.max_degree < 2:
            raise ValueError("fallback bounds must allow at least height 1 and degree 2")

    @classmethod
    def parse(cls, text: str, **bounds) -> "EnumerationConfig":
        text = text.strip()
        entries = [s for s in text.split(",")] if text else []
        return cls(tuple(entries), **bounds)

    def roots_of(self, k: int) -> frozenset:
        return template_roots(self.prefix[k])

    def text(self) -> str:
        return ", ".join(self.prefix)

    def digest(self) -> str:
        blob = f"{self.text()}|{self.max_height}|{self.max_degree}".encode()
        return hashlib.sha256(blob).hexdigest()[:12]

    def __str__(self):
        return self.text()


def parse_config(text: str, **bounds) -> EnumerationConfig:
    return EnumerationConfig.parse(text, **bounds)


def parse_bits(text: str) -> str:
    text = text.strip()
    bad = next((ch for ch in text if ch not in "01"), None)
    if bad is not None:
        raise ParseError("bit strings use only 0 and 1", bad)
    return text
