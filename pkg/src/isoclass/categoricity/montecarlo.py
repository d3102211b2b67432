"""Seeded sampling of Theta on random fields and re-towered copies."""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from fractions import Fraction

from isoclass.canonical.config import EnumerationConfig
from isoclass.canonical.tree import phi_decode
from isoclass.categoricity.theta import THETA_TEMPLATE_BUDGET, theta_iso
from isoclass.arith.poly import Poly
from isoclass.field.embed import Embedding
from isoclass.field.tower import RATIONALS, FieldTower
from isoclass.measure.haar import node_haar


def trial_rng(seed: int, t: int) -> random.Random:
    """Per-trial generator; independent of the order trials run in."""
    return random.Random(f"{seed}:{t}")


def sample_bits(rng: random.Random, depth: int, cfg: EnumerationConfig, kind: str = "lebesgue") -> str:
    if kind == "lebesgue":
        return "".join(rng.choice("01") for _ in range(depth))
    if kind != "haar":
        raise ValueError(f"unknown measure {kind!r}")
    sigma = ""
    for _ in range(depth):
        w = node_haar(sigma, cfg)
        p1 = node_haar(sigma + "1", cfg) / w
        sigma += "1" if rng.randrange(p1.denominator) < p1.numerator else "0"
    return sigma


def _monomials(F: FieldTower, e) -> list:
    """(coefficient, exponent vector) pairs of e on the power-product basis."""
    degs = F.degrees
    out = []
    for b, c in enumerate(e.coords()):
        if c:
            exps, r = [], b
            for d in degs:
                exps.append(r % d)
                r //= d
            out.append((c, exps))
    return out


def retower(F: FieldTower, rng: random.Random) -> FieldTower:
    """A second presentation of F: adjunction steps in a random order.

    Only orders respecting the generator references inside the defining
    polynomials are drawn.  Every step keeps its degree (the degrees still
    multiply to [F:Q]), so no irreducibility check is needed; the explicit
    generator map K -> F is verified instead.
    """
    n = F.depth
    terms = [[_monomials(F, c) for c in F.minpolys[i].coeffs] for i in range(n)]
    deps = [{j for poly in terms[i] for _, ex in poly for j, x in enumerate(ex) if x} for i in range(n)]
    order, placed = [], set()
    while len(order) < n:
        ready = [i for i in range(n) if i not in placed and deps[i] <= placed]
        i = rng.choice(ready)
        order.append(i)
        placed.add(i)
    pos = {i: k for k, i in enumerate(order)}
    K = RATIONALS
    for i in order:
        coeffs = []
        for poly in terms[i]:
            z = K.zero
            for c, ex in poly:
                m = K.convert(c)
                for j, x in enumerate(ex):
                    if x:
                        m = m * K.gen(pos[j]) ** x
                z = z + m
            coeffs.append(z)
        K = K.extend(Poly(coeffs, K), name=f"b{K.depth}", check=False)
    back = Embedding(K, F, tuple(F.gen(i) for i in order))
    if K.degree != F.degree or not back.verify():
        raise AssertionError("re-towering changed the field")
    return K


@dataclass(frozen=True)
class MCStats:
    seed: int
    cfg: str
    measure: str
    depth: int
    trials: int
    successes: int
    divergences: int
    exhausted: int

    @property
    def success_fraction(self) -> Fraction:
        return Fraction(self.successes, self.trials)

    def to_json(self) -> str:
        d = asdict(self)
        d["success_fraction"] = str(self.success_fraction)
        return json.dumps(d, sort_keys=True)

    def to_text(self) -> str:
        d = asdict(self)
        d["success_fraction"] = str(self.success_fraction)
        return "\n".join(f"{k}={v}" for k, v in d.items())

    @classmethod
    def parse(cls, text: str) -> "MCStats":
        d = dict(line.split("=", 1) for line in text.strip().splitlines())
        d.pop("success_fraction", None)
        ints = {"seed", "depth", "trials", "successes", "divergences", "exhausted"}
        return cls(**{k: int(v) if k in ints else v for k, v in d.items()})


def run_trial(cfg: EnumerationConfig, depth: int, rng: random.Random, kind: str, budget: int):
    h = sample_bits(rng, depth, cfg, kind)
    F = phi_decode(h, cfg)
    K = retower(F, rng)
    return theta_iso(F, K, budget)


def mc_categoricity(cfg: EnumerationConfig | None = None, trials: int = 200, depth: int = 6,
                    seed: int = 0, kind: str = "lebesgue",
                    budget: int = THETA_TEMPLATE_BUDGET) -> MCStats:
    if trials < 1:
        raise ValueError("at least one trial is required")
    cfg = EnumerationConfig() if cfg is None else cfg
    counts = {"total": 0, "diverged": 0, "budget": 0}
    for t in range(trials):
        out = run_trial(cfg, depth, trial_rng(seed, t), kind, budget)
        counts[out.kind] += 1
    return MCStats(seed, cfg.digest(), kind, depth, trials,
                   counts["total"], counts["diverged"], counts["budget"])
