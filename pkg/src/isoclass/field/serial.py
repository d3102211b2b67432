"""JSON shapes for towers and elements.

A tower is a list of steps ``[{"name": "a0", "minpoly": "X^2 - 2"}, ...]``;
minimal polynomials may mention earlier generator names as constants.
"""

from __future__ import annotations

import json

from isoclass.arith.text import format_poly
from isoclass.errors import ParseError
from isoclass.field.tower import FieldTower


def tower_to_data(F: FieldTower) -> list:
    return [{"name": name, "minpoly": format_poly(p)} for name, p in F.steps()]


def tower_from_data(data) -> FieldTower:
    if isinstance(data, dict) and "steps" in data:
        data = data["steps"]
    if not isinstance(data, list):
        raise ParseError("a tower is a list of steps", token=str(data)[:40])
    steps = []
    for k, step in enumerate(data):
        if isinstance(step, str):
            steps.append((f"a{k}", step))
            continue
        if not isinstance(step, dict) or "minpoly" not in step:
            raise ParseError("each step needs a 'minpoly' entry", token=str(step)[:40])
        steps.append((step.get("name", f"a{k}"), step["minpoly"]))
    return FieldTower.from_steps(steps)


def dumps_tower(F: FieldTower) -> str:
    return json.dumps(tower_to_data(F))


def loads_tower(text: str) -> FieldTower:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed tower JSON: {exc.msg}", token=text[exc.pos:exc.pos + 10]) from None
    return tower_from_data(data)


def load_tower(path_or_text: str) -> FieldTower:
    """Inline JSON, a path to a JSON file, "Q", or a ";"-separated list of minimal polynomials."""
    s = path_or_text.strip()
    if s.startswith("[") or s.startswith("{"):
        return loads_tower(s)
    if s.endswith(".json"):
        with open(s, encoding="utf-8") as fh:
            return loads_tower(fh.read())
    if s in ("", "Q", "QQ"):
        return FieldTower()
    return tower_from_data([p.strip() for p in s.split(";")])
