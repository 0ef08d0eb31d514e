"""Calibrated thresholds shipped with the package."""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path


class FixtureMissing(KeyError):
    pass


def load_fixtures(path: str | os.PathLike | None = None) -> dict:
    if path is None:
        text = resources.files("bernden").joinpath("data/fixtures.json").read_text()
    else:
        p = Path(path)
        if not p.exists():
            raise FixtureMissing(f"fixtures file {p} not found")
        text = p.read_text()
    return json.loads(text)


def lookup(fixtures: dict, *keys: str):
    node = fixtures
    for k in keys:
        if not isinstance(node, dict) or k not in node:
            raise FixtureMissing("fixture " + ".".join(keys) + " is missing")
        node = node[k]
    return node


def recip_tail_tolerance(fixtures: dict, kappa: int, t: float, L: int) -> float:
    for case in lookup(fixtures, "prime_recip_tail", "cases"):
        if case["kappa"] == kappa and case["t"] == t and case["L"] == L:
            return float(case["abs_diff_max"])
    raise FixtureMissing(f"no prime_recip_tail fixture for kappa={kappa}, t={t}, L={L}")
