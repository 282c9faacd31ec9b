"""Bundled reference curves."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .curve_core import WeierstrassModel, to_rational


@dataclass(frozen=True)
class Ell5Curve:
    id: str
    lmfdb_label: str
    model: WeierstrassModel
    type_at_5: str
    t: Fraction

    def x0_5_j(self) -> Fraction:
        """j-invariant predicted by the X0(5) parameter."""
        t = self.t
        return (t * t + 10 * t + 5) ** 3 / t


def load_ell5() -> list[Ell5Curve]:
    raw = json.loads(resources.files(__package__).joinpath("data/ell5_fixtures.json").read_text())
    return [
        Ell5Curve(c["id"], c["lmfdb_label"], WeierstrassModel.from_ainvs(c["a_invariants"]),
                  c["type_at_5"], to_rational(c["x0_5_parameter"]))
        for c in raw["curves"]
    ]
