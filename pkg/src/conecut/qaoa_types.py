"""Angle sequences and energy-query results shared by the two engines."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConecutError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class AngleSequence:
    """The 2p parameters of a depth-p circuit, stored canonically in [0, 2pi).

    ``gamma[l]`` drives the l-th diagonal phase layer, ``beta[l]`` the l-th
    layer of X rotations; layer 0 is applied first.
    """

    gamma: tuple[float, ...]
    beta: tuple[float, ...]

    def __post_init__(self):
        if len(self.gamma) != len(self.beta) or not self.gamma:
            raise ConecutError("gamma and beta must have equal positive length")
        object.__setattr__(self, "gamma", tuple(float(x) % TWO_PI for x in self.gamma))
        object.__setattr__(self, "beta", tuple(float(x) % TWO_PI for x in self.beta))

    @property
    def p(self) -> int:
        return len(self.gamma)

    def to_flat(self) -> list[float]:
        return list(self.gamma) + list(self.beta)

    @classmethod
    def from_flat(cls, flat) -> "AngleSequence":
        flat = list(flat)
        if len(flat) % 2:
            raise ConecutError("flat angle vector must have even length")
        p = len(flat) // 2
        return cls(tuple(flat[:p]), tuple(flat[p:]))

    def to_json(self) -> list[list[float]]:
        return [list(self.gamma), list(self.beta)]

    @classmethod
    def from_json(cls, doc) -> "AngleSequence":
        if not (isinstance(doc, (list, tuple)) and len(doc) == 2):
            raise ConecutError("angles JSON must be [[gamma...],[beta...]]")
        return cls(tuple(doc[0]), tuple(doc[1]))


@dataclass(frozen=True)
class EnergyResult:
    """Energy of the selected edge observables at one angle sequence.

    ``total`` is the sum of ``per_edge``; ``ratio`` divides by the selected
    weight, so it is the expected cut fraction for nonnegative weights.
    """

    total: float
    per_edge: tuple[float, ...]
    edge_ids: tuple[int, ...]
    ratio: float
    query_seconds: float
    method: str

    def to_json(self, include_timing: bool = False) -> dict:
        doc = {
            "total": self.total,
            "per_edge": list(self.per_edge),
            "edge_ids": list(self.edge_ids),
            "ratio": self.ratio,
            "method": self.method,
        }
        if include_timing:
            doc["query_seconds"] = self.query_seconds
        return doc
