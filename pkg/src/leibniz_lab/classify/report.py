"""Classification reports: orbit counts, components and representatives."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..algebra import LeibnizAlgebra
from ..crossed import PreCrossedDatum, crossed_product
from ..formats import algebra_to_json, field_descriptor, system_to_json


@dataclass(eq=False)
class Representative:
    datum: PreCrossedDatum
    product: LeibnizAlgebra
    label: str | None = None  # named family member, when one matches
    params: dict = dc_field(default_factory=dict)

    @classmethod
    def of(cls, datum, label=None, params=None, product=None):
        return cls(datum, crossed_product(datum) if product is None else product, label, dict(params or {}))

    def to_dict(self):
        out = {"datum": system_to_json(self.datum), "product": algebra_to_json(self.product)}
        if self.label is not None:
            out["label"] = self.label
            out["params"] = self.params
        return out


@dataclass(eq=False)
class Component:
    """Orbits sharing fixed sub-data (a g-bracket, a (lambda, Lambda) pair, ...)."""

    key: dict
    orbit_count: int | None  # None: infinitely many (over Q)
    valid_count: int | None = None
    representatives: list = dc_field(default_factory=list)
    label: str | None = None
    quotient_dim: int | None = None  # for linear components: dim Z - dim B

    def to_dict(self):
        out = {
            "key": self.key,
            "orbit_count": self.orbit_count,
            "valid_count": self.valid_count,
            "representatives": [r.to_dict() for r in self.representatives],
        }
        if self.label is not None:
            out["label"] = self.label
        if self.quotient_dim is not None:
            out["quotient_dim"] = self.quotient_dim
        return out


@dataclass(eq=False)
class ClassificationReport:
    L: LeibnizAlgebra
    g_dim: int
    method: str
    total_candidates: int | None
    valid_count: int | None
    components: list
    breakdown: str = "g_bracket"

    @property
    def field(self):
        return self.L.field

    @property
    def orbit_count(self):
        counts = [c.orbit_count for c in self.components]
        return None if any(c is None for c in counts) else sum(counts)

    @property
    def representatives(self):
        return [r for c in self.components for r in c.representatives]

    def component_sizes(self):
        return [c.orbit_count for c in self.components]

    def to_dict(self):
        return {
            "field": field_descriptor(self.field),
            "L": algebra_to_json(self.L),
            "g_dim": self.g_dim,
            "method": self.method,
            "breakdown": self.breakdown,
            "total_candidates": self.total_candidates,
            "valid_count": self.valid_count,
            "orbit_count": self.orbit_count,
            "component_sizes": self.component_sizes(),
            "components": [c.to_dict() for c in self.components],
        }
