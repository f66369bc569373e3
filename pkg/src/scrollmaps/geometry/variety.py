"""Projective varieties given by saturated homogeneous ideals."""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.ring import PolyRing
from ..ideals.hilbert import HilbertData
from ..ideals.ideal import Ideal


@dataclass
class Variety:
    """A closed subscheme of ``P^n``; ``ideal`` is saturated by construction."""

    ideal: Ideal
    name: str = ""

    @classmethod
    def from_ideal(cls, ideal: Ideal, name: str = "", saturate: bool = True, rng=None) -> "Variety":
        if saturate and not ideal.is_zero():
            ideal = ideal.saturate_irrelevant(rng)
        return cls(ideal, name)

    @classmethod
    def ambient(cls, ring: PolyRing, name: str = "") -> "Variety":
        return cls(Ideal.zero(ring), name)

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    @property
    def ambient_dim(self) -> int:
        return self.ring.nvars - 1

    def hilbert(self) -> HilbertData:
        return self.ideal.hilbert()

    @property
    def dim(self) -> int:
        return self.hilbert().dim

    @property
    def degree(self) -> int:
        return self.hilbert().degree

    @property
    def arithmetic_genus(self):
        return self.hilbert().arithmetic_genus

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def is_empty(self) -> bool:
        return self.ideal.is_unit() or self.dim < 0

    def contains(self, other: "Variety") -> bool:
        return self.ideal.issubset(other.ideal)

    def contains_point(self, pt) -> bool:
        return all(not g.evaluate(pt) for g in self.ideal.gens)

    def intersect(self, other: "Variety", name: str = "") -> "Variety":
        return Variety.from_ideal(self.ideal + other.ideal, name)

    def to_text(self) -> str:
        h = self.hilbert().summary()
        block = [f"# {k}: {v}" for k, v in h.items()]
        return self.ideal.to_text() + "\n".join(block) + "\n"

    def __repr__(self):
        return f"Variety({self.name or '?'}, P^{self.ambient_dim})"
