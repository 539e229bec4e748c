"""The polynomial map value type shared by analysis and normalization."""

from __future__ import annotations

from dataclasses import dataclass

from .poly import Poly, SOURCE


@dataclass(frozen=True)
class PolyMap:
    """A plane map ``(x, y) -> (u, v) = (f1(x, y), f2(x, y))``."""

    f1: Poly
    f2: Poly

    def __post_init__(self):
        for P in (self.f1, self.f2):
            if not set(P.variables()) <= set(SOURCE):
                raise ValueError(f"map component {P} must only involve x and y")

    @classmethod
    def parse(cls, f1: str, f2: str) -> "PolyMap":
        from .textio import parse_poly

        return cls(parse_poly(f1, SOURCE), parse_poly(f2, SOURCE))

    def __iter__(self):
        return iter((self.f1, self.f2))

    def total_degree(self) -> int:
        return max(self.f1.total_degree(), self.f2.total_degree())

    def at(self, point):
        """Exact or numeric image of a source point ``(x, y)``."""
        env = {"x": point[0], "y": point[1]}
        return (self.f1.evaluate(env), self.f2.evaluate(env))

    def to_json(self) -> dict:
        return {"f1": str(self.f1), "f2": str(self.f2)}

    def __str__(self):
        return f"({self.f1}, {self.f2})"
