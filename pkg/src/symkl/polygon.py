"""Convex lattice polygons (Newton and Hodge) starting at the origin."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith.numtheory import valuation


@dataclass(frozen=True)
class Polygon:
    vertices: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.vertices or self.vertices[0] != (0, 0):
            raise ValueError("polygon must start at the origin")
        slopes = self.slopes()
        if any(b < a for a, b in zip(slopes, slopes[1:])):
            raise ValueError("slopes must be non-decreasing")

    @property
    def length(self) -> int:
        return self.vertices[-1][0]

    @property
    def height(self) -> int:
        return self.vertices[-1][1]

    def slopes(self) -> list[Fraction]:
        return [Fraction(y1 - y0, x1 - x0)
                for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:])]

    def __call__(self, x) -> Fraction:
        """Height of the polygon at abscissa x (0 <= x <= length)."""
        if x < 0 or x > self.length:
            raise ValueError("abscissa outside the polygon")
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x0 <= x <= x1:
                return Fraction(y0) + Fraction(y1 - y0, x1 - x0) * (x - x0)
        return Fraction(self.vertices[0][1])

    @classmethod
    def from_slopes(cls, slopes) -> "Polygon":
        """Polygon whose unit segments have the given slopes (sorted here)."""
        pts = [(0, 0)]
        x = y = 0
        for s in sorted(slopes):
            x, y = x + 1, y + s
            pts.append((x, y))
        return cls(tuple(_hull(pts)))

    def lies_above(self, other: "Polygon") -> bool:
        """self >= other at every abscissa of their common range."""
        top = min(self.length, other.length)
        xs = {x for x, _ in self.vertices + other.vertices if x <= top}
        return all(self(x) >= other(x) for x in xs)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(points):
    """Lower convex hull of points sorted by x, keeping only true vertices."""
    hull: list[tuple[int, int]] = []
    for pt in sorted(points):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def newton_polygon(Z, p: int) -> Polygon:
    """Lower convex hull of (n, ord_p c_n) over the nonzero coefficients."""
    if Z[0] != 1:
        raise ValueError("constant term must be 1")
    pts = [(n, valuation(c, p)) for n, c in enumerate(Z.coeffs) if c != 0]
    return Polygon(tuple(_hull(pts)))
