"""Exact arithmetic in Z[zeta_p] on the power basis 1, zeta, ..., zeta^{p-2}."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotRational


def _reduce_full(v: list[int], p: int) -> tuple[int, ...]:
    """Map a length-p vector over 1..zeta^{p-1} to the canonical p-1 coordinates."""
    top = v[p - 1]
    return tuple(v[i] - top for i in range(p - 1))


@dataclass(frozen=True)
class CyclotomicInt:
    p: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.p - 1:
            raise ValueError("coords must have length p-1")

    @classmethod
    def from_full(cls, p: int, v) -> "CyclotomicInt":
        """From coefficients of zeta^0..zeta^{p-1} (any length-p vector)."""
        v = [int(x) for x in v]
        if len(v) != p:
            raise ValueError("need exactly p coefficients")
        return cls(p, _reduce_full(v, p))

    @classmethod
    def integer(cls, p: int, n: int) -> "CyclotomicInt":
        return cls(p, (int(n),) + (0,) * (p - 2))

    @classmethod
    def zeta_power(cls, p: int, e: int) -> "CyclotomicInt":
        v = [0] * p
        v[e % p] = 1
        return cls.from_full(p, v)

    def full(self) -> list[int]:
        return list(self.coords) + [0]

    def _coerce(self, other):
        if isinstance(other, CyclotomicInt):
            if other.p != self.p:
                raise ValueError("different cyclotomic fields")
            return other
        if isinstance(other, int):
            return CyclotomicInt.integer(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.p, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(self.p, tuple(a * other for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        acc = [0] * p
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        acc[(i + j) % p] += a * b
        return CyclotomicInt(p, _reduce_full(acc, p))

    __rmul__ = __mul__

    def galois(self, c: int) -> "CyclotomicInt":
        """Image under zeta -> zeta^c, c prime to p."""
        p = self.p
        if c % p == 0:
            raise ValueError("c must be prime to p")
        v = [0] * p
        for i, a in enumerate(self.coords):
            v[(i * c) % p] += a
        return CyclotomicInt(p, _reduce_full(v, p))

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_complex(self) -> complex:
        import cmath
        w = cmath.exp(2j * cmath.pi / self.p)
        return sum(a * w ** i for i, a in enumerate(self.coords))


def cyc_reduce_to_integer(v: CyclotomicInt) -> int:
    """The rational integer represented by v, or NotRational."""
    if not v.is_rational():
        raise NotRational(f"element {v.coords} of Z[zeta_{v.p}] is not a rational integer")
    return v.coords[0]
