"""De Rham cohomology of the Sym^k Kl_2 connection by exact linear algebra.

Elements are finite Q-combinations of z^r eta_a (0 <= a <= k) with degree
2r + a. The operator z d/dz splits into an Euler part (degree 0) and a
matrix part (degree +1):

    z d/dz (z^r eta_a) = r z^r eta_a + z^r ((k-a) eta_{a+1} + a z eta_{a-1}).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import MismatchWithTheorem, StabilizationFailure


@dataclass(frozen=True)
class GradedElement:
    terms: dict = field(default_factory=dict)  # (r, a) -> Fraction

    @classmethod
    def monomial(cls, r: int, a: int, c=1) -> "GradedElement":
        return cls({(r, a): Fraction(c)})

    def __add__(self, other: "GradedElement") -> "GradedElement":
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return GradedElement(out)

    def scale(self, c) -> "GradedElement":
        c = Fraction(c)
        return GradedElement({key: v * c for key, v in self.terms.items()} if c else {})

    def degrees(self) -> set[int]:
        return {2 * r + a for r, a in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"{c}*z^{r}*eta_{a}" for (r, a), c in sorted(self.terms.items())]
        return " + ".join(parts)


def _acc(out, key, c):
    if c:
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)


def connection_parts(x: GradedElement, k: int) -> tuple[GradedElement, GradedElement]:
    """(Euler part, matrix part) of z d/dz applied to x."""
    euler: dict = {}
    matrix: dict = {}
    for (r, a), c in x.terms.items():
        if not 0 <= a <= k or r < 0:
            raise ValueError(f"index ({r}, {a}) out of range for k={k}")
        _acc(euler, (r, a), r * c)
        if a < k:
            _acc(matrix, (r, a + 1), (k - a) * c)
        if a > 0:
            _acc(matrix, (r + 1, a - 1), a * c)
    return GradedElement(euler), GradedElement(matrix)


def connection_apply(x: GradedElement, k: int) -> GradedElement:
    e, m = connection_parts(x, k)
    return e + m


def monomials_upto(k: int, D: int) -> list[tuple[int, int]]:
    """All (r, a) with 2r + a <= D, sorted by descending degree then descending a."""
    out = [(r, a) for a in range(k + 1) for r in range(max(0, (D - a) // 2 + 1)) if 2 * r + a <= D]
    return sorted(out, key=lambda t: (-(2 * t[0] + t[1]), -t[1]))


class _Echelon:
    """Incremental row echelon form over Q keyed by leading monomial.

    The leading monomial of a row is its largest key under ``order``.
    """

    def __init__(self, order: dict):
        self.order = order  # monomial -> rank, smaller rank = larger monomial
        self.rows: dict = {}

    def _lead(self, v: dict):
        return min(v, key=self.order.__getitem__) if v else None

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        while v:
            # reduce the largest monomial that has a pivot, fully
            pivots = [m for m in v if m in self.rows]
            if not pivots:
                return v
            m = min(pivots, key=self.order.__getitem__)
            row = self.rows[m]
            c = v[m] / row[m]
            for key, val in row.items():
                _acc(v, key, -c * val)
        return v

    def add(self, v: dict) -> bool:
        v = self._reduce_leading(v)
        if not v:
            return False
        lead = self._lead(v)
        self.rows[lead] = v
        return True

    def _reduce_leading(self, v: dict) -> dict:
        v = dict(v)
        while v:
            lead = self._lead(v)
            if lead not in self.rows:
                return v
            row = self.rows[lead]
            c = v[lead] / row[lead]
            for key, val in row.items():
                _acc(v, key, -c * val)
        return v


def _degree(mono):
    return 2 * mono[0] + mono[1]


@dataclass
class CohomologyResult:
    k: int
    D: int
    h0_dim: int
    h1_dim: int
    h1_basis: list  # list of GradedElement
    graded_h0: dict  # degree -> dim of graded kernel
    graded_h1: dict  # degree -> dim of graded cokernel
    stable: bool


def _image_echelon(k: int, D: int):
    order_monos = monomials_upto(k, D + 1)
    order = {m: i for i, m in enumerate(order_monos)}
    ech = _Echelon(order)
    kernel = 0
    for mono in monomials_upto(k, D):
        img = connection_apply(GradedElement.monomial(*mono), k)
        if not ech.add(img.terms):
            kernel += 1
    return ech, kernel


def _coker_dim(ech: _Echelon, k: int, Dp: int) -> int:
    n_monos = len(monomials_upto(k, Dp))
    n_piv = sum(1 for m in ech.rows if _degree(m) <= Dp)
    return n_monos - n_piv


def graded_complex(k: int, D: int) -> tuple[dict, dict]:
    """Kernel and cokernel dimensions of the matrix part, degree by degree."""
    h0, h1 = {}, {0: 1}  # nothing maps into degree 0
    for d in range(D + 1):
        src = [(r, a) for (r, a) in monomials_upto(k, d) if 2 * r + a == d]
        tgt = [(r, a) for (r, a) in monomials_upto(k, d + 1) if 2 * r + a == d + 1]
        order = {m: i for i, m in enumerate(tgt)}
        ech = _Echelon(order)
        rank = 0
        for mono in src:
            _, mat = connection_parts(GradedElement.monomial(*mono), k)
            rank += ech.add(mat.terms)
        h0[d] = len(src) - rank
        h1[d + 1] = len(tgt) - rank
    return h0, h1


def cohomology(k: int, D: int | None = None) -> CohomologyResult:
    """H^0 and H^1 of z d/dz on the lattice sum_a C[z] eta_a, via truncation.

    The image of the degree <= D part is intersected with degree <= D - 2.
    Raises StabilizationFailure if the cokernel dimension still changes when
    the truncation is enlarged by 2.
    """
    if D is None:
        D = 2 * k + 6
    if D < 2 * k + 4:
        raise ValueError("need D >= 2k + 4")
    Dp = D - 2
    ech, kernel = _image_echelon(k, D)
    dim = _coker_dim(ech, k, Dp)
    ech2, kernel2 = _image_echelon(k, D + 2)
    stable = dim == _coker_dim(ech2, k, Dp) == _coker_dim(ech2, k, Dp + 2) and kernel == kernel2
    if not stable:
        raise StabilizationFailure(f"k={k}: cokernel dimension not stable at D={D}")
    expected = (k + 1) // 2
    basis = [GradedElement.monomial(j, 0) for j in range(expected)]
    # the classes z^j eta_0 must be independent modulo the image
    reduced = _Echelon({m: i for i, m in enumerate(monomials_upto(k, Dp))})
    indep = all(reduced.add(ech.reduce(b.terms)) for b in basis)
    if not indep:
        raise StabilizationFailure(f"k={k}: classes z^j eta_0 are dependent in the cokernel")
    g0, g1 = graded_complex(k, D)
    return CohomologyResult(k, D, kernel, dim, basis, g0, g1, stable)


def graded_kernel_generator(k: int) -> GradedElement:
    """sigma = sum_i (-1)^i C(k/2, i) z^i eta_{k-2i}; certified in the matrix-part kernel."""
    if k % 2:
        raise ValueError("k must be even")
    h = k // 2
    sigma = GradedElement({(i, k - 2 * i): Fraction((-1) ** i * comb(h, i)) for i in range(h + 1)})
    _, mat = connection_parts(sigma, k)
    if not mat.is_zero():
        raise MismatchWithTheorem(f"k={k}: matrix part does not kill the kernel generator")
    return sigma


def euler_part_in_image(k: int, r: int) -> bool:
    """Whether the Euler part of z d/dz(z^r sigma) lies in the image of the matrix part."""
    sigma = graded_kernel_generator(k)
    shifted = GradedElement({(i + r, a): c for (i, a), c in sigma.terms.items()})
    euler, _ = connection_parts(shifted, k)
    d = k + 2 * r
    src = [(rr, a) for (rr, a) in monomials_upto(k, d - 1) if 2 * rr + a == d - 1]
    tgt = [(rr, a) for (rr, a) in monomials_upto(k, d) if 2 * rr + a == d]
    ech = _Echelon({m: i for i, m in enumerate(tgt)})
    for mono in src:
        ech.add(connection_parts(GradedElement.monomial(*mono), k)[1].terms)
    return not ech.reduce(euler.terms)


@dataclass
class FiltrationJumps:
    k: int
    jumps: list  # computed from the connection, within the validity range
    full: list   # jumps over all of H^1, low range from Hodge numbers for even k
    theorem_sourced: list  # entries of ``full`` not recomputed here


def filtration_jumps(k: int) -> FiltrationJumps:
    """Jumps k+1-2j of the Hodge filtration on the classes z^j eta_0.

    For even k only jumps above k/2 are computed; the rest are filled from
    the Hodge numbers and marked as such.
    """
    from .hodge import hodge_numbers
    all_j = [k + 1 - 2 * j for j in range((k + 1) // 2)]
    if k % 2:
        jumps = sorted(all_j)
    else:
        jumps = sorted(x for x in all_j if 2 * x > k)
    theory = hodge_numbers(k, "H1").first_coordinates()
    overlap = sorted(x for x in theory if k % 2 or 2 * x > k)
    if overlap != jumps:
        raise MismatchWithTheorem(f"k={k}: jumps {jumps} vs Hodge numbers {overlap}")
    rest = sorted(x for x in theory if not (k % 2 or 2 * x > k))
    return FiltrationJumps(k, jumps, sorted(jumps + rest), rest)
