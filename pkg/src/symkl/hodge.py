"""Closed-form Hodge data of Sym^k Kl_2: Hodge numbers, polygons, gamma factors."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import mpmath

from .errors import CheckFailed, RecipeMismatch
from .polygon import Polygon, newton_polygon

VARIANTS = ("H1", "H1_mid", "H1_tilde", "H1_mid_tilde")


def _d4(k):
    return 1 if k % 4 == 0 else 0


@dataclass(frozen=True)
class HodgeData:
    k: int
    variant: str
    entries: dict  # (p, q, weight) -> multiplicity

    @property
    def dimension(self) -> int:
        return sum(self.entries.values())

    def first_coordinates(self) -> list[int]:
        out = []
        for (p, _q, _w), mult in self.entries.items():
            out += [p] * mult
        return sorted(out)

    def weight_part(self, w: int) -> dict:
        return {key: v for key, v in self.entries.items() if key[2] == w}

    def is_symmetric(self) -> bool:
        return all(self.entries.get((q, p, w), 0) == m for (p, q, w), m in self.entries.items())


def _add(entries, p, q, w):
    entries[(p, q, w)] = entries.get((p, q, w), 0) + 1


def hodge_numbers(k: int, variant: str = "H1") -> HodgeData:
    if k < 1:
        raise ValueError("k must be positive")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    w = k + 1
    e: dict = {}
    if variant in ("H1", "H1_mid"):
        if k % 2:
            for p in range(2, k, 2):
                _add(e, p, w - p, w)
        else:
            for lo in range(2, 2 * ((k - 1) // 4) + 1, 2):
                _add(e, lo, w - lo, w)
                _add(e, w - lo, lo, w)
            if variant == "H1" and (k // 2 + 1) % 2:
                _add(e, k // 2 + 1, k // 2 + 1, k + 2)
        if variant == "H1":
            _add(e, w, w, 2 * w)
    else:
        skip = {k // 2, k // 2 + 1} if k % 2 == 0 else set()
        for p in range(1, k + 1):
            if p not in skip:
                _add(e, p, w - p, w)
        if variant == "H1_tilde":
            if k % 2 == 0:
                _add(e, k // 2 + 1, k // 2 + 1, k + 2)
            _add(e, w, w, 2 * w)
    return HodgeData(k, variant, e)


@dataclass(frozen=True)
class Dims:
    h1: int
    h1_mid: int
    h1_tilde: int
    h1_mid_tilde: int

    def as_tuple(self):
        return (self.h1, self.h1_mid, self.h1_tilde, self.h1_mid_tilde)


def dims(k: int) -> Dims:
    odd = k % 2 == 1
    return Dims((k + 1) // 2, (k - 1) // 2 - _d4(k),
                k + 1 if odd else k, k if odd else k - 2)


def hodge_polygon_compact(k: int) -> Polygon:
    """Slopes k+1-p over the first Hodge coordinates p of H^1 (duality twist)."""
    ps = hodge_numbers(k, "H1").first_coordinates()
    return Polygon.from_slopes([k + 1 - p for p in ps])


@dataclass(frozen=True)
class GammaFactor:
    k: int
    m: int
    shifts: tuple[int, ...]

    def log_value(self, s) -> complex:
        """log of pi^{-ms/2} prod Gamma((s-j)/2)."""
        s = mpmath.mpc(s)
        out = -self.m * s / 2 * mpmath.log(mpmath.pi)
        for j in self.shifts:
            out += mpmath.loggamma((s - j) / 2)
        return complex(out)


def hodge_gamma_shifts(k: int) -> list[int]:
    """Gamma_R shifts a (factors Gamma_R(s - a)) from the middle Hodge numbers.

    Gamma_C(s - p) = Gamma_R(s - p) Gamma_R(s - p + 1) for each pair p < q;
    a middle class p = q = w/2 contributes Gamma_R(s - w/2 + 1) when its
    minus-part is one (k = 3 mod 4), Gamma_R(s - w/2) otherwise.
    """
    w = k + 1
    shifts = []
    for (p, q, _w), mult in hodge_numbers(k, "H1_mid").entries.items():
        if p < q:
            shifts += [p, p - 1] * mult
        elif p == q:
            minus = 1 if k % 4 == 3 else 0
            shifts += [w // 2 - minus] * mult
    return sorted(shifts)


def _gamma_r_log(s, shifts):
    s = mpmath.mpc(s)
    return sum((-(s - a) / 2 * mpmath.log(mpmath.pi) + mpmath.loggamma((s - a) / 2)
                for a in shifts), mpmath.mpc(0))


def gamma_factor(k: int) -> GammaFactor:
    m = (k - 1) // 2 - _d4(k)
    g = GammaFactor(k, m, tuple(range(1, m + 1)))
    recipe = hodge_gamma_shifts(k)
    if Counter(recipe) != Counter(g.shifts):
        raise RecipeMismatch(f"k={k}: recipe shifts {recipe} vs closed form {list(g.shifts)}")
    # the ratio must be A * B^s: its log is affine in s
    pts = [mpmath.mpf(k + 3), mpmath.mpf(k + 3.5), mpmath.mpf(k + 4)]
    diff = [g.log_value(s) - complex(_gamma_r_log(s, recipe)) for s in pts]
    if abs(diff[0] - 2 * diff[1] + diff[2]) > 1e-9 * (1 + abs(diff[1])):
        raise RecipeMismatch(f"k={k}: gamma ratio is not of the form A*B^s")
    return g


@dataclass
class NewtonHodgeReport:
    k: int
    p: int
    newton: Polygon
    hodge: Polygon
    above: bool
    endpoints_equal: bool
    endpoints_expected_equal: bool
    valuation_ok: bool

    @property
    def passed(self) -> bool:
        return (self.above and self.valuation_ok
                and self.endpoints_equal == self.endpoints_expected_equal)


def newton_vs_hodge(k: int, p: int, Z) -> NewtonHodgeReport:
    """Newton polygon of Z_k(p;T) against the compact Hodge polygon.

    Raises CheckFailed if Newton dips below Hodge, if endpoint coincidence
    disagrees with p > k (odd k) / 2p > k (even k), or if ord_p c_n < n(n-1).
    The comparison is only asserted for odd p.
    """
    if p == 2:
        raise ValueError("the Newton/Hodge comparison is stated for odd p only")
    N = newton_polygon(Z, p)
    H = hodge_polygon_compact(k)
    above = N.lies_above(H)
    endpoints = N.vertices[-1] == H.vertices[-1]
    expected = p > k if k % 2 else 2 * p > k
    from .arith.numtheory import valuation
    valuation_ok = all(c == 0 or valuation(c, p) >= n * (n - 1) for n, c in enumerate(Z.coeffs))
    rep = NewtonHodgeReport(k, p, N, H, above, endpoints, expected, valuation_ok)
    if not above:
        raise CheckFailed("newton_above_hodge", f"k={k} p={p}: Newton {N.vertices} below Hodge {H.vertices}")
    if endpoints != expected:
        raise CheckFailed("newton_hodge_endpoints",
                          f"k={k} p={p}: endpoint coincidence {endpoints}, expected {expected}")
    if not valuation_ok:
        raise CheckFailed("valuation_bound", f"k={k} p={p}: ord_p(c_n) < n(n-1)")
    return rep


@dataclass(frozen=True)
class IrregularityRigidity:
    k: int
    irr_inf: int
    irr_inf_tilde: int
    swan_2: int
    rig: int
    rig_tilde: int


def irregularity_and_rigidity(k: int) -> IrregularityRigidity:
    if k % 2:
        m = (k - 1) // 2
        rig = 2 * (1 - m * m)
        swan = (k + 1) // 2
    else:
        m = k // 2
        rig = -2 * (m * m - m - 1)
        swan = (k + 2) // 4
    return IrregularityRigidity(
        k=k, irr_inf=(k + 1) // 2, irr_inf_tilde=k + 1 if k % 2 else k,
        swan_2=swan, rig=rig, rig_tilde=(k + 1) * (2 - k))
