"""Completed L-functions Lambda_k(s) and numerical functional-equation checks.

Lambda(s) = sum_n a_n F(s, n) + eps sum_n a_n F(w~ - s, n) with

    F(sigma, n) = 1/(2 pi i) int_{(c)} gamma(sigma + u) n^{-(sigma+u)} e^{u^2} du / u,
    gamma(sigma) = (C / pi^m)^{sigma/2} prod_{j=1}^m Gamma((sigma - j)/2),

and the vertical integral is a trapezoid sum, which converges geometrically
for integrands analytic in a strip around the contour.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import bernoulli, loggamma

from .arith.numtheory import primes_upto
from .arith.poly import IntPolynomial
from .arithmetic_invariants import (bad_local_factor_odd_k, conductor,
                                    conjectural_2_factor_even, epsilon_sign, local_factor_even_k)
from .errors import CheckFailed, MissingEulerFactor, QuadratureDiverged, TruncationTooSmall
from .hodge import gamma_factor
from .local_factors import is_unramified, mid_poly, mid_poly_completed, weil_certify


@dataclass
class LFunctionSpec:
    k: int
    conductor: int
    shifts: tuple[int, ...]
    sign: int
    euler: dict  # p -> inverse local factor
    conjectural_flags: frozenset = frozenset()

    @property
    def weight(self) -> int:
        return self.k + 1

    @property
    def center_shift(self) -> int:
        return self.k + 2

    @property
    def m(self) -> int:
        return len(self.shifts)

    @property
    def pmax(self) -> int:
        return max(self.euler, default=1)


def build_spec(k: int, pmax: int, *, complete: bool = True, certify: bool = True) -> LFunctionSpec:
    """Assemble Lambda_k data from Euler factors at every p <= pmax.

    Even k uses the conjectural 2-adic factor, 2-exponent of the conductor
    and sign; these are listed in ``conjectural_flags``.
    """
    g = gamma_factor(k)
    cond = conductor(k)
    sign = epsilon_sign(k)
    flags = set()
    if cond.conjectural:
        flags.add("conductor_2_exponent")
    if sign.conjectural:
        flags.add("sign")
    euler = {}
    for p in primes_upto(pmax):
        M = mid_poly_completed(k, p)[0] if complete else mid_poly(k, p)
        if k % 2:
            inv = bad_local_factor_odd_k(k, p, M).inverse_factor
        elif p == 2:
            inv = conjectural_2_factor_even(k, M).inverse_factor
            flags.add("euler_factor_2")
        elif 2 * p <= k:
            inv = local_factor_even_k(k, p, M).inverse_factor
        else:
            inv = M
        if certify and is_unramified(k, p):
            if inv.degree != g.m:
                raise CheckFailed("euler_degree", f"k={k} p={p}: degree {inv.degree} != m={g.m}")
            weil_certify(inv, k, p)
        euler[p] = inv
    return LFunctionSpec(k, cond.value, g.shifts, sign.sign, euler, frozenset(flags))


@dataclass(frozen=True)
class DirichletCoefficients:
    N: int
    a: tuple[int, ...]  # a[0] unused, a[1] = 1

    def __getitem__(self, n: int) -> int:
        return self.a[n]


def dirichlet_coefficients(spec: LFunctionSpec, N: int) -> DirichletCoefficients:
    a = [0] * (N + 1)
    if N >= 1:
        a[1] = 1
    local = {}
    for p in primes_upto(N):
        if p not in spec.euler:
            raise MissingEulerFactor(p)
        e = int(math.log(N) / math.log(p)) + 1
        local[p] = spec.euler[p].inverse_series(e + 1)
    spf = list(range(N + 1))
    for p in primes_upto(int(math.isqrt(N))):
        for n in range(p * p, N + 1, p):
            if spf[n] == n:
                spf[n] = p
    for n in range(2, N + 1):
        p = spf[n]
        m, e = n, 0
        while m % p == 0:
            m //= p
            e += 1
        a[n] = local[p][e] * a[m]
    return DirichletCoefficients(N, tuple(a))


@dataclass(frozen=True)
class QuadParams:
    """Quadrature and truncation settings for the smoothed sum.

    The test function is G(u) = exp(delta u^2) B^u. With B = 1 the two
    halves of the sum are mirror images and Lambda(s) = eps Lambda(w~ - s)
    holds identically, so B != 1 is what makes the defect informative.
    delta = None means 0 when the gamma factor is nontrivial (exponential
    decay in n) and 1 when it is empty (needed for convergence).
    """

    step: float = 0.25
    t_max: float = 60.0
    c: float | None = None       # contour abscissa; automatic when None
    c_margin: float = 1.5        # distance kept from u = 0 and the gamma poles
    A: float = 30.0              # truncation constant in N = A sqrt(C) (1 + |Im s|)
    N: int | None = None
    delta: float | None = None
    B: float = 1.2
    tail_tol: float = 1e-10


@dataclass(frozen=True)
class LambdaValue:
    value: complex
    error_estimate: float
    N: int
    c_values: tuple[float, float]


def _log_gamma_factor(spec: LFunctionSpec, z: np.ndarray) -> np.ndarray:
    m = spec.m
    out = z / 2 * (math.log(spec.conductor) - m * math.log(math.pi))
    for j in spec.shifts:
        out = out + loggamma((z - j) / 2)
    return out


def _contour(spec, sigma, quad):
    if quad.c is not None:
        return quad.c
    return max(quad.c_margin, spec.m + quad.c_margin - sigma.real)


def _delta(spec, quad):
    if quad.delta is not None:
        return quad.delta
    return 0.0 if spec.m else 1.0


def _integrand(spec, sigma, quad, logB, logn, c=None):
    """Matrix E[n, j] with F(sigma, n) = step/(2 pi) sum_j E[n, j]."""
    if c is None:
        c = _contour(spec, sigma, quad)
    nodes = int(round(quad.t_max / quad.step))
    t = np.arange(-nodes, nodes + 1) * quad.step
    u = c + 1j * t
    z = sigma + u
    logG = _log_gamma_factor(spec, z) + _delta(spec, quad) * u * u + u * logB - np.log(u)
    with np.errstate(over="ignore"):
        E = np.exp(logG[None, :] - np.outer(logn, z))
    if not np.all(np.isfinite(E)):
        raise QuadratureDiverged(f"non-finite integrand at sigma={sigma}")
    return E, c


def _smoothed_sum(spec, sigma, a, logn, quad, logB):
    """sum_n a_n F(sigma, n) at steps h and 2h, and the sum of |terms|."""
    E, c = _integrand(spec, sigma, quad, logB, logn)
    per_node = a @ E
    w = quad.step / (2 * math.pi)
    full = w * per_node.sum()
    coarse = 2 * w * per_node[::2].sum()
    absum = w * float((np.abs(a) @ np.abs(E)).sum())
    return full, coarse, absum, c


def _abs_F(spec, sigma, quad, logB, ns):
    """Upper bound for |F(sigma, n)|.

    The integrand is holomorphic right of the contour, so the integral of
    its modulus along any line further right bounds |F| without relying on
    cancellation; the best of a few shifts is kept.
    """
    c0 = _contour(spec, sigma, quad)
    w = quad.step / (2 * math.pi)
    best = np.full(len(ns), np.inf)
    for shift in range(0, 41, 4):
        try:
            E, _ = _integrand(spec, sigma, quad, logB, np.log(ns), c=c0 + shift)
        except QuadratureDiverged:
            break  # exp(delta u^2) overflows further right
        best = np.minimum(best, w * np.abs(E).sum(axis=1))
    return best


def truncation_length(spec: LFunctionSpec, s: complex, quad: QuadParams) -> int:
    if quad.N is not None:
        return quad.N
    return max(1, math.ceil(quad.A * math.sqrt(spec.conductor) * (1 + abs(complex(s).imag))))


def completed_lambda_full(spec: LFunctionSpec, s: complex, quad: QuadParams | None = None,
                          coeffs: DirichletCoefficients | None = None) -> LambdaValue:
    """Lambda(s) with an error estimate.

    The estimate combines the trapezoid convergence (the step-h error is
    about the square of the relative step-2h change) with a roundoff term.
    """
    quad = quad or QuadParams()
    s = complex(s)
    N = truncation_length(spec, s, quad)
    if coeffs is None or coeffs.N < N:
        coeffs = dirichlet_coefficients(spec, N)
    a = np.array([float(x) for x in coeffs.a[1:N + 1]])
    logn = np.log(np.arange(1, N + 1, dtype=np.float64))
    logB = math.log(quad.B)
    s_dual = spec.center_shift - s
    f1, c1, abs1, cc1 = _smoothed_sum(spec, s, a, logn, quad, logB)
    f2, c2, abs2, cc2 = _smoothed_sum(spec, s_dual, a, logn, quad, -logB)
    value = f1 + spec.sign * f2
    coarse = c1 + spec.sign * c2
    scale = max(abs(value), 1e-30)
    if not np.isfinite(value):
        raise QuadratureDiverged(f"s={s}: non-finite value")
    change = abs(value - coarse)
    if change > 1e-2 * scale:
        raise QuadratureDiverged(f"s={s}: halving the step changed Lambda by {change:.3g}")
    err = change * change / scale + 64 * np.finfo(float).eps * (abs1 + abs2)
    # crude tail: |a_n| <= n^{(k+1)/2 + 1} over N < n <= 2N, or 0 for an empty product
    ns = np.arange(N + 1, 2 * N + 1, dtype=np.float64)
    trivial = all(f.degree == 0 for f in spec.euler.values())
    tail = 0.0
    if not trivial:
        bound = ns ** ((spec.k + 1) / 2 + 1)
        tail = float((bound * (_abs_F(spec, s, quad, logB, ns)
                               + _abs_F(spec, s_dual, quad, -logB, ns))).sum())
    if tail > quad.tail_tol * scale:
        raise TruncationTooSmall(f"s={s}: tail estimate {tail:.3g} with N={N}")
    return LambdaValue(complex(value), float(err), N, (cc1, cc2))


def completed_lambda(spec: LFunctionSpec, s: complex, quad: QuadParams | None = None) -> complex:
    return completed_lambda_full(spec, s, quad).value


def fe_defect(spec: LFunctionSpec, s: complex, quad: QuadParams | None = None,
              floor: float = 1e-30) -> float:
    """|Lambda(s) - eps Lambda(w~ - s)| / max(|Lambda(s)|, |Lambda(w~ - s)|, floor)."""
    s = complex(s)
    x = completed_lambda(spec, s, quad)
    y = completed_lambda(spec, spec.center_shift - s, quad)
    return abs(x - spec.sign * y) / max(abs(x), abs(y), floor)


# closed-form comparators

def chi3(n: int) -> int:
    return (0, 1, -1)[n % 3]


_BERN = bernoulli(40)


def hurwitz_zeta(s: complex, a: float, M: int = 40, J: int = 15) -> complex:
    """zeta(s, a) by Euler-Maclaurin; s != 1."""
    s = complex(s)
    total = sum((n + a) ** (-s) for n in range(M))
    x = M + a
    total += x ** (1 - s) / (s - 1) + x ** (-s) / 2
    rising = s
    for j in range(1, J + 1):
        total += _BERN[2 * j] / math.factorial(2 * j) * rising * x ** (-s - 2 * j + 1)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return total


def _hurwitz_difference(s: complex, a: float, b: float, M: int = 40, J: int = 15) -> complex:
    """zeta(s, a) - zeta(s, b), with the s = 1 poles cancelled analytically."""
    s = complex(s)
    total = sum((n + a) ** (-s) - (n + b) ** (-s) for n in range(M))
    x, y = M + a, M + b
    e = 1 - s
    r = math.log(x / y)
    if abs(e) < 1e-6:
        ratio = r * (1 + e * r / 2 + (e * r) ** 2 / 6)
    else:
        ratio = (cmath.exp(e * r) - 1) / e
    total += -(y ** e) * ratio  # (x^e - y^e) / (s - 1)
    total += (x ** (-s) - y ** (-s)) / 2
    rising = s
    for j in range(1, J + 1):
        total += _BERN[2 * j] / math.factorial(2 * j) * rising * (x ** (-s - 2 * j + 1) - y ** (-s - 2 * j + 1))
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return total


def dirichlet_L_chi3(s: complex) -> complex:
    """L(chi_3, s) = 3^{-s} (zeta(s, 1/3) - zeta(s, 2/3)).

    For Re s < 0 the direct sum cancels badly, so the value is reflected
    through (3/pi)^{(s+1)/2} Gamma((s+1)/2) L(s) = same at 1 - s.
    """
    s = complex(s)
    if s.real < 0:
        log_ratio = ((1 - 2 * s) / 2 * math.log(3 / math.pi)
                     + complex(loggamma((2 - s) / 2)) - complex(loggamma((s + 1) / 2)))
        return cmath.exp(log_ratio) * dirichlet_L_chi3(1 - s)
    return 3 ** (-s) * _hurwitz_difference(s, 1 / 3, 2 / 3)


def lambda3_closed_form(s: complex) -> complex:
    """(3/pi)^{s/2} Gamma((s-1)/2) L(chi_3, s-2)."""
    s = complex(s)
    logpre = s / 2 * math.log(3 / math.pi) + complex(loggamma((s - 1) / 2))
    return cmath.exp(logpre) * dirichlet_L_chi3(s - 2)


def eta_oracle_level6_weight4(N: int) -> list[int]:
    """Coefficients a_0..a_N of (eta(t) eta(2t) eta(3t) eta(6t))^2, with a_0 = 0."""
    prod = [0] * N
    if N == 0:
        return [0]
    prod[0] = 1
    for m in (1, 2, 3, 6):
        for n in range(1, N):
            step = m * n
            if step >= N:
                break
            for _ in range(2):
                for i in range(N - 1, step - 1, -1):
                    prod[i] -= prod[i - step]
    return [0] + prod[:N]


def m6_from_eta(p: int, a_p: int) -> IntPolynomial:
    return IntPolynomial((1, -p * p * a_p, p ** 7))
