"""Bad-prime local factors, conductors, signs and the Frobenius determinant."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith.numtheory import (is_prime, jacobi, legendre, prime_to_p_part, primes_upto,
                              radical, squarefree_part, valuation)
from .arith.poly import IntPolynomial
from .errors import CheckFailed, CrossCheckFailed, DegreeMismatch
from .local_factors import two_adic_exponents


@dataclass(frozen=True)
class ThetaSets:
    k: int
    p: int
    theta_plus: tuple[int, ...]
    theta_minus: tuple[int, ...]


def theta_sets(k: int, p: int) -> ThetaSets:
    """Odd a with a*p <= k, split by parity of ord_p(a) (odd -> plus)."""
    if k % 2 == 0 or p % 2 == 0:
        raise ValueError("need k odd and p odd")
    plus, minus = [], []
    for a in range(1, k // p + 1, 2):
        (plus if valuation(a, p) % 2 else minus).append(a)
    if len(plus) + len(minus) != (k + p) // (2 * p):
        raise CheckFailed("theta_cardinality", f"k={k} p={p}")
    return ThetaSets(k, p, tuple(plus), tuple(minus))


@dataclass(frozen=True)
class LocalFactorData:
    k: int
    p: int
    inverse_factor: IntPolynomial
    conductor_exponent: int
    conjectural: bool = False


def bad_local_factor_odd_k(k: int, p: int, M: IntPolynomial) -> LocalFactorData:
    """Inverse local L-factor at p for odd k.

    Each a in Theta+ adds 1 - ((-1)^{(1+ap)/2} 2a' / p) p^{m+1} T with
    m = (k-1)/2 and a' the prime-to-p part of a.
    """
    if k % 2 == 0:
        raise ValueError("k must be odd")
    if p == 2 or p > k:
        return LocalFactorData(k, p, M, 0)
    th = theta_sets(k, p)
    m = (k - 1) // 2
    out = M
    for a in th.theta_plus:
        u = (-1) ** ((1 + a * p) // 2) * 2 * prime_to_p_part(a, p)
        out = out * IntPolynomial((1, -legendre(u, p) * p ** (m + 1)))
    return LocalFactorData(k, p, out, len(th.theta_minus))


def local_factor_even_k(k: int, p: int, M: IntPolynomial) -> LocalFactorData:
    if k % 2 or p == 2:
        raise ValueError("need k even and p odd")
    h = p ** (k // 2)
    e = k // (2 * p)
    if p % 4 == 1:
        inv = IntPolynomial((1, -h)) ** e * M
    else:
        n = (k + 2 * p) // (4 * p)
        inv = IntPolynomial((1, h)) ** n * IntPolynomial((1, -h)) ** (e - n) * M
    return LocalFactorData(k, p, inv, e)


def conjectural_2_factor_even(k: int, M2: IntPolynomial) -> LocalFactorData:
    """(1 - 2^{k/2}T)^{floor(k/8)} (1 + 2^{k/2}T)^{b_k} M_k(2;T), flagged conjectural."""
    if k % 2:
        raise ValueError("k must be even")
    h = 2 ** (k // 2)
    _, b = two_adic_exponents(k)
    inv = IntPolynomial((1, -h)) ** (k // 8) * IntPolynomial((1, h)) ** b * M2
    expected = (k - 2) // 2 - (1 if k % 4 == 0 else 0) - k // 6
    if inv.degree != expected:
        raise DegreeMismatch(f"2-factor for k={k} has degree {inv.degree}, expected {expected}")
    return LocalFactorData(k, 2, inv, k // 6, conjectural=True)


@dataclass(frozen=True)
class ConductorData:
    k: int
    value: int
    odd_part: int
    two_exponent: int
    conjectural: bool
    exponents: dict = field(default_factory=dict)


def conductor(k: int) -> ConductorData:
    if k < 1:
        raise ValueError("k must be positive")
    if k % 2:
        exps = {p: len(theta_sets(k, p).theta_minus) for p in primes_upto(k) if p > 2}
        exps = {p: e for p, e in exps.items() if e}
        val = 1
        for p, e in exps.items():
            val *= p ** e
        dual = 1
        for j in range(1, k + 1, 2):
            dual *= squarefree_part(j)
        if val != dual:
            raise CrossCheckFailed(f"k={k}: prod p^#Theta- = {val}, square-free product = {dual}")
        return ConductorData(k, val, val, 0, False, exps)
    exps = {p: k // (2 * p) for p in primes_upto(k) if p > 2 and k // (2 * p)}
    odd = 1
    for p, e in exps.items():
        odd *= p ** e
    # odd part of the radical of j, product over even j
    dual = 1
    for j in range(2, k + 1, 2):
        dual *= prime_to_p_part(radical(j), 2)
    if odd != dual:
        raise CrossCheckFailed(f"k={k}: prod p^floor(k/2p) = {odd}, odd-part product = {dual}")
    r = k // 6
    full = dict(exps)
    if r:
        full[2] = r
    return ConductorData(k, odd * 2 ** r, odd, r, True, full)


@dataclass(frozen=True)
class SignData:
    k: int
    sign: int
    conjectural: bool
    t_k: int | None = None
    local_signs: dict = field(default_factory=dict)  # p -> (-1)^{v_p}
    sign_infinity: int | None = None


def epsilon_sign(k: int) -> SignData:
    if k % 2:
        return SignData(k, 1, False)
    local = {}
    t = k // 8 + (1 if k % 8 == 0 else 0)
    for p in primes_upto(k):
        if p == 2:
            continue
        v = k // (2 * p) if p % 4 == 1 else k // (4 * p)
        t += v
        local[p] = (-1) ** v
    inf = -1 if k % 8 == 0 else 1
    return SignData(k, (-1) ** t, True, t, local, inf)


def double_factorial_odd(k: int) -> int:
    out = 1
    for j in range(3, k + 1, 2):
        out *= j
    return out


def det_frobenius_check(k: int, p: int, M: IntPolynomial) -> bool:
    """(-1)^d a_d = (p / k!!) p^{(k^2-1)/4} for odd k and p > k."""
    if k % 2 == 0 or p <= k or not is_prime(p):
        raise ValueError("need k odd and prime p > k")
    d = M.degree
    kk = double_factorial_odd(k)
    expected = (jacobi(p, kk) if kk > 1 else 1) * p ** ((k * k - 1) // 4)
    if d == 0:
        expected = 1
    got = (-1) ** d * M[d]
    if got != expected:
        raise CheckFailed("det_frobenius", f"k={k} p={p}: (-1)^d a_d = {got}, expected {expected}",
                          index=d)
    return True
