"""Small integer number theory helpers."""

from __future__ import annotations

from functools import lru_cache
from math import isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % d == 0:
            return n == d
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


def factorint(n: int) -> dict[int, int]:
    """Trial-division factorization; fine for the sizes used here."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def prime_to_p_part(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, p: int) -> int:
    return jacobi(a, p)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    return result * jacobi(a, n) if n > 1 else result


def squarefree_part(n: int) -> int:
    out = 1
    for p, e in factorint(n).items():
        if e % 2:
            out *= p
    return out


def radical(n: int) -> int:
    out = 1
    for p in factorint(n):
        out *= p
    return out


@lru_cache(maxsize=None)
def modular_primes(residue_mod: int, count: int, below: int = 2**31) -> tuple[int, ...]:
    """The ``count`` largest primes l < below with l = 1 mod residue_mod."""
    out = []
    ell = below - 1
    ell -= (ell - 1) % residue_mod
    while len(out) < count:
        if ell < 3:
            raise ValueError("ran out of primes")
        if is_prime(ell):
            out.append(ell)
        ell -= residue_mod
    return tuple(out)


def primitive_root_of_order(order: int, ell: int) -> int:
    """An element of exact multiplicative order ``order`` modulo prime ell."""
    if (ell - 1) % order:
        raise ValueError("order does not divide l-1")
    cof = (ell - 1) // order
    qs = list(factorint(order))
    for g in range(2, ell):
        w = pow(g, cof, ell)
        if w != 1 and all(pow(w, order // r, ell) != 1 for r in qs):
            return w
    raise ValueError("no element of the requested order")


def crt_symmetric(residues, moduli) -> int:
    """Combine residues into the symmetric representative modulo prod(moduli)."""
    x, m = 0, 1
    for r, ell in zip(residues, moduli):
        t = ((r - x) * pow(m, -1, ell)) % ell
        x += m * t
        m *= ell
    if x > m // 2:
        x -= m
    return x
