"""Kloosterman sums and symmetric-power moments over finite fields.

Writing f(i) = tr(g^i) for a generator g, the trace of x + a/x for x = g^i,
a = g^j is f(i) + f(j - i). All Kloosterman sums are therefore read off one
table N[j, c] = #{i : f(i) + f(j-i) = c mod p}, a two-dimensional cyclic
self-convolution computed with the FFT and then rounded to exact integers.
From N, each sum is sum_c N[j, c] zeta^c in Z[zeta_p].

Exact moments come from one of two routes:

* ``cyclotomic``: run the symmetric-power recursion in Z[zeta_p] per element.
  Slow, used as the reference for small fields.
* ``modular``: map Z[zeta_p] to F_l for primes l = 1 mod p (every embedding
  zeta -> w^e at once), run the recursion vectorized in int64, and rebuild
  the integer moment by CRT. Agreement across all p-1 embeddings certifies
  that the moment is rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, log10

import numpy as np

from .arith.cyclotomic import CyclotomicInt, cyc_reduce_to_integer
from .arith.fields import ExtField, build_extension
from .arith.numtheory import crt_symmetric, modular_primes, primitive_root_of_order
from .config import COUNT_TABLE_BUDGET, FLOAT_DIGITS
from .errors import BudgetExceeded, NotRational


@dataclass(frozen=True)
class KloostermanValue:
    a: int
    exact: CyclotomicInt
    float: float | None = None


def kloosterman_exact(a: int, F: ExtField) -> CyclotomicInt:
    """Kl_2(a; q) by a direct tally of tr(x + a/x) over all x."""
    if a == 0:
        raise ValueError("a must be nonzero")
    counts = [0] * F.p
    for x in range(1, F.q):
        counts[F.trace(F.add(x, F.div(a, x)))] += 1
    return CyclotomicInt.from_full(F.p, counts)


def _check_table_budget(F: ExtField):
    if (F.q - 1) * F.p > COUNT_TABLE_BUDGET:
        raise BudgetExceeded(f"count table for q={F.q} exceeds budget {COUNT_TABLE_BUDGET}")


def _column_convolutions(F: ExtField, chars):
    """sum_i psi_c(f(i)) psi_c(f(j-i)) for each c in chars, as complex arrays."""
    f = F.trace_table.astype(np.float64)
    out = {}
    for c in chars:
        h = np.exp(2j * np.pi * c * f / F.p)
        H = np.fft.fft(h)
        out[c] = np.fft.ifft(H * H)
    return out


_COUNT_CACHE: dict[tuple, np.ndarray] = {}


def count_table(F: ExtField) -> np.ndarray:
    """N[j, c] = #{x : tr(x + g^j/x) = c}, exact int64 of shape (q-1, p)."""
    key = (F.p, F.n, F.modulus, F.generator)
    hit = _COUNT_CACHE.get(key)
    if hit is not None:
        return hit
    _check_table_budget(F)
    p, order = F.p, F.q - 1
    half = list(range(p // 2 + 1))
    conv = _column_convolutions(F, half)
    spec = np.empty((order, p), dtype=np.complex128)
    for c in half:
        spec[:, c] = conv[c]
        if c:
            spec[:, p - c] = np.conj(conv[c])
    # invert the character transform along the residue axis
    counts_f = np.fft.fft(spec, axis=1).real / p
    counts = np.rint(counts_f)
    err = np.abs(counts_f - counts).max() if counts.size else 0.0
    counts = counts.astype(np.int64)
    if err > 0.25 or (counts < 0).any() or (counts.sum(axis=1) != order).any():
        raise ArithmeticError(f"count table rounding failed (max deviation {err:.3g})")
    if len(_COUNT_CACHE) > 8:
        _COUNT_CACHE.clear()
    _COUNT_CACHE[key] = counts
    return counts


def kloosterman_from_table(F: ExtField, j: int) -> CyclotomicInt:
    """Kl_2(g^j; q) from the count table."""
    return CyclotomicInt.from_full(F.p, count_table(F)[j])


def kloosterman_all_bulk(F: ExtField) -> np.ndarray:
    """Float Kloosterman sums K[j] ~ Kl_2(g^j; q), one FFT convolution.

    The absolute error is on the order of 1e-16 * q * log2(q).
    """
    if F.q - 1 > COUNT_TABLE_BUDGET:
        raise BudgetExceeded(f"q-1={F.q - 1} exceeds FFT budget")
    return _column_convolutions(F, [1])[1].real


def sym_power_trace(k: int, t, q: int):
    """s_k with s_j = t s_{j-1} - q s_{j-2}, s_0 = 1, s_{-1} = 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    prev, cur = 0, 1
    if isinstance(t, CyclotomicInt):
        prev, cur = CyclotomicInt.integer(t.p, 0), CyclotomicInt.integer(t.p, 1)
    for _ in range(k):
        prev, cur = cur, t * cur - prev * q
    return cur


def sym_power_trace_closed(k: int, t, q: int):
    """sum_{j <= k/2} (-1)^j C(k-j, j) q^j t^{k-2j}."""
    total = 0
    for j in range(k // 2 + 1):
        total = total + (t ** (k - 2 * j)) * ((-1) ** j * comb(k - j, j) * q ** j)
    return total


def _moment_bound(q: int, kmax: int) -> int:
    return max((q - 1) * (k + 1) * q ** ((k + 1) // 2) for k in range(kmax + 1))


ALL_EMBEDDINGS_MAX_P = 31


def _moments_modular(F: ExtField, kmax: int, character: int = 1) -> list[int]:
    p, q = F.p, F.q
    if q * p >= 2 ** 31:
        raise BudgetExceeded("modular path needs q*p < 2^31")
    N = count_table(F)
    bound = 2 * _moment_bound(q, kmax) + 1
    count, prod = 0, 1
    while prod <= bound:
        count += 1
        prod = 1
        for ell in modular_primes(p, count):
            prod *= ell
    ells = modular_primes(p, count)
    # every embedding gives the same residue for a rational moment; for large p
    # a few of them keep the rationality check without the p^2 cost
    if p <= ALL_EMBEDDINGS_MAX_P:
        embeddings = list(range(1, p))
    else:
        embeddings = sorted({1, 2, p - 1})
    residues = []
    for ell in ells:
        w = primitive_root_of_order(p, ell) if p > 2 else ell - 1
        w = pow(w, character, ell)
        # W[c, e] = w^(e c) over the chosen embeddings e
        W = np.array([[pow(w, e * c, ell) for e in embeddings] for c in range(p)],
                     dtype=np.int64)
        kl = (N @ W) % ell
        t = (-kl) % ell
        qm = q % ell
        prev = np.zeros_like(t)
        cur = np.ones_like(t)
        sums = [(q - 1) % ell]
        for _ in range(kmax):
            prev, cur = cur, (t * cur - qm * prev) % ell
            col = cur.sum(axis=0) % ell
            if (col != col[0]).any():
                raise NotRational(f"moment differs across embeddings (l={ell})")
            sums.append(int(col[0]))
        residues.append(sums)
    return [crt_symmetric([r[k] for r in residues], ells) for k in range(kmax + 1)]


def _moments_cyclotomic(F: ExtField, kmax: int, character: int = 1,
                        source: str = "table") -> list[int]:
    p, q = F.p, F.q
    zero = CyclotomicInt.integer(p, 0)
    totals = [zero] * (kmax + 1)
    N = count_table(F) if source == "table" else None
    for j in range(q - 1):
        if N is not None:
            kl = CyclotomicInt.from_full(p, N[j])
        else:
            kl = kloosterman_exact(int(F.exp_table[j]), F)
        if character != 1:
            kl = kl.galois(character)
        t = -kl
        prev, cur = zero, CyclotomicInt.integer(p, 1)
        totals[0] = totals[0] + cur
        for k in range(1, kmax + 1):
            prev, cur = cur, t * cur - prev * q
            totals[k] = totals[k] + cur
    return [cyc_reduce_to_integer(v) for v in totals]


def float_envelope_ok(k: int, q: int) -> bool:
    """Whether sum_a s_k in double precision still rounds to the exact moment."""
    return (k + 2) / 2 * log10(q) + log10(q) <= FLOAT_DIGITS


def moment_float(k: int, F: ExtField) -> float:
    K = kloosterman_all_bulk(F)
    t = -K
    prev, cur = np.zeros_like(t), np.ones_like(t)
    for _ in range(k):
        prev, cur = cur, t * cur - F.q * prev
    return float(cur.sum())


def moments_upto(kmax: int, F: ExtField, method: str = "auto", character: int = 1) -> list[int]:
    """[m_2^0(q), ..., m_2^kmax(q)] exactly."""
    if character % F.p == 0:
        raise ValueError("character index must be prime to p")
    if method == "auto":
        method = "modular" if F.q * F.p < 2 ** 31 else "cyclotomic"
    if method == "modular":
        return _moments_modular(F, kmax, character)
    if method == "cyclotomic":
        return _moments_cyclotomic(F, kmax, character, source="table")
    if method == "direct":
        return _moments_cyclotomic(F, kmax, character, source="direct")
    raise ValueError(f"unknown method {method!r}")


def moment(k: int, F: ExtField, method: str = "auto", character: int = 1) -> int:
    """m_2^k(q) = sum over a != 0 of s_k(-Kl_2(a; q), q)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return moments_upto(k, F, method, character)[k]


@lru_cache(maxsize=256)
def _field_moments(p: int, n: int, kmax: int) -> tuple[int, ...]:
    return tuple(moments_upto(kmax, build_extension(p, n)))


def field_moments(p: int, n: int, kmax: int) -> tuple[int, ...]:
    """Cached m_2^k(p^n) for k = 0..kmax over the default field construction."""
    # round kmax up so nearby requests share one computation
    return _field_moments(p, n, max(kmax, 12))[:kmax + 1]


def moment_pn(k: int, p: int, n: int) -> int:
    return field_moments(p, n, k)[k]
