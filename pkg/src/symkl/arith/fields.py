"""Finite fields F_{p^n} with table-driven multiplication and trace.

Elements are encoded as integers 0..q-1 through their coefficient vectors in
the power basis of F_p[x]/(modulus): code = sum c_i p^i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from ..config import FIELD_BUDGET
from ..errors import BudgetExceeded
from .numtheory import factorint, is_prime


# dense polynomials over F_p, coefficient lists constant term first

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = list(a)
    lead_inv = pow(f[-1], -1, p)
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * lead_inv % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim(a[:df])


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(f, p: int) -> bool:
    """Rabin test: x^{p^n} = x mod f and gcd(x^{p^{n/r}} - x, f) = 1 for primes r | n."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]

    def frob_power(d):
        y = x
        for _ in range(d):
            y = _ppowmod(y, p, f, p)
        return y

    if _psub(frob_power(n), x, p):
        return False
    for r in factorint(n):
        g = _pgcd(f, _psub(frob_power(n // r), x, p), p)
        if len(g) > 1:
            return False
    return True


def least_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree n.

    Candidates are ordered by their coefficient tuple read from x^{n-1} down
    to the constant term.
    """
    for top_down in product(range(p), repeat=n):
        f = list(reversed(top_down)) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise ValueError("no irreducible polynomial found")


def _decode(code: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        code, r = divmod(code, p)
        out.append(r)
    return _trim(out)


def _encode(vec, p: int) -> int:
    code = 0
    for c in reversed(list(vec)):
        code = code * p + int(c)
    return code


def _has_full_order(g, f, p, q):
    order = q - 1
    if _ppowmod(g, order, f, p) != [1]:
        return False
    return all(_ppowmod(g, order // r, f, p) != [1] for r in factorint(order))


@dataclass(frozen=True, eq=False)
class ExtField:
    p: int
    n: int
    modulus: tuple[int, ...]
    generator: int
    exp_table: np.ndarray = field(repr=False)   # exponent i -> code of g^i
    dlog_table: np.ndarray = field(repr=False)  # code -> exponent, -1 at 0
    trace_table: np.ndarray = field(repr=False)  # exponent i -> tr(g^i)
    trace_basis: tuple[int, ...] = field(repr=False)  # tr(x^i), i < n

    @property
    def q(self) -> int:
        return self.p ** self.n

    def __repr__(self):
        return f"ExtField(p={self.p}, n={self.n}, modulus={self.modulus}, generator={self.generator})"

    def elements(self):
        return range(self.q)

    def vector(self, x: int) -> list[int]:
        v = _decode(x, self.p, self.n)
        return v + [0] * (self.n - len(v))

    def add(self, x: int, y: int) -> int:
        return _encode([(a + b) % self.p for a, b in zip(self.vector(x), self.vector(y))], self.p)

    def neg(self, x: int) -> int:
        return _encode([(-a) % self.p for a in self.vector(x)], self.p)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        i = int(self.dlog_table[x]) + int(self.dlog_table[y])
        return int(self.exp_table[i % (self.q - 1)])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.exp_table[(-int(self.dlog_table[x])) % (self.q - 1)])

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 0
        return int(self.exp_table[(int(self.dlog_table[x]) * e) % (self.q - 1)])

    def trace(self, x: int) -> int:
        """Absolute trace to F_p via the linear functional on coordinates."""
        return sum(c * t for c, t in zip(self.vector(x), self.trace_basis)) % self.p

    def trace_by_frobenius(self, x: int) -> int:
        """tr(x) = x + x^p + ... + x^{p^{n-1}} computed in the field, then read off."""
        acc, y = 0, x
        for _ in range(self.n):
            acc = self.add(acc, y)
            y = self.pow(y, self.p)
        if acc >= self.p:
            raise ArithmeticError("trace left the prime field")
        return acc

    def log(self, x: int) -> int:
        if x == 0:
            raise ValueError("log of zero")
        return int(self.dlog_table[x])


def _companion_traces(f, p):
    """tr(x^i) for i < n, as traces of powers of the companion matrix."""
    n = len(f) - 1
    C = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n):
        C[i, i - 1] = 1
    C[:, n - 1] = [(-c) % p for c in f[:n]]
    out = []
    P = np.eye(n, dtype=np.int64)
    for _ in range(n):
        out.append(int(np.trace(P)) % p)
        P = (P @ C) % p
    return tuple(out)


def _power_table(g_vec, f, p, n, q):
    """Coefficient vectors of g^i for i = 0..q-2, built blockwise."""
    order = q - 1
    block = max(1, min(order, int(np.sqrt(order)) + 1))
    first = np.zeros((block, n), dtype=np.int64)
    cur = [1]
    for i in range(block):
        row = cur + [0] * (n - len(cur))
        first[i] = row
        cur = _pmulmod(cur, g_vec, f, p)
    # matrix of multiplication by g^block acting on row vectors
    gb = cur
    mult = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        img = _pmulmod([0] * i + [1], gb, f, p)
        mult[i, :len(img)] = img
    out = np.empty((order, n), dtype=np.int64)
    pos, cur_block = 0, first
    while pos < order:
        take = min(block, order - pos)
        out[pos:pos + take] = cur_block[:take]
        pos += take
        cur_block = (cur_block @ mult) % p
    return out


def build_extension(p: int, n: int, *, budget: int | None = None,
                    modulus=None, generator: int | None = None) -> ExtField:
    """Construct F_{p^n} deterministically.

    Defaults: the lexicographically least monic irreducible modulus and the
    generator with the smallest integer code. Both can be overridden, which is
    how independence of downstream results from these choices is tested.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("degree must be at least 1")
    q = p ** n
    budget = FIELD_BUDGET if budget is None else budget
    if q > budget:
        raise BudgetExceeded(f"field of size {q} exceeds budget {budget}")
    if modulus is None:
        f = list(least_irreducible(p, n))
    else:
        f = [int(c) % p for c in modulus]
        if len(f) != n + 1 or f[-1] != 1 or not is_irreducible(f, p):
            raise ValueError("modulus must be monic irreducible of degree n")
    if generator is None:
        for code in range(1, q):
            if _has_full_order(_decode(code, p, n), f, p, q):
                generator = code
                break
    elif not _has_full_order(_decode(generator, p, n), f, p, q):
        raise ValueError("generator does not have order q-1")
    vecs = _power_table(_decode(generator, p, n), f, p, n, q)
    weights = np.array([p ** i for i in range(n)], dtype=np.int64)
    exp_table = vecs @ weights
    dlog = np.full(q, -1, dtype=np.int64)
    dlog[exp_table] = np.arange(q - 1)
    if (dlog[1:] < 0).any():
        raise ArithmeticError("power table is not a permutation")
    tb = _companion_traces(f, p)
    trace_table = (vecs @ np.array(tb, dtype=np.int64)) % p
    return ExtField(p=p, n=n, modulus=tuple(f), generator=generator,
                    exp_table=exp_table, dlog_table=dlog,
                    trace_table=trace_table, trace_basis=tb)
