"""Integer polynomials in T and the exp/log bridge to power sums."""

from __future__ import annotations

from ..errors import InexactDivision, NonIntegralCoefficient


def _strip(coeffs) -> tuple[int, ...]:
    c = [int(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPolynomial:
    """Immutable polynomial with Python-int coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def linear(cls, root_coeff: int):
        """The factor 1 + root_coeff*T."""
        return cls((1, root_coeff))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _strip((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if mono and abs(c) == 1:
                term = mono
            else:
                term = f"{abs(c)}{'*' if mono else ''}{mono}"
            parts.append(("-" if c < 0 else "+", term))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result, base = IntPolynomial.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Quotient in Z[T]; raises InexactDivision if other does not divide self."""
        other = _as_poly(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            if rem:
                raise InexactDivision(f"{other} does not divide {self}")
            return IntPolynomial()
        lead = other.coeffs[-1]
        quot = [0] * (dq + 1)
        for i in range(dq, -1, -1):
            c, r = divmod(rem[i + len(other.coeffs) - 1], lead)
            if r:
                raise InexactDivision(f"{other} does not divide {self} (non-integral quotient)")
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        if any(rem):
            raise InexactDivision(f"{other} does not divide {self} (nonzero remainder)")
        return IntPolynomial(quot)

    def truncate(self, n: int) -> "IntPolynomial":
        """Reduce modulo T^n."""
        return IntPolynomial(self.coeffs[:n])

    def inverse_series(self, n: int) -> list[int]:
        """First n coefficients of 1/self as a power series; needs constant term +-1."""
        c0 = self[0]
        if c0 not in (1, -1):
            raise ValueError("series inverse needs a unit constant term")
        out = [0] * n
        for j in range(n):
            s = (1 if j == 0 else 0) - sum(self[i] * out[j - i] for i in range(1, min(j, self.degree) + 1))
            out[j] = s * c0
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items) -> "IntPolynomial":
        return cls(int(s) for s in items)


def _as_poly(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial((x,))
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def series_exp_from_power_sums(m, d: int) -> IntPolynomial:
    """exp(sum m_n T^n / n) mod T^{d+1}, via j c_j = sum_{i<=j} m_i c_{j-i}."""
    m = [int(x) for x in m]
    if len(m) < d:
        raise ValueError(f"need {d} power sums, got {len(m)}")
    c = [1] + [0] * d
    for j in range(1, d + 1):
        s = sum(m[i - 1] * c[j - i] for i in range(1, j + 1))
        q, r = divmod(s, j)
        if r:
            raise NonIntegralCoefficient(
                f"coefficient c_{j} = {s}/{j} is not an integer; a power sum is wrong")
        c[j] = q
    return IntPolynomial(c)


def power_sums_from_polynomial(Z: IntPolynomial, n_max: int) -> list[int]:
    """m_1..m_{n_max} with m_n = -sum gamma_i^n over reciprocal roots of Z."""
    if Z[0] != 1:
        raise ValueError("constant term must be 1")
    m: list[int] = []
    for j in range(1, n_max + 1):
        s = j * Z[j] - sum(m[i - 1] * Z[j - i] for i in range(1, j))
        m.append(s)
    return m
