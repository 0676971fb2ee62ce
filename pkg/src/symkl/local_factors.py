"""Zeta polynomials Z_k(p;T), their trivial factors and the middle part M_k(p;T)."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import mpmath

from .arith.poly import IntPolynomial, power_sums_from_polynomial, series_exp_from_power_sums
from .arith.numtheory import is_prime, valuation
from .errors import CheckFailed, DegreeMismatch, InexactDivision, Mismatch
from .moments import field_moments
from .polygon import newton_polygon

__all__ = [
    "EulerFactorRecord", "degree_Z", "degree_M", "zeta_poly", "trivial_factor",
    "mid_poly", "mid_poly_completed", "weil_certify", "predict_next_moment",
    "trace_identity_check", "newton_polygon", "euler_record", "is_unramified",
    "two_adic_exponents",
]


def _delta(k: int, m: int) -> int:
    return 1 if k % m == 0 else 0


def degree_Z(k: int, p: int) -> int:
    if k < 1 or not is_prime(p):
        raise ValueError("need k >= 1 and p prime")
    if k % 2:
        if p == 2:
            return (k + 1) // 2
        # floor(k/2p + 1/2) = floor((k + p) / 2p)
        return (k + 1) // 2 - (k + p) // (2 * p)
    if p == 2:
        return (k + 2) // 4
    return k // 2 - k // (2 * p)


def two_adic_exponents(k: int) -> tuple[int, int]:
    """(a_k, b_k): multiplicities of 1 - 2^{k/2}T and 1 + 2^{k/2}T in Z_k(2;T)."""
    base, r = divmod(k, 24)
    a = base + (1 if r in (0, 8, 12, 16, 18, 20) else 0)
    b = base + (1 if r in (6, 12, 14, 18, 20, 22) else 0)
    return a, b


def _r_exponents(k: int, p: int) -> tuple[int, int]:
    """(n_k, m_k) for even k and odd p."""
    n = (k + 2 * p) // (4 * p)
    m = k // (2 * p) + _delta(k, 4)
    return n, m


def trivial_factor(k: int, p: int) -> IntPolynomial:
    one_minus_t = IntPolynomial((1, -1))
    if k % 2:
        return one_minus_t
    h = p ** (k // 2)
    if p == 2:
        a, b = two_adic_exponents(k)
        return one_minus_t * IntPolynomial((1, -h)) ** a * IntPolynomial((1, h)) ** b
    n, m = _r_exponents(k, p)
    sign = 1 if p % 4 == 1 else -1
    return one_minus_t * IntPolynomial((1, -sign * h)) ** n * IntPolynomial((1, -h)) ** (m - n)


def degree_M(k: int, p: int) -> int:
    """Degree of M_k(p;T) predicted from the closed forms."""
    if k % 2 == 0 and p == 2:
        return 2 * ((k + 2) // 12) - 2 * _delta(k, 12)
    return degree_Z(k, p) - trivial_factor(k, p).degree


def is_unramified(k: int, p: int) -> bool:
    if k % 2:
        return p == 2 or p > k
    return p > 2 and 2 * p > k


def zeta_poly(k: int, p: int) -> IntPolynomial:
    """Z_k(p;T) from the moments over F_{p^n}, n = 1..deg."""
    d = degree_Z(k, p)
    m = [field_moments(p, n, k)[k] for n in range(1, d + 1)]
    Z = series_exp_from_power_sums(m, d)
    if Z.degree != d:
        raise DegreeMismatch(f"Z_{k}({p};T) has degree {Z.degree}, formula gives {d}")
    return Z


def mid_poly(k: int, p: int, Z: IntPolynomial | None = None) -> IntPolynomial:
    if Z is None:
        Z = zeta_poly(k, p)
    return Z.exact_div(trivial_factor(k, p))


def _reciprocity_completion(low: list[int], d: int, P: int) -> IntPolynomial | None:
    """Complete M from a_0..a_h (h = ceil(d/2)) using a_d a_{d-j} = a_j P^{d-j}.

    Returns None when the available coefficients do not pin down a_d.
    """
    h = len(low) - 1
    a = list(low) + [0] * (d - h)
    if d == 0:
        return IntPolynomial((1,))
    # j with both a_j and a_{d-j} known: a_d^2 = P^d (j = 0) fixes |a_d|;
    # the sign comes from any pair j, d-j <= h with a_j != 0
    ad_abs_sq = P ** d
    root = isqrt(ad_abs_sq)
    if root * root != ad_abs_sq:
        raise CheckFailed("reciprocity", f"P^{d} is not a square")
    sign = None
    for j in range(d - h, h + 1):
        if a[j] != 0 and 0 <= d - j <= h:
            # a_d a_{d-j} = a_j P^{d-j}
            num = a[j] * P ** (d - j)
            if num % a[d - j]:
                raise CheckFailed("reciprocity", "inconsistent low coefficients", index=j)
            ad = num // a[d - j]
            sign = 1 if ad > 0 else -1
            break
    if sign is None:
        return None
    ad = sign * root
    a[d] = ad
    for j in range(h + 1, d):
        num = a[d - j] * P ** j
        if num % ad:
            raise CheckFailed("reciprocity", "non-integral completed coefficient", index=j)
        a[j] = num // ad
    return IntPolynomial(a)


def mid_poly_completed(k: int, p: int) -> tuple[IntPolynomial, list[int]]:
    """M_k(p;T) from as few moments as functional-equation symmetry allows.

    Uses the first ceil(d/2) moments, falling back to more fields whenever
    the sign of the leading coefficient is not yet determined. Returns M and
    the list of field degrees n enumerated.
    """
    d = degree_M(k, p)
    dz = degree_Z(k, p)
    P = p ** (k + 1)
    triv = trivial_factor(k, p)
    h = (d + 1) // 2
    while True:
        m = [field_moments(p, n, k)[k] for n in range(1, h + 1)]
        Zlow = series_exp_from_power_sums(m, h)
        inv = triv.inverse_series(h + 1)
        low = [sum(Zlow[i] * inv[j - i] for i in range(j + 1)) for j in range(h + 1)]
        if h >= d:
            M = IntPolynomial(low[:d + 1])
            break
        M = _reciprocity_completion(low, d, P)
        if M is not None:
            break
        h += 1
    if M.degree != d:
        raise DegreeMismatch(f"M_{k}({p};T) has degree {M.degree}, expected {d}")
    if (triv * M).degree != dz:
        raise DegreeMismatch("completed Z has the wrong degree")
    return M, list(range(1, h + 1))


@dataclass
class WeilReport:
    passed: bool
    max_relative_deviation: float
    exact_ok: bool
    d: int

    def to_dict(self):
        return {"passed": self.passed, "max_relative_deviation": self.max_relative_deviation,
                "exact_ok": self.exact_ok, "degree": self.d}


def root_moduli_deviation(M: IntPolynomial, k: int, p: int) -> float:
    """max | |gamma| / p^{(k+1)/2} - 1 | over reciprocal roots gamma of M."""
    d = M.degree
    if d <= 0:
        return 0.0
    with mpmath.workdps(60):
        s = mpmath.sqrt(mpmath.mpf(p) ** (k + 1))
        # reciprocal roots of M are the roots of sum a_j x^{d-j}; rescale by s
        coeffs = [mpmath.mpf(M[j]) / s ** j for j in range(d + 1)]
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
        return float(max(abs(abs(r) - 1) for r in roots))


def weil_certify(M: IntPolynomial, k: int, p: int, tol: float = 1e-8) -> WeilReport:
    """Purity of the reciprocal roots and the exact coefficient symmetry.

    Raises CheckFailed with the offending index on failure.
    """
    if M[0] != 1:
        raise ValueError("M(0) must be 1")
    d = M.degree
    P = p ** (k + 1)
    if M[d] ** 2 != P ** d:
        raise CheckFailed("weil_exact", f"|a_d| != P^(d/2) for d={d}", index=d)
    for j in range(d + 1):
        if M[d] * M[d - j] != M[j] * P ** (d - j):
            raise CheckFailed("weil_exact", f"a_d a_(d-j) != a_j P^(d-j) at j={j}", index=j)
    dev = root_moduli_deviation(M, k, p)
    if not dev < tol:
        raise CheckFailed("weil_roots", f"root modulus deviation {dev:.3g} >= {tol}",
                          details={"deviation": dev})
    return WeilReport(True, dev, True, d)


def predict_next_moment(Z: IntPolynomial, k: int, p: int) -> tuple[int, int]:
    """(predicted, enumerated) m_2^k(p^{d+1}); raises Mismatch if they differ."""
    d = Z.degree
    predicted = power_sums_from_polynomial(Z, d + 1)[d]
    enumerated = field_moments(p, d + 1, k)[k]
    if predicted != enumerated:
        raise Mismatch("predict_next_moment",
                       f"k={k} p={p}: predicted {predicted}, enumerated {enumerated}")
    return predicted, enumerated


def trace_identity_check(k: int, p: int, M: IntPolynomial | None = None) -> bool:
    """-coeff_T(M) equals -m_2^k(p) - 1 (- p^{k/2} when 4 | k)."""
    if not is_unramified(k, p):
        raise ValueError(f"p={p} is ramified for k={k}")
    if M is None:
        M = mid_poly(k, p)
    m1 = field_moments(p, 1, k)[k]
    tr = -m1 - 1 - (p ** (k // 2) if k % 4 == 0 else 0)
    if -M[1] != tr:
        raise CheckFailed("trace_identity", f"-coeff_T(M) = {-M[1]} but trace = {tr}")
    return True


def valuation_bound_check(Z: IntPolynomial, p: int) -> bool:
    """ord_p(c_n) >= n(n-1) for every nonzero coefficient."""
    for n, c in enumerate(Z.coeffs):
        if c and valuation(c, p) < n * (n - 1):
            raise CheckFailed("valuation_bound", f"ord_{p}(c_{n}) < {n * (n - 1)}", index=n)
    return True


@dataclass
class EulerFactorRecord:
    k: int
    p: int
    Z: IntPolynomial
    R: IntPolynomial
    M: IntPolynomial
    checks: dict[str, bool] = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)


def euler_record(k: int, p: int, *, complete: bool = False, predict: bool = False,
                 run_checks: bool = True) -> EulerFactorRecord:
    """Compute Z, R, M for (k, p) and run the certification suite.

    With ``complete`` the middle factor is rebuilt from the first half of
    its coefficients by reciprocity instead of enumerating every field.
    """
    triv = trivial_factor(k, p)
    R = triv.exact_div(IntPolynomial((1, -1)))
    if complete:
        M, used = mid_poly_completed(k, p)
        Z = triv * M
        method = "reciprocity-completed"
    else:
        Z = zeta_poly(k, p)
        M = mid_poly(k, p, Z)
        used = list(range(1, Z.degree + 1))
        method = "enumerated"
    moments = {n: field_moments(p, n, k)[k] for n in used}
    rec = EulerFactorRecord(k, p, Z, R, M, provenance={"method": method, "moments": moments})
    if run_checks:
        run_record_checks(rec, predict=predict)
    return rec


def run_record_checks(rec: EulerFactorRecord, predict: bool = False) -> dict[str, bool]:
    """Run every applicable check; failures raise CheckFailed."""
    k, p = rec.k, rec.p
    checks = rec.checks
    if rec.Z.degree != degree_Z(k, p):
        raise DegreeMismatch(f"deg Z = {rec.Z.degree}, formula {degree_Z(k, p)}")
    checks["degree"] = True
    if rec.Z != IntPolynomial((1, -1)) * rec.R * rec.M:
        raise InexactDivision("Z != (1-T) R M")
    checks["decomposition"] = True
    if rec.M.degree != degree_M(k, p):
        raise DegreeMismatch(f"deg M = {rec.M.degree}, formula {degree_M(k, p)}")
    checks["degree_M"] = True
    weil_certify(rec.M, k, p)
    checks["weil"] = True
    if is_unramified(k, p):
        m1 = int(rec.provenance["moments"].get(1, field_moments(p, 1, k)[k]))
        tr = -m1 - 1 - (p ** (k // 2) if k % 4 == 0 else 0)
        if -rec.M[1] != tr:
            raise CheckFailed("trace_identity", f"-coeff_T(M) = {-rec.M[1]} but trace = {tr}")
        checks["trace_identity"] = True
    if p > 2:
        valuation_bound_check(rec.Z, p)
        checks["valuation_bound"] = True
        from .hodge import newton_vs_hodge
        newton_vs_hodge(k, p, rec.Z)
        checks["newton_above_hodge"] = True
    if predict:
        predict_next_moment(rec.Z, k, p)
        checks["predict_next_moment"] = True
    return checks
