import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from frozen_values import ETA_LEVEL6, L_CHI3_AT_2
from symkl.arith import IntPolynomial
from symkl.arith.numtheory import legendre, primes_upto
from symkl.errors import MissingEulerFactor, TruncationTooSmall
from symkl.lfunction import (QuadParams, build_spec, chi3, completed_lambda,
                             completed_lambda_full, dirichlet_L_chi3, dirichlet_coefficients,
                             eta_oracle_level6_weight4, fe_defect, hurwitz_zeta,
                             lambda3_closed_form, m6_from_eta)
from symkl.local_factors import mid_poly_completed


@pytest.fixture(scope="module")
def spec3():
    return build_spec(3, 300)


@pytest.fixture(scope="module")
def spec5():
    return build_spec(5, 230)


@pytest.fixture(scope="module")
def spec6():
    return build_spec(6, 160)


def test_spec_metadata(spec3, spec6):
    assert (spec3.conductor, spec3.shifts, spec3.sign, spec3.weight, spec3.center_shift) == \
        (3, (1,), 1, 4, 5)
    assert not spec3.conjectural_flags
    assert spec6.conductor == 6 and spec6.sign == 1
    assert {"sign", "conductor_2_exponent", "euler_factor_2"} <= spec6.conjectural_flags


def test_dirichlet_examples(spec3, spec6):
    a = dirichlet_coefficients(spec3, 10)
    assert (a[1], a[2], a[5], a[7], a[4]) == (1, -4, -25, 49, 16)
    spec1 = build_spec(1, 50)
    assert dirichlet_coefficients(spec1, 50).a[1:] == (1,) + (0,) * 49
    a = dirichlet_coefficients(spec6, 5)
    assert (a[2], a[3]) == (-8, -27)
    assert a[5] == 25 * ETA_LEVEL6[5]


def test_missing_euler_factor(spec3):
    with pytest.raises(MissingEulerFactor) as e:
        dirichlet_coefficients(spec3, 400)
    assert e.value.p == 307


def test_multiplicativity(spec3):
    a = dirichlet_coefficients(spec3, 200)

    @given(st.integers(1, 200), st.integers(1, 200))
    def check(m, n):
        if math.gcd(m, n) == 1 and m * n <= 200:
            assert a[m * n] == a[m] * a[n]

    check()
    assert a[1] == 1


def test_k3_euler_factors_closed_form(spec3):
    for p in primes_upto(200):
        expected = IntPolynomial((1,)) if p == 3 else IntPolynomial((1, -legendre(p, 3) * p * p))
        assert spec3.euler[p] == expected


def test_eta_oracle():
    assert eta_oracle_level6_weight4(13) == ETA_LEVEL6
    a = eta_oracle_level6_weight4(60)
    assert a[1] == 1 and abs(a[2]) == 2 and abs(a[3]) == 3


def test_eta_matches_m6():
    a = eta_oracle_level6_weight4(110)
    for p in primes_upto(110):
        if p > 3:
            assert mid_poly_completed(6, p)[0] == m6_from_eta(p, a[p])


def test_chi3_and_dirichlet_L():
    assert [chi3(n) for n in range(6)] == [0, 1, -1, 0, 1, -1]
    assert abs(dirichlet_L_chi3(2) - L_CHI3_AT_2) < 1e-13
    assert abs(dirichlet_L_chi3(0) - 1 / 3) < 1e-13
    partial = sum(chi3(n) / n ** 2 for n in range(1, 200001))
    assert abs(dirichlet_L_chi3(2) - partial) < 1e-9


@pytest.mark.parametrize("s", [0.5 + 3j, -1.5, -2.3 + 1j, 1.7, 3 + 10j, 0.0001])
def test_dirichlet_L_against_mpmath(s):
    ref = complex(mpmath.dirichlet(s, [0, 1, -1]))
    assert abs(dirichlet_L_chi3(s) - ref) <= 1e-12 * max(1, abs(ref))


def test_hurwitz_against_mpmath():
    for s, a in [(2, 0.3), (0.5 + 2j, 1 / 3), (-1.5, 0.7)]:
        ref = complex(mpmath.zeta(s, a))
        assert abs(hurwitz_zeta(s, a) - ref) <= 1e-11 * max(1, abs(ref))


def test_k1_lambda_is_one():
    spec1 = build_spec(1, 100)
    for s in (0.3, 1.5 + 2j, 2.9):
        assert abs(completed_lambda(spec1, s) - 1) < 1e-10
        assert fe_defect(spec1, s) == 0


@pytest.mark.parametrize("s", [3.5, 2.5, 2.4 + 0.7j, 4.1 - 1.3j, 1.2])
def test_k3_matches_closed_form(spec3, s):
    ref = lambda3_closed_form(s)
    assert abs(completed_lambda(spec3, s) - ref) <= 1e-8 * abs(ref)


def test_k3_center(spec3):
    assert abs(completed_lambda(spec3, 2.5) - completed_lambda(spec3, 5 - 2.5)) < 1e-12


@pytest.mark.parametrize("s", [2.4 + 0.7j, 3.1, 1.9 - 0.4j])
def test_fe_k3(spec3, s):
    assert fe_defect(spec3, s) < 1e-6


@pytest.mark.parametrize("s", [3.2 + 0.3j, 3.7, 4.4 - 0.5j])
def test_fe_k5(spec5, s):
    assert fe_defect(spec5, s) < 1e-6


@pytest.mark.parametrize("s", [3.7, 4.2 + 0.3j, 3.5 - 0.6j])
def test_fe_k6_conjectural_data(spec6, s):
    assert fe_defect(spec6, s) < 1e-6


def test_fe_detects_wrong_data(spec5, spec6):
    import dataclasses
    flipped = dataclasses.replace(spec5, sign=-1)
    assert fe_defect(flipped, 3.7 + 0.2j) > 1e-3
    euler = dict(spec6.euler)
    euler[2] = IntPolynomial((1,))  # drop the conjectural 2-factor
    assert fe_defect(dataclasses.replace(spec6, euler=euler), 3.7 + 0.2j) > 1e-6
    euler = dict(spec5.euler)
    euler[2] = IntPolynomial((1, -euler[2][1], euler[2][2]))  # still Weil-pure
    assert fe_defect(dataclasses.replace(spec5, euler=euler), 3.3) > 1e-6


@pytest.mark.parametrize("s", [3.7, 2.9, 4.6])
def test_real_on_real_line(spec5, s):
    v = completed_lambda_full(spec5, s)
    assert abs(v.value.imag) <= max(v.error_estimate, 1e-14 * abs(v.value))


@pytest.mark.parametrize("s", [3.2 + 0.3j, 3.7, 4.4 - 0.5j])
def test_step_doubling_consistency(spec5, s):
    coarse = completed_lambda_full(spec5, s)
    fine = completed_lambda_full(spec5, s, QuadParams(step=QuadParams().step / 2))
    assert abs(coarse.value - fine.value) < 10 * coarse.error_estimate


def test_truncation_too_small(spec5):
    with pytest.raises(TruncationTooSmall):
        completed_lambda_full(spec5, 3.7, QuadParams(N=5))


def test_deterministic(spec5):
    assert completed_lambda(spec5, 3.3 + 0.1j) == completed_lambda(spec5, 3.3 + 0.1j)
