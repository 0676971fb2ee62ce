import pytest

from symkl.arith import IntPolynomial
from symkl.arith.numtheory import primes_upto, squarefree_part
from symkl.arithmetic_invariants import (bad_local_factor_odd_k, conductor,
                                         conjectural_2_factor_even, det_frobenius_check,
                                         epsilon_sign, local_factor_even_k, theta_sets)
from symkl.errors import CheckFailed
from symkl.local_factors import degree_M, mid_poly, mid_poly_completed

P = IntPolynomial


def test_theta_examples():
    t = theta_sets(9, 3)
    assert t.theta_plus == (3,) and t.theta_minus == (1,)
    t = theta_sets(5, 7)
    assert t.theta_plus == () and t.theta_minus == ()
    t = theta_sets(5, 3)
    assert t.theta_plus == () and t.theta_minus == (1,)
    with pytest.raises(ValueError):
        theta_sets(6, 3)


def test_bad_factor_odd_examples():
    M = mid_poly(5, 3)
    d = bad_local_factor_odd_k(5, 3, M)
    assert d.inverse_factor == M and d.conductor_exponent == 1
    M9 = mid_poly(9, 3)
    d = bad_local_factor_odd_k(9, 3, M9)
    # a = 3, ap = 9, (1 + 9)/2 odd, (-2/3) = +1
    assert d.inverse_factor == M9 * P((1, -243))
    assert d.conductor_exponent == 1 and not d.conjectural
    for k in (3, 5, 7):
        M2 = mid_poly(k, 2)
        assert bad_local_factor_odd_k(k, 2, M2).inverse_factor == M2
        assert bad_local_factor_odd_k(k, 2, M2).conductor_exponent == 0


@pytest.mark.parametrize("k", [3, 5, 7, 9, 11])
def test_bad_factor_dimension_bookkeeping(k):
    for p in primes_upto(k):
        if p == 2:
            continue
        M = mid_poly_completed(k, p)[0] if p ** ((k + 1) // 2) > 2 * 10 ** 6 else mid_poly(k, p)
        d = bad_local_factor_odd_k(k, p, M)
        assert d.inverse_factor.degree + d.conductor_exponent == (k - 1) // 2


def test_even_factor_examples():
    d = local_factor_even_k(6, 3, P((1,)))
    assert d.inverse_factor == P((1, 27)) and d.conductor_exponent == 1
    M = mid_poly(6, 5)
    d = local_factor_even_k(6, 5, M)
    assert d.inverse_factor == M and d.conductor_exponent == 0
    M = mid_poly(8, 3)
    d = local_factor_even_k(8, 3, M)
    assert d.inverse_factor == P((1, 81)) * M and d.conductor_exponent == 1


@pytest.mark.parametrize("k", [4, 6, 8, 10, 12])
def test_even_factor_dimension(k):
    dim = (k - 1) // 2 - (1 if k % 4 == 0 else 0)
    for p in primes_upto(k):
        if p == 2:
            continue
        d = local_factor_even_k(k, p, P((1,)) if degree_M(k, p) == 0 else mid_poly_completed(k, p)[0])
        assert d.inverse_factor.degree + d.conductor_exponent == dim


def test_conductor_examples():
    assert conductor(5).value == 15 and not conductor(5).conjectural
    assert conductor(9).value == 105
    c = conductor(6)
    assert c.odd_part == 3 and c.value == 6 and c.conjectural


def test_conductor_dual_formulas():
    for k in range(1, 100, 2):
        c = conductor(k)  # raises CrossCheckFailed on disagreement
        prod = 1
        for j in range(1, k + 1, 2):
            prod *= squarefree_part(j)
        assert c.value == prod
    for k in range(2, 101, 2):
        assert conductor(k).two_exponent == k // 6


def test_sign_examples():
    s = epsilon_sign(5)
    assert s.sign == 1 and not s.conjectural
    s = epsilon_sign(6)
    assert s.sign == 1 and s.conjectural and s.t_k == 0
    s = epsilon_sign(8)
    assert s.sign == 1 and s.conjectural and s.t_k == 2 and s.sign_infinity == -1


def test_conjectural_two_factor():
    d = conjectural_2_factor_even(6, mid_poly(6, 2))
    assert d.inverse_factor == P((1, 8)) and d.conjectural and d.inverse_factor.degree == 1
    assert conjectural_2_factor_even(4, mid_poly(4, 2)).inverse_factor == P((1,))
    assert conjectural_2_factor_even(2, mid_poly(2, 2)).inverse_factor == P((1,))
    for k in range(2, 17, 2):
        conjectural_2_factor_even(k, mid_poly_completed(k, 2)[0])


def test_det_frobenius_examples():
    assert det_frobenius_check(5, 7, mid_poly(5, 7))
    assert det_frobenius_check(3, 5, P((1, 25)))
    assert det_frobenius_check(1, 3, P((1,)))
    with pytest.raises(CheckFailed):
        det_frobenius_check(3, 5, P((1, -25)))


@pytest.mark.parametrize("k", [3, 5, 7, 9])
def test_det_frobenius_range(k):
    for p in primes_upto(40):
        if p > k:
            assert det_frobenius_check(k, p, mid_poly_completed(k, p)[0])
