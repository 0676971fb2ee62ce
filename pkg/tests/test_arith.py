import pytest
from hypothesis import given, strategies as st

from symkl.arith import (CyclotomicInt, IntPolynomial, build_extension, cyc_reduce_to_integer,
                         is_irreducible, least_irreducible, power_sums_from_polynomial,
                         series_exp_from_power_sums)
from symkl.arith.numtheory import (crt_symmetric, is_prime, jacobi, kronecker, primes_upto,
                                   squarefree_part, valuation)
from symkl.errors import BudgetExceeded, InexactDivision, NonIntegralCoefficient, NotRational


def test_prime_field_generator():
    F = build_extension(3, 1)
    assert F.q == 3 and F.generator == 2


def test_f4_modulus():
    F = build_extension(2, 2)
    assert F.modulus == (1, 1, 1)


def test_f9_trace_is_x_plus_x_cubed():
    F = build_extension(3, 2)
    for x in F.elements():
        assert F.trace(x) == F.trace_by_frobenius(x)
        assert F.add(x, F.pow(x, 3)) == F.trace(x)


def test_rejects_composite_and_budget():
    with pytest.raises(ValueError):
        build_extension(4, 1)
    with pytest.raises(BudgetExceeded):
        build_extension(2, 30, budget=1000)


def test_deterministic_construction():
    a, b = build_extension(5, 3), build_extension(5, 3)
    assert a.modulus == b.modulus and a.generator == b.generator
    assert (a.trace_table == b.trace_table).all()


def test_least_irreducible_is_least():
    for p, n in [(2, 3), (3, 2), (5, 2), (3, 3)]:
        f = least_irreducible(p, n)
        assert is_irreducible(list(f), p)
        # nothing smaller in the top-down coefficient order is irreducible
        import itertools
        for top_down in itertools.product(range(p), repeat=n):
            g = list(reversed(top_down)) + [1]
            if tuple(g) == f:
                break
            assert not is_irreducible(g, p)


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (5, 2), (7, 2), (2, 6), (11, 1)])
def test_generator_order_and_tables(p, n):
    F = build_extension(p, n)
    q = F.q
    assert sorted(F.exp_table.tolist()) == list(range(1, q))
    assert F.pow(F.generator, q - 1) == 1
    for x in range(1, q):
        assert F.mul(x, F.inv(x)) == 1


@pytest.mark.parametrize("p,n", [(2, 3), (3, 2), (5, 2), (7, 2), (2, 5), (3, 4)])
def test_trace_bilinear_and_onto(p, n):
    F = build_extension(p, n)
    values = {F.trace(x) for x in F.elements()}
    assert values == set(range(p))
    for x in range(0, F.q, max(1, F.q // 11)):
        assert F.trace(x) == F.trace_by_frobenius(x)
        for y in range(0, F.q, max(1, F.q // 7)):
            assert F.trace(F.add(x, y)) == (F.trace(x) + F.trace(y)) % p
            for c in range(p):
                assert F.trace(F.mul(c, x) if c else 0) == (c * F.trace(x)) % p


def test_alternative_modulus():
    F = build_extension(3, 2, modulus=(2, 2, 1))  # x^2 + 2x + 2
    assert F.modulus == (2, 2, 1)
    with pytest.raises(ValueError):
        build_extension(3, 2, modulus=(2, 0, 1))  # x^2 + 2 = (x+1)(x+2)


def test_cyclotomic_examples():
    assert cyc_reduce_to_integer(CyclotomicInt(7, (5, 0, 0, 0, 0, 0))) == 5
    for p in (2, 3, 5, 7):
        total = CyclotomicInt.integer(p, 0)
        for c in range(p):
            total = total + CyclotomicInt.zeta_power(p, c)
        assert cyc_reduce_to_integer(total) == 0
    z = CyclotomicInt.zeta_power(3, 1)
    assert cyc_reduce_to_integer(z + z * z) == -1
    with pytest.raises(NotRational):
        cyc_reduce_to_integer(z)


def test_cyclotomic_matches_complex_embedding():
    import cmath
    v = CyclotomicInt(5, (1, -2, 3, 4))
    w = CyclotomicInt(5, (0, 1, 1, -1))
    assert abs((v * w).to_complex() - v.to_complex() * w.to_complex()) < 1e-9
    assert abs(v.galois(2).to_complex()
               - sum(a * cmath.exp(4j * cmath.pi * i / 5) for i, a in enumerate(v.coords))) < 1e-9


cyc_elements = st.integers(min_value=2, max_value=13).filter(is_prime).flatmap(
    lambda p: st.tuples(*[st.lists(st.integers(-50, 50), min_size=p - 1, max_size=p - 1)
                          for _ in range(3)]).map(
        lambda vs: tuple(CyclotomicInt(p, tuple(v)) for v in vs)))


@given(cyc_elements)
def test_cyclotomic_ring_laws(triple):
    a, b, c = triple
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_series_exp_examples():
    assert series_exp_from_power_sums([-1, -1], 2) == IntPolynomial((1, -1))
    assert series_exp_from_power_sums([24, -626], 2) == IntPolynomial((1, 24, -25))
    assert series_exp_from_power_sums([7], 1) == IntPolynomial((1, 7))
    with pytest.raises(NonIntegralCoefficient):
        series_exp_from_power_sums([1, 0], 2)


def test_power_sums_examples():
    assert power_sums_from_polynomial(IntPolynomial((1, -1)), 4) == [-1] * 4
    assert power_sums_from_polynomial(IntPolynomial((1, 24, -25)), 2) == [24, -626]
    assert power_sums_from_polynomial(IntPolynomial((1,)), 3) == [0, 0, 0]


@given(st.lists(st.integers(-10**6, 10**6), min_size=0, max_size=6))
def test_exp_log_round_trip(tail):
    Z = IntPolynomial([1] + tail)
    d = max(Z.degree, 0)
    assert series_exp_from_power_sums(power_sums_from_polynomial(Z, d), d) == Z


polys = st.lists(st.integers(-1000, 1000), min_size=1, max_size=5).map(IntPolynomial)


@given(polys, polys)
def test_exact_division_round_trip(a, b):
    if b.degree < 0:
        return
    assert (a * b).exact_div(b) == a


def test_inexact_division():
    with pytest.raises(InexactDivision):
        IntPolynomial((1, 1)).exact_div(IntPolynomial((1, 2)))
    with pytest.raises(InexactDivision):
        IntPolynomial((1, 0, 1)).exact_div(IntPolynomial((1, 1)))


def test_polynomial_basics():
    P = IntPolynomial((1, -1)) * IntPolynomial((1, 25))
    assert P.coeffs == (1, 24, -25)
    assert str(P) == "1 + 24*T - 25*T^2"
    assert IntPolynomial((1, 2, 0, 0)).degree == 1
    assert IntPolynomial.from_strings(P.to_strings()) == P
    assert P(1) == 0
    assert IntPolynomial((1, -3)).inverse_series(4) == [1, 3, 9, 27]


def test_number_theory_helpers():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert all(is_prime(p) == (p in set(primes_upto(2000))) for p in range(2000))
    assert valuation(72, 2) == 3 and squarefree_part(72) == 2
    # Euler's criterion as the oracle for the Legendre symbol
    for p in (3, 5, 7, 11, 13):
        for a in range(1, p):
            e = pow(a, (p - 1) // 2, p)
            assert jacobi(a, p) == (1 if e == 1 else -1)
    assert jacobi(7, 15) == jacobi(7, 3) * jacobi(7, 5) == -1
    assert kronecker(-3, 2) == -1 and kronecker(-3, 3) == 0
    assert crt_symmetric([3 % 7, 3 % 11], [7, 11]) == 3
    assert crt_symmetric([(-5) % 7, (-5) % 11], [7, 11]) == -5
