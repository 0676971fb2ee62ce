import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from frozen_values import MOMENTS
from oracle import NaiveField, kloosterman_float
from symkl.arith import CyclotomicInt, build_extension, cyc_reduce_to_integer, is_irreducible
from symkl.moments import (float_envelope_ok, kloosterman_all_bulk, kloosterman_exact,
                           kloosterman_from_table, moment, moment_float, moments_upto,
                           sym_power_trace, sym_power_trace_closed)


def test_kloosterman_examples():
    assert cyc_reduce_to_integer(kloosterman_exact(1, build_extension(2, 1))) == 1
    F3 = build_extension(3, 1)
    assert kloosterman_exact(1, F3) == CyclotomicInt.zeta_power(3, 1) + CyclotomicInt.zeta_power(3, 2)
    assert cyc_reduce_to_integer(kloosterman_exact(1, F3)) == -1
    assert cyc_reduce_to_integer(kloosterman_exact(2, F3)) == 2
    with pytest.raises(ValueError):
        kloosterman_exact(0, F3)


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (7, 1), (2, 3), (3, 3)])
def test_kloosterman_against_oracle(p, n):
    F = build_extension(p, n)
    G = NaiveField(p, n)
    # the two fields use different bases, so compare the multiset of values
    ours = sorted(round(kloosterman_exact(a, F).to_complex().real, 6) for a in range(1, F.q))
    ref = sorted(round(kloosterman_float(G, a).real, 6) for a in G.elements if any(a))
    assert ours == ref


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (13, 1), (2, 5)])
def test_table_path_matches_direct(p, n):
    F = build_extension(p, n)
    for j in range(0, F.q - 1, max(1, (F.q - 1) // 9)):
        a = int(F.exp_table[j])
        assert kloosterman_from_table(F, j) == kloosterman_exact(a, F)


def test_kloosterman_is_real_and_symmetric():
    F = build_extension(5, 2)
    for a in range(1, F.q):
        v = kloosterman_exact(a, F)
        assert v.galois(-1 % F.p) == v  # complex conjugation
        assert abs(v.to_complex()) <= 2 * math.sqrt(F.q) + 1e-9


def test_bulk_path():
    K3 = kloosterman_all_bulk(build_extension(3, 1))
    assert np.allclose(sorted(K3), [-1.0, 2.0])
    for p, n in [(2, 2), (3, 3), (5, 3), (7, 2), (2, 8), (13, 2)]:
        F = build_extension(p, n)
        K = kloosterman_all_bulk(F)
        assert abs(K.sum() - 1) < 1e-6
        assert np.all(np.abs(K) <= 2 * math.sqrt(F.q) + 1e-6)
        for j in (0, 1, (F.q - 1) // 2):
            exact = kloosterman_exact(int(F.exp_table[j]), F).to_complex()
            assert abs(exact.imag) < 1e-9 and abs(K[j] - exact.real) < 1e-8


def test_sym_power_examples():
    assert sym_power_trace(0, 5, 7) == 1
    assert sym_power_trace(3, 1, 3) == -5 and sym_power_trace(3, -2, 3) == 4
    assert sym_power_trace(6, -1, 2) == 7


@given(st.integers(0, 14), st.integers(-60, 60), st.integers(1, 10**4))
def test_sym_power_closed_form(k, t, q):
    assert sym_power_trace(k, t, q) == sym_power_trace_closed(k, t, q)


@pytest.mark.parametrize("key", sorted(MOMENTS))
def test_moments_frozen(key):
    p, n = key
    F = build_extension(p, n)
    assert moments_upto(8, F, method="modular") == MOMENTS[key]
    if F.q <= 200:
        assert moments_upto(8, F, method="cyclotomic") == MOMENTS[key]
        assert moments_upto(8, F, method="direct") == MOMENTS[key]


def test_moment_examples():
    for p, n in [(2, 1), (3, 2), (7, 1), (2, 6)]:
        F = build_extension(p, n)
        assert moment(1, F) == -1
        assert moment(0, F) == F.q - 1
    assert moment(3, build_extension(3, 1)) == -1
    for p in (3, 5, 7, 11, 13, 17):
        assert moment(4, build_extension(p, 1)) == -1 - p * p


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (7, 1), (11, 1), (5, 3)])
def test_character_invariance(p, n):
    F = build_extension(p, n)
    base = moments_upto(9, F)
    for c in range(2, p):
        assert moments_upto(9, F, character=c) == base
    with pytest.raises(ValueError):
        moments_upto(2, F, character=p)


def test_construction_independence():
    for p, modulus in [(7, (3, 1, 1)), (5, (2, 0, 1)), (3, (2, 2, 0, 1))]:
        assert is_irreducible(list(modulus), p)
        n = len(modulus) - 1
        default = build_extension(p, n)
        other = build_extension(p, n, modulus=modulus)
        assert moments_upto(8, other) == moments_upto(8, default)
        alt_gen = int(default.exp_table[next(j for j in range(2, default.q - 1)
                                             if math.gcd(j, default.q - 1) == 1)])
        assert moments_upto(8, build_extension(p, n, generator=alt_gen)) == moments_upto(8, default)


def test_float_path_inside_envelope():
    checked = 0
    for p, n in [(2, 4), (2, 8), (3, 4), (5, 3), (7, 2), (13, 2), (2, 13)]:
        F = build_extension(p, n)
        exact = moments_upto(12, F)
        for k in range(13):
            if float_envelope_ok(k, F.q):
                assert round(moment_float(k, F)) == exact[k]
                checked += 1
    assert checked > 30


def test_large_moment_exact_integer():
    # q^(k+2)/2 far beyond 2^63: no silent overflow
    F = build_extension(13, 3)
    m = moments_upto(12, F)
    assert all(isinstance(v, int) for v in m)
    assert m[1] == -1 and m[4] == -1 - 13 ** 6
    assert abs(m[12]) > 2 ** 63


def test_embedding_subset_matches_full(monkeypatch):
    import symkl.moments as mod
    F = build_extension(37, 1)
    subset = moments_upto(10, F, method="modular")
    monkeypatch.setattr(mod, "ALL_EMBEDDINGS_MAX_P", 10 ** 9)
    assert moments_upto(10, F, method="modular") == subset
    assert moments_upto(10, F, method="cyclotomic") == subset
