import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kalvar.arith import binomial
from kalvar.degrees import (TruncatedSymSeries, asymptotic_leading, chern_series_s2,
                            degree_all_methods, degree_binomial, degree_koutschan,
                            degree_schur, degree_univariate, degree_via_chern_classes,
                            expand_degree_series, grassmannian_degree, multidegree_incidence,
                            partitions, schur_decompose, schur_polynomial, vandermonde,
                            verify_polynomiality)
from kalvar.kalman import StratumSpec

GRID = [(s, d, n) for n in range(1, 9) for d in range(1, n + 1) for s in range(1, d + 1)]


# -- series ---------------------------------------------------------------------

def test_s1_series_is_binomial():
    f = expand_degree_series(1, 4, 6)
    assert f.cap == 3
    assert f.terms() == {(k,): math.comb(6, k) for k in range(4)}


def test_example_series_2_3_5():
    f = expand_degree_series(2, 3, 5)
    assert f.cap == 2
    assert f.terms() == {(0, 0): 1, (1, 0): 5, (0, 1): 5, (1, 1): 12 + 11, (2, 0): 11, (0, 2): 11}


@pytest.mark.parametrize("s,d,n", [(2, 4, 6), (3, 5, 7), (3, 6, 8), (4, 6, 8), (4, 8, 8)])
def test_series_symmetric(s, d, n):
    f = expand_degree_series(s, d, n)
    if s <= 3:
        perms = list(itertools.permutations(range(s)))
    else:
        perms = [(1, 0, 2, 3), (0, 2, 1, 3), (3, 1, 2, 0)]
    assert f.is_symmetric(perms)
    assert all(sum(e) <= f.cap for e in f.terms())


def test_truncation_drops_high_terms():
    x = TruncatedSymSeries.from_terms(2, 2, {(1, 0): 1, (0, 1): 1, (3, 0): 4})
    assert (3, 0) not in x.terms()
    y = x * x
    assert y.terms() == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    with pytest.raises(ValueError):
        y.coeff((3, 0))


def test_chern_identity_s2():
    for d in range(2, 7):
        for n in range(d, 9):
            f = expand_degree_series(2, d, n)
            assert f.terms() == chern_series_s2(n, f.cap)


# -- Schur basis ---------------------------------------------------------------

def test_partitions_enumeration():
    assert list(partitions(4, 2)) == [(4,), (3, 1), (2, 2)]
    assert len(list(partitions(6, 6))) == 11
    assert list(partitions(0, 3)) == [()]


def test_e_s_is_single_schur():
    for s in range(1, 5):
        f = TruncatedSymSeries.from_terms(s, s, {(1,) * s: 1})
        assert schur_decompose(f).coeffs == {(1,) * s: 1}


def test_example_schur_expansion():
    E = schur_decompose(expand_degree_series(2, 3, 5))
    assert E.through == 2
    assert E.coeffs == {(): 1, (1,): 5, (1, 1): 12, (2,): 11}


def test_schur_rejects_non_symmetric():
    f = TruncatedSymSeries.from_terms(2, 2, {(1, 0): 1})
    with pytest.raises(ValueError):
        schur_decompose(f)


def test_schur_rejects_non_integral():
    f = TruncatedSymSeries.from_terms(2, 1, {(1, 0): Fraction(1, 2), (0, 1): Fraction(1, 2)})
    with pytest.raises(ArithmeticError):
        schur_decompose(f)


def _antisymmetrized(exps, s):
    out = {}
    for perm in itertools.permutations(range(s)):
        sign = 1
        for i in range(s):
            for j in range(i + 1, s):
                if perm[i] > perm[j]:
                    sign = -sign
        e = [0] * s
        for i, p in enumerate(perm):
            e[p] = exps[i]
        out[tuple(e)] = out.get(tuple(e), 0) + sign
    return {k: v for k, v in out.items() if v}


def _poly_mul(a, b):
    out = {}
    for e, c in a.items():
        for f, d in b.items():
            k = tuple(x + y for x, y in zip(e, f))
            out[k] = out.get(k, 0) + c * d
    return {k: v for k, v in out.items() if v}


SMALL_PARTITIONS = [(s, lam) for s in (1, 2, 3) for k in range(7) for lam in partitions(k, s)]


@pytest.mark.parametrize("s,lam", SMALL_PARTITIONS)
def test_schur_round_trip(s, lam):
    # tableau construction times the Vandermonde equals the alternant a_{lam+delta}
    poly = schur_polynomial(lam, s)
    lam_full = tuple(lam) + (0,) * (s - len(lam))
    alt = _antisymmetrized([lam_full[i] + s - 1 - i for i in range(s)], s)
    assert _poly_mul(poly, vandermonde(s)) == alt
    f = TruncatedSymSeries.from_terms(s, sum(lam), poly)
    assert schur_decompose(f).coeffs == {lam: 1}


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(-5, 5)), max_size=4))
def test_schur_decompose_linear(combo):
    # random Z-combination of s_lambda for s = 2 comes back exactly
    lams = [lam for k in range(5) for lam in partitions(k, 2)]
    terms, expected = {}, {}
    for idx, c in combo:
        lam = lams[idx % len(lams)]
        expected[lam] = expected.get(lam, 0) + c
        for e, v in schur_polynomial(lam, 2).items():
            terms[e] = terms.get(e, 0) + c * v
    expected = {k: v for k, v in expected.items() if v}
    got = schur_decompose(TruncatedSymSeries.from_terms(2, 4, terms)).coeffs
    assert got == expected


# -- degree routes ---------------------------------------------------------------

def test_golden_degrees():
    assert degree_schur(1, 2, 4) == 4
    assert degree_schur(1, 3, 5) == 10
    assert degree_schur(2, 3, 5) == 12
    assert degree_schur(1, 3, 9) == 36
    assert degree_schur(StratumSpec(2, 3, 5)) == 12
    for n in range(3, 9):
        assert degree_schur(1, n - 1, n) == math.comb(n, 2)


def test_s_equals_d():
    for d in range(1, 6):
        assert degree_schur(d, d, d + 2) == 1


def test_binomial_route():
    assert degree_binomial(1, 3, 5) == 10
    assert degree_binomial(1, 3, 9) == 36
    with pytest.raises(ValueError):
        degree_binomial(2, 3, 5)


def test_univariate_route():
    assert degree_univariate(2, 3, 5) == 12
    for n in range(2, 9):
        assert degree_univariate(1, 2, n) == n
    for d in range(2, 7):
        assert degree_univariate(d - 1, d, d) == d == degree_schur(d - 1, d, d)
    with pytest.raises(ValueError):
        degree_univariate(1, 3, 5)


def test_koutschan_route():
    assert degree_koutschan(3, 5) == 12
    for n in range(5, 13):
        assert degree_koutschan(3, n) == degree_univariate(2, 3, n)
    for n in range(6, 13):
        assert degree_koutschan(4, n) == degree_schur(2, 4, n)
    with pytest.raises(ValueError):
        degree_koutschan(2, 5)


@pytest.mark.parametrize("s,d,n", GRID)
def test_grid_agreement_and_positivity(s, d, n):
    rep = degree_all_methods(s, d, n)
    assert rep["agree"], rep
    assert rep["degree"] > 0


@pytest.mark.parametrize("s,d,n", [c for c in GRID if c[0] < c[1]])
def test_grid_schur_coefficients_integral(s, d, n):
    E = schur_decompose(expand_degree_series(s, d, n))
    assert all(isinstance(c, int) for c in E.coeffs.values())
    assert E[(d - s,) * s] == degree_schur(s, d, n)


def test_grassmannian_degree():
    assert grassmannian_degree(2, 4) == 2
    assert grassmannian_degree(2, 3) == 1
    assert grassmannian_degree(2, 5) == 5
    assert grassmannian_degree(3, 6) == 42
    for d in range(1, 7):
        assert grassmannian_degree(1, d) == 1
        assert asymptotic_leading(1, d) == Fraction(1, math.factorial(d - 1))


@pytest.mark.parametrize("s,d", [(1, 2), (1, 3), (2, 3), (2, 4), (1, 4)])
def test_polynomiality(s, d):
    k = s * (d - s)
    rep = verify_polynomiality(s, d, range(d, d + k + 3))
    assert rep["pass"], rep
    assert rep["poly_degree"] == k


def test_polynomiality_examples():
    rep = verify_polynomiality(1, 2, range(2, 6))
    assert rep["degrees"] == [2, 3, 4, 5]
    assert verify_polynomiality(2, 3, range(3, 8))["leading_coefficient"] == Fraction(1, 2)
    assert verify_polynomiality(1, 3, range(3, 8))["leading_coefficient"] == Fraction(1, 2)
    with pytest.raises(ValueError):
        verify_polynomiality(2, 4, range(4, 7))


@pytest.mark.parametrize("s,d,n", [(1, 2, 4), (2, 3, 5), (2, 4, 7), (3, 5, 7), (2, 5, 8), (3, 3, 5)])
def test_chern_class_route(s, d, n):
    assert degree_via_chern_classes(s, d, n) == degree_schur(s, d, n)


# -- multidegree -----------------------------------------------------------------

def test_multidegree_examples():
    C, sub = multidegree_incidence(3)
    assert C == {(2, 0): 1, (1, 1): 1, (0, 2): 1}
    assert sub == {(2, 0): 1, (1, 1): 3, (0, 2): 3}
    assert multidegree_incidence(1) == ({(0, 0): 1}, {(0, 0): 1})


@pytest.mark.parametrize("n", range(1, 11))
def test_multidegree_binomials(n):
    C, sub = multidegree_incidence(n)
    assert all(i + j == n - 1 for i, j in sub)
    for d in range(1, n + 1):
        assert sub[(n - d, d - 1)] == binomial(n, d - 1) == degree_binomial(1, d, n)
