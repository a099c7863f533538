import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quadcong.cfrac import QuadIrr, hirzebruch_psi
from quadcong.dedekind import (
    B,
    Mat2,
    S,
    T,
    dedekind_sum,
    dedekind_sum_naive,
    matrix_of,
    n_of,
    n_of_matrix,
    sawtooth,
)
from quadcong.orders import fundamental_unit, reduced_irrationals


@pytest.mark.parametrize("y,expected", [(Fraction(1, 3), Fraction(-1, 6)), (5, 0), (Fraction(-1, 4), Fraction(1, 4))])
def test_sawtooth(y, expected):
    assert sawtooth(y) == expected


def test_dedekind_examples():
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    assert dedekind_sum(-1, 3) == Fraction(-1, 18)
    assert dedekind_sum(1, 1) == 0
    assert dedekind_sum_naive(1, 3) == Fraction(1, 18)
    assert dedekind_sum_naive(3, 4) == Fraction(-1, 8)
    assert dedekind_sum_naive(5, 7) == dedekind_sum(5, 7)
    with pytest.raises(ValueError):
        dedekind_sum(2, 4)
    with pytest.raises(ValueError):
        dedekind_sum(1, 0)
    with pytest.raises(ValueError):
        dedekind_sum_naive(1, 10**6 + 1)


def test_dedekind_small_closed_form():
    # s(1, k) = (k - 1)(k - 2) / (12 k), a classical closed form
    for k in range(1, 300):
        assert dedekind_sum(1, k) == Fraction((k - 1) * (k - 2), 12 * k)


def test_fast_matches_naive_small():
    for k in range(1, 50):
        for h in range(-k, 2 * k):
            if math.gcd(h, k) == 1:
                assert dedekind_sum(h, k) == dedekind_sum_naive(h, k), (h, k)


coprime_pairs = st.tuples(st.integers(1, 10**12), st.integers(1, 10**12)).filter(lambda t: math.gcd(*t) == 1)


@given(coprime_pairs)
def test_reciprocity_large(pair):
    h, k = pair
    assert dedekind_sum(h, k) + dedekind_sum(k, h) == Fraction(h * h + k * k + 1, 12 * h * k) - Fraction(1, 4)


@given(coprime_pairs)
def test_six_k_integral(pair):
    h, k = pair
    assert (6 * k * dedekind_sum(h, k)).denominator == 1


def test_n_of_matrix_examples():
    m = Mat2(5, 24, 1, 5)
    assert n_of_matrix(m) == 7
    assert n_of_matrix(Mat2(7, 5, 4, 3)) == 1
    assert n_of_matrix(T @ m @ T.inverse()) == 7
    with pytest.raises(ValueError):
        n_of_matrix(Mat2(1, 1, 0, 1))
    with pytest.raises(ValueError):
        n_of_matrix(Mat2(2, 1, 1, 2))


def _random_word(rng, length):
    a = Mat2(1, 0, 0, 1)
    for _ in range(length):
        g = rng.choice((T, S, T.inverse(), S.inverse()))
        a = a @ g
    return a


def _random_hyperbolic(rng):
    while True:
        m = _random_word(rng, rng.randint(2, 10))
        if m.trace > 2 and m.z != 0:
            return m


def test_n_conjugation_invariance():
    rng = random.Random(20261016)
    for _ in range(500):
        m = _random_hyperbolic(rng)
        a = _random_word(rng, rng.randint(0, 12))
        conj = a @ m @ a.inverse()
        if conj.z == 0:
            continue
        assert n_of_matrix(conj) == n_of_matrix(m)


def test_n_left_multiplication_by_b():
    rng = random.Random(7)
    checked = 0
    while checked < 300:
        m = _random_hyperbolic(rng)
        if m.x <= 0:
            continue
        bm = B @ m
        if bm.trace <= 2 or bm.z == 0:
            continue
        assert n_of_matrix(bm) == n_of_matrix(m)
        checked += 1


def test_matrix_of_examples():
    assert matrix_of(QuadIrr(1, 0, 96), (5, 1)) == Mat2(5, 24, 1, 5)
    assert matrix_of(QuadIrr(4, 4, 96), (5, 1)) == Mat2(7, 5, 4, 3)


@pytest.mark.parametrize("delta", [96, 12, 1304, 221, 32 * 7, 61 * 4, 13 * 17])
def test_matrix_of_relations(delta):
    q, r, norm = fundamental_unit(delta)
    sigma = delta % 2
    for xi in reduced_irrationals(delta):
        m = matrix_of(xi, (q, r))
        assert m.det == norm
        assert m.trace == 2 * q + r * sigma
        # eps = z xi + w and eps xi = x xi + y, checked in Q(sqrt(delta)) with coordinates
        # over the basis (1, sqrt(delta)); xi = (b + sqrt)/(2a), eps = (2q + r sigma + r sqrt)/2
        eps = (Fraction(2 * q + r * sigma, 2), Fraction(r, 2))
        x_i = (Fraction(xi.b, 2 * xi.a), Fraction(1, 2 * xi.a))

        def mul(u, v):
            return (u[0] * v[0] + delta * u[1] * v[1], u[0] * v[1] + u[1] * v[0])

        assert eps == (m.z * x_i[0] + m.w, m.z * x_i[1])
        assert mul(eps, x_i) == (m.x * x_i[0] + m.y, m.x * x_i[1])


def test_n_of_examples():
    assert n_of(QuadIrr(1, 0, 96)) == 7
    assert n_of(QuadIrr(4, 4, 96)) == 1
    assert n_of(QuadIrr(1, 0, 12)) == 1
    with pytest.raises(ValueError):
        n_of(QuadIrr(1, 1, 5))


def test_n_equals_psi_small_discriminants():
    for delta in range(5, 700):
        if delta % 4 not in (0, 1) or math.isqrt(delta) ** 2 == delta:
            continue
        if fundamental_unit(delta)[2] != 1:
            continue
        for xi in reduced_irrationals(delta):
            assert n_of(xi) == hirzebruch_psi(xi), xi
