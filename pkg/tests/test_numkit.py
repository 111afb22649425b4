from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from liedense.errors import DomainError, UsageError
from liedense.numkit import (
    TruncSeries,
    divisors,
    jennings_product,
    moebius,
    p_adic_split,
    series_inverse,
    series_log,
    series_mul,
    series_pow,
)
from liedense.witt import restricted_dims


def _moebius_bruteforce(n: int) -> int:
    # independent oracle: factor by repeated division, count exponents
    exps = {}
    m, q = n, 2
    while m > 1:
        while m % q == 0:
            exps[q] = exps.get(q, 0) + 1
            m //= q
        q += 1
    if any(e > 1 for e in exps.values()):
        return 0
    return (-1) ** len(exps)


@pytest.mark.parametrize("n,mu", [(1, 1), (6, 1), (12, 0), (2, -1), (30, -1), (49, 0)])
def test_moebius_values(n, mu):
    assert moebius(n) == mu


def test_moebius_domain():
    with pytest.raises(DomainError):
        moebius(0)


def test_moebius_matches_bruteforce():
    assert all(moebius(n) == _moebius_bruteforce(n) for n in range(1, 500))


def test_moebius_summatory():
    for n in range(1, 10_001):
        assert sum(moebius(k) for k in divisors(n)) == (1 if n == 1 else 0)


def test_divisors_and_split():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert p_adic_split(48, 2) == (4, 3)
    assert p_adic_split(7, 3) == (0, 7)


def test_mul_examples():
    assert series_mul(TruncSeries([1, 1], 3), TruncSeries([1, -1], 3)) == TruncSeries([1, 0, -1], 3)
    geom = TruncSeries([2**k for k in range(5)], 4)
    assert series_mul(TruncSeries([1, -2], 4), geom) == TruncSeries.one(4)
    sq = series_mul(TruncSeries([1, 1, 1], 2), TruncSeries([1, 1, 1], 2))
    assert sq.as_ints() == [1, 2, 3]


def test_mixed_orders_rejected():
    with pytest.raises(UsageError):
        TruncSeries([1, 1], 3) * TruncSeries([1, 1], 4)


def test_inverse_examples():
    assert series_inverse(TruncSeries([1, -4, 1], 4)).as_ints() == [1, 4, 15, 56, 209]
    assert series_inverse(TruncSeries([1, -2], 3)).as_ints() == [1, 2, 4, 8]
    assert series_inverse(TruncSeries.one(5)) == TruncSeries.one(5)
    with pytest.raises(DomainError):
        series_inverse(TruncSeries([2, 1], 3))


def test_log_examples():
    b = series_log(series_inverse(TruncSeries([1, -2], 3)))
    assert b.coeffs == (0, 2, 2, Fraction(8, 3))
    assert series_log(TruncSeries.one(4)) == TruncSeries([0] * 5, 4)
    b = series_log(series_inverse(TruncSeries({0: 1, 2: -1, 3: -2}, 6)))
    assert b.coeffs == tuple(map(Fraction, (0, 0, 1, 2, Fraction(1, 2), 2, Fraction(7, 3))))
    with pytest.raises(DomainError):
        series_log(TruncSeries([3], 2))


def test_pow_matches_repeated_mul():
    a = TruncSeries([1, 3, -1, 2], 6)
    acc = TruncSeries.one(6)
    for k in range(6):
        assert series_pow(a, k) == acc
        acc = acc * a


def test_jennings_examples():
    c = restricted_dims(2, 2, 4).as_list()
    assert jennings_product(c, 2, 4).as_ints() == [1, 2, 4, 8, 16]
    assert jennings_product([0, 0, 0], 2, 3) == TruncSeries.one(3)
    assert jennings_product([4, 9, 16], 2, 3).as_ints() == [1, 4, 15, 56]


unit_series = st.lists(st.integers(-5, 5), min_size=0, max_size=8).map(lambda cs: TruncSeries([1, *cs], 8))


@settings(max_examples=60, deadline=None)
@given(unit_series)
def test_inverse_roundtrip(a):
    assert series_mul(a, series_inverse(a)) == TruncSeries.one(8)


@settings(max_examples=40, deadline=None)
@given(unit_series, unit_series)
def test_log_of_product_is_sum(a, b):
    assert series_log(series_mul(a, b)) == series_log(a) + series_log(b)
