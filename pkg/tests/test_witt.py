from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from liedense.errors import DomainError, InvariantError, ValidationError
from liedense.numkit import jennings_product
from liedense.witt import (
    DimSeq,
    GenProfile,
    cumulative,
    dominant_root,
    free_graded_lie_dims,
    lie_dims_from_log,
    restricted_dim,
    restricted_dims,
    restricted_from_ordinary,
    witt_dim,
    witt_dims,
)


def _lyndon_count(d: int, n: int) -> int:
    # independent oracle: a word is Lyndon iff strictly smaller than all its proper rotations
    count = 0
    for w in product(range(d), repeat=n):
        if all(w < w[i:] + w[:i] for i in range(1, n)):
            count += 1
    return count


@pytest.mark.parametrize("d,n,dim", [(2, 6, 9), (1, 2, 0), (3, 5, 48), (2, 10, 99), (1, 1, 1)])
def test_witt_examples(d, n, dim):
    assert witt_dim(d, n) == dim


@pytest.mark.parametrize("d,nmax", [(2, 12), (3, 7), (4, 5)])
def test_witt_matches_lyndon_words(d, nmax):
    assert [witt_dim(d, n) for n in range(1, nmax + 1)] == [_lyndon_count(d, n) for n in range(1, nmax + 1)]


def test_witt_domain():
    with pytest.raises(DomainError):
        witt_dim(0, 3)


@pytest.mark.parametrize("n,dim", [(4, 6), (3, 2), (6, 11)])
def test_restricted_examples(n, dim):
    assert restricted_dim(2, 2, n) == dim


def test_restricted_rejects_composite_p():
    with pytest.raises(DomainError):
        restricted_dim(2, 4, 3)


def test_generalized_examples():
    assert free_graded_lie_dims(GenProfile({2: 1, 3: 2}), 6).as_list() == [0, 1, 2, 0, 2, 1]
    assert free_graded_lie_dims(GenProfile({5: 1}), 9).as_list() == [0, 0, 0, 0, 1, 0, 0, 0, 0]
    assert free_graded_lie_dims(GenProfile({1: 2}), 10) == witt_dims(2, 10)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_generalized_specializes_to_witt(d):
    assert free_graded_lie_dims(GenProfile({1: d}), 15) == witt_dims(d, 15)


def test_empty_profile_rejected():
    with pytest.raises(ValidationError):
        free_graded_lie_dims(GenProfile({}), 4)


def test_nonfree_log_is_flagged():
    with pytest.raises(InvariantError):
        lie_dims_from_log([Fraction(0), Fraction(1, 2)], 1)
    with pytest.raises(InvariantError):
        lie_dims_from_log([Fraction(0), Fraction(-1)], 1)


def test_restricted_from_ordinary():
    w = witt_dims(2, 8)
    assert restricted_from_ordinary(w, 2)[4] == 6
    assert restricted_from_ordinary(w, 2) == restricted_dims(2, 2, 8)
    assert restricted_from_ordinary([4, 5, 16, 45], 2)[4] == 54
    assert restricted_from_ordinary(w, 3)[5] == w[5]


def test_profile_normalizes_and_parses():
    assert GenProfile({1: 0, 2: 3}) == GenProfile({2: 3})
    prof = GenProfile.parse("2:1,3:2")
    assert prof.entries == {2: 1, 3: 2}
    assert prof.top_degree == 3 and prof.rank == 3 and str(prof) == "2:1,3:2"
    with pytest.raises(ValidationError):
        GenProfile.parse("2-1")


def test_dominant_root():
    r = dominant_root(GenProfile({1: 2}))
    assert r.exact and r.lam == 2
    r = dominant_root(GenProfile({1: 1}))
    assert r.exact and r.lam == 1
    r = dominant_root(GenProfile({2: 1, 3: 2}), tol=1e-9)
    assert abs(r.lam - 1.5214) < 1e-4
    assert abs(r.lam**3 - r.lam - 2) < 1e-8
    assert r.residual_bound <= r.lam


def test_cumulative():
    assert cumulative(witt_dims(2, 10)).as_list() == [2, 3, 5, 8, 14, 23, 41, 71, 127, 226]
    assert cumulative(DimSeq.zeros(3)).as_list() == [0, 0, 0]
    assert cumulative(restricted_dims(2, 2, 4))[4] == 13


def test_dimseq_indexing():
    s = DimSeq([3, 1])
    assert s[1] == 3 and len(s) == 2
    with pytest.raises(IndexError):
        s[0]
    with pytest.raises(ValidationError):
        DimSeq([1, -1])


def test_asymptotic_free_restricted():
    n, d = 20, 2
    # |R_n * n / d^n - 1| < 1/100 in exact arithmetic
    assert abs(Fraction(restricted_dim(d, 2, n) * n, d**n) - 1) < Fraction(1, 100)


@pytest.mark.parametrize("d,p", [(2, 2), (2, 3), (3, 2)])
def test_jennings_recovers_free_associative(d, p):
    N = 10
    assert jennings_product(restricted_dims(d, p, N).as_list(), p, N).as_ints() == [d**n for n in range(N + 1)]


profiles = st.dictionaries(st.integers(1, 5), st.integers(0, 3), min_size=1, max_size=4).filter(
    lambda m: any(m.values())
)


@settings(max_examples=200, deadline=None)
@given(profiles, st.integers(1, 20))
def test_generalized_dims_integral(entries, N):
    dims = free_graded_lie_dims(GenProfile(entries), N)
    assert len(dims) == N and all(isinstance(v, int) and v >= 0 for v in dims)


@settings(max_examples=50, deadline=None)
@given(profiles, st.sampled_from([2, 3, 5]))
def test_generalized_jennings_consistency(entries, p):
    # enveloping algebra of a free restricted algebra on graded generators is free associative
    N = 10
    prof = GenProfile(entries)
    c = restricted_from_ordinary(free_graded_lie_dims(prof, N), p)
    from liedense.numkit import TruncSeries, series_inverse

    expected = series_inverse(TruncSeries({0: 1, **{i: -r for i, r in prof.entries.items()}}, N))
    assert jennings_product(c.as_list(), p, N) == expected
