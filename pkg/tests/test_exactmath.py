import math

import pytest
from hypothesis import given, strategies as st
from sympy.functions.combinatorial.numbers import partition as npartitions

from classpec.errors import InvalidArgument
from classpec.exactmath import (divides, enumerate_partitions,
                                enumerate_signed_pairs, lcm_all,
                                p_adic_valuation, pair_value)


@given(st.lists(st.integers(min_value=1, max_value=10**6), max_size=8))
def test_lcm_all_divisibility(vals):
    result = lcm_all(vals)
    for v in vals:
        assert result % v == 0
    # minimality: dividing by any prime factor breaks some divisibility
    if result > 1:
        for r in range(2, 50):
            if result % r == 0:
                assert any(result // r % v != 0 for v in vals)
                break


def test_lcm_all_empty():
    assert lcm_all([]) == 1


def test_lcm_all_rejects_nonpositive():
    with pytest.raises(InvalidArgument):
        lcm_all([6, 0])


@given(st.integers(min_value=1, max_value=10**9),
       st.sampled_from([2, 3, 5, 7, 11]))
def test_p_adic_valuation(k, p):
    e, pe = p_adic_valuation(k, p)
    assert pe == p**e
    assert k % pe == 0
    assert (k // pe) % p != 0


def test_p_adic_valuation_rejects_composite_p():
    with pytest.raises(InvalidArgument):
        p_adic_valuation(12, 4)


@pytest.mark.parametrize("m", range(9))
def test_partition_count(m):
    parts = list(enumerate_partitions(m))
    assert len(parts) == npartitions(m)
    assert len(set(parts)) == len(parts)
    for p in parts:
        assert sum(p) == m
        assert list(p) == sorted(p, reverse=True)


def test_partition_max_part():
    assert list(enumerate_partitions(4, max_part=2)) == [(2, 2), (2, 1, 1),
                                                         (1, 1, 1, 1)]


@pytest.mark.parametrize("m", range(7))
def test_signed_pairs_weight_and_dedup(m):
    pairs = list(enumerate_signed_pairs(m))
    assert len(set(pairs)) == len(pairs)
    for minus, plus in pairs:
        assert sum(minus) + sum(plus) == m


def test_signed_pairs_parity_split():
    m = 5
    every = list(enumerate_signed_pairs(m))
    even = list(enumerate_signed_pairs(m, parity="plus_even"))
    odd = list(enumerate_signed_pairs(m, parity="plus_odd"))
    assert len(even) + len(odd) == len(every)
    assert all(len(plus) % 2 == 0 for _, plus in even)
    assert all(len(plus) % 2 == 1 for _, plus in odd)


def test_signed_pairs_min_total_parts():
    pairs = list(enumerate_signed_pairs(3, min_total_parts=2))
    assert ((3,), ()) not in pairs
    assert ((), (3,)) not in pairs
    assert all(len(a) + len(b) >= 2 for a, b in pairs)


@given(st.sampled_from([2, 3, 4, 5, 9]), st.integers(min_value=0, max_value=5))
def test_pair_value_matches_direct_lcm(q, m):
    for pair in enumerate_signed_pairs(m):
        minus, plus = pair
        direct = math.lcm(*[q**a - 1 for a in minus], *[q**b + 1 for b in plus],
                          1)
        assert pair_value(q, pair) == direct


def test_divides():
    assert divides(6, 36)
    assert not divides(5, 36)
