"""Exact integer helpers: lcm, p-adic parts, partition and signed-pair streams.

All arithmetic is on Python ints, so values like q^12 - 1 stay exact.
"""

import math

from sympy import isprime

from .errors import InvalidArgument


def lcm_all(values):
    """Least common multiple of an iterable of positive ints (empty -> 1)."""
    result = 1
    for v in values:
        if v <= 0:
            raise InvalidArgument("lcm_all needs positive integers, got %r" % (v,))
        result = math.lcm(result, v)
    return result


def p_adic_valuation(k, p):
    """Return (e, p**e) where p**e is the exact power of p dividing k."""
    if k <= 0:
        raise InvalidArgument("k must be positive, got %r" % (k,))
    if not isprime(p):
        raise InvalidArgument("p must be prime, got %r" % (p,))
    e = 0
    while k % p == 0:
        k //= p
        e += 1
    return e, p**e


def enumerate_partitions(m, max_part=None):
    """Yield partitions of m as tuples of weakly decreasing parts.

    Order is reverse-lexicographic: (m) first, (1,)*m last.  m = 0 yields
    the empty partition once.
    """
    if m < 0:
        raise InvalidArgument("m must be nonnegative, got %r" % (m,))
    if max_part is None:
        max_part = m
    if m == 0:
        yield ()
        return
    for first in range(min(m, max_part), 0, -1):
        for rest in enumerate_partitions(m - first, first):
            yield (first,) + rest


def enumerate_signed_pairs(m, parity="none", min_total_parts=0):
    """Yield pairs (minus, plus) of partitions with |minus| + |plus| = m.

    Each pair is a pair of part-tuples; the same multiset of signed parts
    appears exactly once.  `parity` restricts the number of plus parts:
    "plus_even" / "plus_odd" keep pairs whose plus-part count is even / odd,
    "none" keeps everything.  Pairs with fewer than `min_total_parts` total
    parts are dropped.

    Order: minus weight descending, each side reverse-lexicographic.
    """
    if parity not in ("none", "plus_even", "plus_odd"):
        raise InvalidArgument("bad parity %r" % (parity,))
    if m < 0:
        raise InvalidArgument("m must be nonnegative, got %r" % (m,))
    for j in range(m, -1, -1):
        for minus in enumerate_partitions(j):
            for plus in enumerate_partitions(m - j):
                if len(minus) + len(plus) < min_total_parts:
                    continue
                if parity == "plus_even" and len(plus) % 2 != 0:
                    continue
                if parity == "plus_odd" and len(plus) % 2 != 1:
                    continue
                yield minus, plus


def pair_value(q, pair):
    """lcm of q**m - 1 over minus parts and q**m + 1 over plus parts."""
    minus, plus = pair
    return lcm_all([q**a - 1 for a in minus] + [q**b + 1 for b in plus])


def divides(a, b):
    return b % a == 0
