"""Hypothesis strategies shared by the property tests."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from qhom.affine import AffineChain, AffineSimplex
from qhom.cyclotomic import CyclotomicInt, CyclotomicRational

ORDERS = (2, 3, 5, 7)

orders = st.sampled_from(ORDERS)
small_ints = st.integers(-6, 6)
small_fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def cyc_ints(order: int):
    return st.lists(small_ints, min_size=order - 1, max_size=order - 1).map(lambda c: CyclotomicInt(order, c))


def cyc_rationals(order: int):
    return st.lists(small_fracs, min_size=order - 1, max_size=order - 1).map(
        lambda c: CyclotomicRational(order, c)
    )


def points(d: int = 2):
    return st.tuples(*[st.integers(-3, 3) for _ in range(d)])


def simplices(n: int, d: int = 2):
    return st.lists(points(d), min_size=n + 1, max_size=n + 1).map(AffineSimplex)


def chains(n: int, order: int, d: int = 2, max_terms: int = 2):
    term = st.tuples(simplices(n, d), cyc_ints(order))
    return st.lists(term, min_size=1, max_size=max_terms).map(
        lambda ts: _sum_terms(ts, n, d, order)
    )


def _sum_terms(terms, n, d, order):
    out = AffineChain.zero(n, d, order)
    for s, a in terms:
        out = out + AffineChain.of(s, order, a)
    return out
