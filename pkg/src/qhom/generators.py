"""Seeded random instances for the property suites.

Everything draws from an explicit ``random.Random`` so a (seed, N, trial)
triple reproduces an instance exactly.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .affine import AffineChain, AffineSimplex
from .cyclotomic import CyclotomicInt
from .linalg import Matrix
from .ncomplex import GradedMorphism, GradedNComplex
from .simplicial import QChain, SemiSimplicialSet


def random_rational(rng: random.Random, bound: int = 4, denom: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound * denom, bound * denom), rng.randint(1, denom))


def random_point(rng: random.Random, d: int) -> tuple:
    return tuple(random_rational(rng) for _ in range(d))


def random_simplex(rng: random.Random, n: int, d: int, pool=None) -> AffineSimplex:
    """n-simplex in R^d; with ``pool`` the vertices are drawn from it, so repeats happen."""
    if pool:
        return AffineSimplex([rng.choice(pool) for _ in range(n + 1)])
    return AffineSimplex([random_point(rng, d) for _ in range(n + 1)])


def random_coeff(rng: random.Random, order: int, bound: int = 3) -> CyclotomicInt:
    while True:
        c = CyclotomicInt(order, [rng.randint(-bound, bound) for _ in range(order - 1)])
        if not c.is_zero():
            return c


def random_chain(rng: random.Random, n: int, d: int, order: int, terms: int = 2, pool=None) -> AffineChain:
    out = AffineChain.zero(n, d, order)
    for _ in range(terms):
        out = out + AffineChain.of(random_simplex(rng, n, d, pool), order, random_coeff(rng, order))
    return out


def random_qchain(rng: random.Random, x: SemiSimplicialSet, n: int, order: int, density: float = 0.7) -> QChain:
    coeffs = {}
    for cell in x.cells_in(n):
        if rng.random() < density:
            coeffs[cell] = random_coeff(rng, order)
    return QChain(n, coeffs)


def random_matrix(rng: random.Random, order: int, rows: int, cols: int, bound: int = 2) -> Matrix:
    return Matrix.from_rows(
        order,
        [[CyclotomicInt(order, [rng.randint(-bound, bound) for _ in range(order - 1)]) for _ in range(cols)]
         for _ in range(rows)],
        ncols=cols,
    )


def random_morphism(rng: random.Random, source: GradedNComplex, target: GradedNComplex, shift: int) -> GradedMorphism:
    mats = {
        n: random_matrix(rng, source.order, target.rank(n + shift), source.rank(n))
        for n in source.degrees()
    }
    return GradedMorphism(source, target, shift, mats)
