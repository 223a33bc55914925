"""Shared helpers and independent oracles for the test suite.

The oracles here deliberately avoid the library's own code paths: naive
textbook Gaussian elimination over Fraction, and brute-force monomial
enumeration over bounded exponent boxes.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from plinth.polyring import Monomial, Polynomial, VariableSet


def random_poly(
    rng: random.Random,
    ambient: VariableSet,
    max_terms: int = 4,
    max_exp: int = 3,
    coef_range: int = 5,
) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        pairs = []
        for i in range(len(ambient)):
            if rng.random() < 0.5:
                pairs.append((i, rng.randint(1, max_exp)))
        c = Fraction(rng.randint(-coef_range, coef_range), rng.randint(1, 3))
        if c:
            m = Monomial(pairs)
            terms[m] = terms.get(m, Fraction(0)) + c
    return Polynomial(ambient, {m: c for m, c in terms.items() if c})


def naive_nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Textbook Gauss-Jordan over Fraction; no pivark tricks, no scaling."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for k, c in enumerate(pivots):
            vec[c] = -m[k][free]
        basis.append(vec)
    return basis


def brute_monomials(
    weights: list[tuple[int, ...]], degree: tuple[int, ...], indices: list[int]
) -> set[tuple[tuple[int, int], ...]]:
    """All exponent assignments hitting the degree, by full box enumeration."""
    rank = len(degree)
    caps = []
    for i in indices:
        w = weights[i]
        cap = min(
            (degree[j] // w[j] for j in range(rank) if w[j] > 0), default=0
        )
        caps.append(cap)
    found = set()
    for combo in product(*(range(c + 1) for c in caps)):
        total = [0] * rank
        for e, i in zip(combo, indices):
            for j in range(rank):
                total[j] += e * weights[i][j]
        if tuple(total) == tuple(degree):
            found.add(tuple((i, e) for i, e in zip(indices, combo) if e))
    return found
