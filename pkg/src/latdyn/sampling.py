"""Seeded random generators for matrices used by tests and demos.

Unimodular matrices are built as products of elementary row operations, so
|det| = 1 holds by construction; unitriangular ones fill the strict upper
triangle directly.  Everything takes an explicit random.Random so runs are
reproducible.
"""

from __future__ import annotations

import random

from .matrix import IntMatrix


def random_unimodular(dim, rng: random.Random, ops=12, entry_bound=2):
    """Product of elementary operations: transvections, swaps, sign flips."""
    m = [[int(i == j) for j in range(dim)] for i in range(dim)]
    for _ in range(ops):
        kind = rng.randrange(3)
        i = rng.randrange(dim)
        j = rng.randrange(dim)
        if kind == 0 and i != j:
            c = rng.choice([x for x in range(-entry_bound, entry_bound + 1) if x])
            for col in range(dim):
                m[i][col] += c * m[j][col]
        elif kind == 1 and i != j:
            m[i], m[j] = m[j], m[i]
        elif kind == 2:
            m[i] = [-x for x in m[i]]
    return IntMatrix(m)


def random_unitriangular(dim, rng: random.Random, entry_bound=3):
    rows = [[1 if i == j else (rng.randint(-entry_bound, entry_bound) if j > i else 0) for j in range(dim)] for i in range(dim)]
    return IntMatrix(rows)


def random_cyclotomic_block_matrix(dim, rng: random.Random, conjugate=True):
    """Quasi-unipotent matrix: direct sum of cyclotomic companions, conjugated.

    Block indices are drawn from the cyclotomic polynomials whose degree fits
    the remaining space, so the result has spectral radius exactly 1.
    """
    from .polynomial import cyclotomic_polynomial, euler_phi

    blocks = []
    remaining = dim
    candidates = [d for d in range(1, 4 * dim * dim) if euler_phi(d) <= dim]
    while remaining > 0:
        fits = [d for d in candidates if euler_phi(d) <= remaining]
        d = rng.choice(fits)
        blocks.append(IntMatrix.companion(cyclotomic_polynomial(d)))
        remaining -= euler_phi(d)
    m = IntMatrix.block_diagonal(blocks)
    if conjugate:
        u = random_unimodular(dim, rng)
        m = u.inverse() * m * u
    return m


def random_permutation_matrix(dim, rng: random.Random):
    perm = list(range(dim))
    rng.shuffle(perm)
    return IntMatrix([[int(perm[i] == j) for j in range(dim)] for i in range(dim)])
