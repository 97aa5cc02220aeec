"""Shared test utilities: synthetic Jordan instances with known structure."""

import random

import numpy as np

from momexp import CMatrix, mat_inverse
from momexp.jordan import assemble_jordan


def random_exact_matrix(n, rng, lo=-4, hi=4):
    return CMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


def random_block_structure(rng, n_max=6, size_max=3, separation_pool=(-3, -2, -1, 0, 1, 2, 3)):
    """Random (eigenvalue, size) list with integer eigenvalues separated by
    >= 1 and block sizes <= size_max; total dimension 2..n_max."""
    n = rng.randint(2, n_max)
    sizes = []
    left = n
    while left:
        s = rng.randint(1, min(size_max, left))
        sizes.append(s)
        left -= s
    lams = list(separation_pool)
    rng.shuffle(lams)
    # the same eigenvalue may carry several blocks
    n_eigs = rng.randint(1, min(len(sizes), len(lams)))
    chosen = lams[:n_eigs]
    return [(chosen[rng.randrange(n_eigs)], s) for s in sizes]


def synthetic_jordan_instance(rng, n_max=6, cond_max=150.0):
    """(A_float, expected block multiset) with A = P J P^{-1} built exactly."""
    while True:
        blocks = random_block_structure(rng, n_max=n_max)
        n = sum(s for _, s in blocks)
        P = random_exact_matrix(n, rng, -3, 3)
        pf = P.to_float().to_numpy()
        if abs(np.linalg.det(pf)) < 0.5 or np.linalg.cond(pf) > cond_max:
            continue
        J = assemble_jordan(blocks, backend="exact")
        A = P @ J @ mat_inverse(P)
        expected = sorted((lam, size) for lam, size in blocks)
        return A.to_float(), expected


def recovered_multiset(dec):
    """Recovered blocks as a sorted multiset of (nearest integer lam, size)."""
    out = []
    for lam, size in dec.blocks:
        assert abs(lam.imag) < 1e-6
        nearest = round(lam.real)
        assert abs(lam.real - nearest) < 1e-6
        out.append((nearest, size))
    return sorted(out)
