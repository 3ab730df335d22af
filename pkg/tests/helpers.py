"""Independent oracles shared by the tests."""

import cmath
import itertools
import random

import numpy as np

from pauli_normalizer.zmod import ZModMatrix


def to_complex(x) -> complex:
    """Numerical value of a CycloNumber through the embedding w_m -> exp(2 pi i / m)."""
    w = cmath.exp(2j * cmath.pi / x.conductor)
    return sum(float(c) * w ** k for k, c in enumerate(x.coeffs))


def cmat_to_complex(M) -> np.ndarray:
    r, c = M.shape
    return np.array([[to_complex(M.entry(i, j)) for j in range(c)] for i in range(r)])


def leibniz_det(rows, p):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = (-1) ** inv
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total % p


def random_matrix(p, rng: random.Random, r=4, c=4) -> ZModMatrix:
    return ZModMatrix([[rng.randrange(p) for _ in range(c)] for _ in range(r)], p)


def form_sign(M: ZModMatrix):
    """sign of M^T J M against J, computed with plain numpy integers."""
    p = M.modulus
    J = np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    A = np.array(M.rows)
    F = (A.T @ J @ A) % p
    if np.array_equal(F, J % p):
        return 1
    if np.array_equal(F, (-J) % p):
        return -1
    return None
