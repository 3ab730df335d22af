"""Realize random extended-symplectic matrices as automorphisms and read them back.

For each sample: decompose M, lift the word to a p^2 x p^2 matrix, and check
that the coefficient matrix of the lift is M again.
"""

import argparse
import random
import time

from pauli_normalizer.normalizer import coeff_matrix, realize
from pauli_normalizer.symplectic import is_symplectic, random_symplectic


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("-p", type=int, default=5)
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    t0 = time.perf_counter()
    outer = 0
    for _ in range(args.samples):
        M = random_symplectic(args.p, rng, extended=True)
        rep = realize(M)
        assert coeff_matrix(rep) == M
        outer += rep.outer
        assert rep.outer == (is_symplectic(M) == -1)
    dt = time.perf_counter() - t0
    print(f"p={args.p}: {args.samples} round trips ok ({outer} outer), {dt:.1f} s")


if __name__ == "__main__":
    main()
