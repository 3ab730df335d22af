"""Length statistics of decompose() words on random group elements.

Lengths count generator letters with exponents expanded. Words come from the
constructive reduction, not a shortest-word search, so they are upper bounds.
"""

import argparse
import random
import statistics

from pauli_normalizer.symplectic import decompose, random_symplectic


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7, 11])
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'p':>3} {'tokens':>8} {'letters':>8} {'max':>6}")
    for p in args.primes:
        toks, letters = [], []
        for _ in range(args.samples):
            M = random_symplectic(p, rng, extended=True)
            w = decompose(M)
            assert w.evaluate() == M
            toks.append(len(w))
            letters.append(w.length())
        print(f"{p:>3} {statistics.mean(toks):>8.1f} {statistics.mean(letters):>8.1f} {max(letters):>6}")


if __name__ == "__main__":
    main()
