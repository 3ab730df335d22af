"""Print C(Ad_{B_j}) for each j and prime, with timings.

    python3 scripts/generator_table.py --primes 2 3 5 7 11
"""

import argparse
import time

from pauli_normalizer.normalizer import ad_B, coeff_matrix, out_I
from pauli_normalizer.symplectic import build_D, outer_diag


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7])
    args = ap.parse_args()
    for p in args.primes:
        t0 = time.perf_counter()
        ok = [coeff_matrix(ad_B(j, p)) == build_D(j, p) for j in range(1, 5)]
        ok.append(coeff_matrix(out_I(p)) == outer_diag(p))
        flags = " ".join("ok" if x else "MISMATCH" for x in ok)
        print(f"p={p:<3d} D1..D4, Out_I: {flags}   {time.perf_counter() - t0:.2f} s")


if __name__ == "__main__":
    main()
