"""Brute-force ground truth for small p: enumeration by the form, BFS closure, group order.

Elements are stored as integer codes (row-major base-p digits), which is
the same information as the digit-string key but cheaper to hash in bulk.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import ParseError, Unsupported
from .symplectic import build_D, form_J, outer_diag
from .zmod import ZModMatrix, require_prime

EXHAUSTIVE_PRIMES = (2, 3)


def _weights(p: int) -> np.ndarray:
    return p ** np.arange(15, -1, -1, dtype=np.int64)


def encode(mats: np.ndarray, p: int) -> np.ndarray:
    """(N, 4, 4) residues -> (N,) integer codes."""
    return mats.reshape(-1, 16).astype(np.int64) @ _weights(p)


def decode(codes: np.ndarray, p: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    digits = (codes[:, None] // _weights(p)[None, :]) % p
    return digits.reshape(-1, 4, 4)


@dataclass(frozen=True)
class GroupTable:
    """Element codes of a matrix group; sign "both" keeps the -J coset separately.

    Keeping the cosets apart matters over F_2, where they coincide as sets of
    matrices but still label different (inner vs outer) automorphism classes.
    """

    p: int
    sign: object  # 1, -1, "both" or None for a BFS closure
    codes: frozenset
    outer_codes: frozenset = frozenset()

    @property
    def size(self) -> int:
        return len(self.codes) + len(self.outer_codes)

    def __len__(self):
        return self.size

    def __contains__(self, M: ZModMatrix) -> bool:
        if M.modulus != self.p or M.shape != (4, 4):
            return False
        c = int(encode(np.array(M.rows), self.p)[0])
        return c in self.codes or c in self.outer_codes

    def array(self, outer: bool = False) -> np.ndarray:
        codes = self.outer_codes if outer else self.codes
        return decode(np.array(sorted(codes), dtype=np.int64), self.p)

    def matrices(self, outer: bool = False) -> Iterator[ZModMatrix]:
        for a in self.array(outer):
            yield ZModMatrix(a.tolist(), self.p)

    def tagged(self) -> Iterator[tuple[bool, ZModMatrix]]:
        """(outer, M) pairs over both cosets."""
        for M in self.matrices():
            yield self.sign == -1, M
        for M in self.matrices(outer=True):
            yield True, M

    def dump(self) -> str:
        """Count and sign headers, then one element per block in the zmod text format.

        For sign "both" the +J coset comes first, len(codes) elements long.
        """
        parts = [f"count {self.size}", f"sign {self.sign}", f"plus {len(self.codes)}"]
        parts += [M.to_text().rstrip("\n") for _, M in self.tagged()]
        return "\n".join(parts) + "\n"

    @classmethod
    def load(cls, text: str) -> "GroupTable":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        try:
            heads = dict(ln.split() for ln in lines[:3])
            count, sign, plus = int(heads["count"]), heads["sign"], int(heads["plus"])
        except (KeyError, ValueError):
            raise ParseError("table dump must start with 'count N', 'sign S', 'plus K'") from None
        body = lines[3:]
        if len(body) != 5 * count:
            raise ParseError(f"expected {count} elements of 5 lines, got {len(body)} lines")
        mats = [ZModMatrix.from_text("\n".join(body[5 * i:5 * i + 5])) for i in range(count)]
        if not mats:
            raise ParseError("empty table")
        p = mats[0].modulus
        codes = [int(c) for c in encode(np.array([m.rows for m in mats]), p)]
        sign = {"1": 1, "-1": -1, "None": None}.get(sign, sign)
        return cls(p, sign, frozenset(codes[:plus]), frozenset(codes[plus:]))


def _all_vectors(p: int) -> np.ndarray:
    return np.array(np.unravel_index(np.arange(p ** 4), (p,) * 4)).T


def enumerate_by_form(p: int, sign=1) -> GroupTable:
    """All M over F_p with M^T J M = sign * J, by extending columns one at a time.

    Columns c1..c4 must satisfy w(c1, c2) = w(c3, c4) = sign and all other
    pairings zero, with w(x, y) = x^T J y.
    """
    require_prime(p)
    if p not in EXHAUSTIVE_PRIMES:
        raise Unsupported(f"exhaustive enumeration only for p in {EXHAUSTIVE_PRIMES}, got {p}")
    if sign == "both":
        plus = enumerate_by_form(p, 1)
        minus = enumerate_by_form(p, -1)
        return GroupTable(p, "both", plus.codes, minus.codes)
    if sign not in (1, -1):
        raise ValueError("sign must be 1, -1 or 'both'")
    V = _all_vectors(p)
    J = np.array(form_J(p).rows)
    F = (V @ J @ V.T) % p
    s = sign % p
    found = []
    for c1 in range(1, len(V)):
        for c2 in np.flatnonzero(F[c1] == s):
            ok12 = (F[c1] == 0) & (F[c2] == 0)
            for c3 in np.flatnonzero(ok12):
                c4s = np.flatnonzero(ok12 & (F[c3] == s))
                if len(c4s):
                    cols = np.stack([np.broadcast_to(V[c1], (len(c4s), 4)),
                                     np.broadcast_to(V[c2], (len(c4s), 4)),
                                     np.broadcast_to(V[c3], (len(c4s), 4)),
                                     V[c4s]], axis=2)
                    found.append(encode(cols, p))
    codes = np.concatenate(found) if found else np.zeros(0, dtype=np.int64)
    return GroupTable(p, sign, frozenset(int(c) for c in codes))


def closure_bfs(generators: Iterable[ZModMatrix], side: str = "left") -> GroupTable:
    """Subgroup generated by the given invertible matrices, by BFS from I."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    p = gens[0].modulus
    G = np.array([g.rows for g in gens], dtype=np.int64)
    start = np.eye(4, dtype=np.int64)[None]
    seen = set(int(c) for c in encode(start, p))
    frontier = start
    while len(frontier):
        if side == "left":
            prods = np.einsum("gij,fjk->gfik", G, frontier) % p
        else:
            prods = np.einsum("fij,gjk->gfik", frontier, G) % p
        prods = prods.reshape(-1, 4, 4)
        codes = encode(prods, p)
        codes, idx = np.unique(codes, return_index=True)
        fresh = np.array([c not in seen for c in codes.tolist()], dtype=bool)
        seen.update(codes[fresh].tolist())
        frontier = prods[idx[fresh]]
    return GroupTable(p, None, frozenset(seen))


def generator_closure(p: int, side: str = "left") -> GroupTable:
    return closure_bfs([build_D(i, p) for i in range(1, 5)], side=side)


def order_formula(p: int) -> int:
    """|Sp(4, F_p)| = p^4 (p^2 - 1)(p^4 - 1)."""
    require_prime(p)
    return p ** 4 * (p ** 2 - 1) * (p ** 4 - 1)


def sl2_order(p: int) -> int:
    """|SL(2, F_p)| by direct 2x2 exhaustion."""
    require_prime(p)
    a = np.array(np.unravel_index(np.arange(p ** 4), (p,) * 4))
    return int(np.count_nonzero((a[0] * a[3] - a[1] * a[2]) % p == 1))


def minus_coset(table: GroupTable) -> GroupTable:
    """diag(-1, 1, -1, 1) times every element of table."""
    D = np.array(outer_diag(table.p).rows, dtype=np.int64)
    arr = (D[None] @ table.array()) % table.p
    return GroupTable(table.p, -1, frozenset(int(c) for c in encode(arr, table.p)))
