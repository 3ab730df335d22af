"""Generalized Pauli matrices of prime order n and the monomials P^i Q^j (x) P^k Q^l.

Conventions: P = diag(1, w, ..., w^(n-1)), Q has Q[r, r+1] = 1 (indices mod n),
so that QP = w PQ. Tensor indices are I = i1 * n + i2 with the left factor
varying slowest. A monomial phase * (P^i Q^j (x) P^k Q^l) sends row (r1, r2) to
column (r1 + j, r2 + l) with value phase * w^(i r1 + k r2).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cyclo import CycloMatrix, CycloNumber, _field, conductor_for_prime, root_of_unity
from .errors import NotAMonomial, ParseError
from .zmod import require_prime


def omega_step(n: int) -> int:
    """w_n expressed as a power of w_m, m being the working conductor."""
    return conductor_for_prime(n) // n


def omega(n: int, k: int = 1) -> CycloNumber:
    """w_n ** k inside the working field for order n."""
    return root_of_unity(conductor_for_prime(n), k * omega_step(n))


@lru_cache(maxsize=None)
def build_P(n: int) -> CycloMatrix:
    require_prime(n)
    s = omega_step(n)
    return CycloMatrix.phase_permutation(range(n), [s * r for r in range(n)], conductor_for_prime(n))


@lru_cache(maxsize=None)
def build_Q(n: int) -> CycloMatrix:
    require_prime(n)
    return CycloMatrix.phase_permutation([(r + 1) % n for r in range(n)], [0] * n, conductor_for_prime(n))


@lru_cache(maxsize=None)
def build_I(n: int) -> CycloMatrix:
    return CycloMatrix.identity(n, conductor_for_prime(n))


@lru_cache(maxsize=None)
def generators(n: int) -> tuple[CycloMatrix, CycloMatrix, CycloMatrix, CycloMatrix]:
    """A1 = P (x) I, A2 = Q (x) I, A3 = I (x) P, A4 = I (x) Q."""
    P, Q, I = build_P(n), build_Q(n), build_I(n)
    return P.tensor(I), Q.tensor(I), I.tensor(P), I.tensor(Q)


def commutation_relations(n: int) -> dict[str, bool]:
    """Check the six pairwise relations among A1..A4 as exact matrix identities."""
    A1, A2, A3, A4 = generators(n)
    winv = omega(n, -1)
    return {
        "A1A2 = w^-1 A2A1": A1 @ A2 == (A2 @ A1).scale(winv),
        "A3A4 = w^-1 A4A3": A3 @ A4 == (A4 @ A3).scale(winv),
        "A1A3 = A3A1": A1 @ A3 == A3 @ A1,
        "A1A4 = A4A1": A1 @ A4 == A4 @ A1,
        "A2A3 = A3A2": A2 @ A3 == A3 @ A2,
        "A2A4 = A4A2": A2 @ A4 == A4 @ A2,
    }


@dataclass(frozen=True)
class GradingIndex:
    """Nonzero (i, j, k, l) in Z_n^4 labelling the grading subspace spanned by P^iQ^j (x) P^kQ^l."""

    values: tuple[int, int, int, int]
    n: int

    def __post_init__(self):
        require_prime(self.n)
        if len(self.values) != 4:
            raise ValueError("grading index needs four entries")
        vals = tuple(int(v) % self.n for v in self.values)
        if not any(vals):
            raise ValueError("grading index must be nonzero")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class PauliMonomial:
    phase: CycloNumber
    exponents: tuple[int, int, int, int]
    n: int

    def __post_init__(self):
        require_prime(self.n)
        if self.phase.conductor != conductor_for_prime(self.n):
            raise ValueError("phase lives in the wrong cyclotomic field")
        if self.phase.is_zero():
            raise ValueError("monomial phase must be nonzero")
        if len(self.exponents) != 4:
            raise ValueError("need four exponents")
        object.__setattr__(self, "exponents", tuple(int(e) % self.n for e in self.exponents))

    @classmethod
    def identity(cls, n: int) -> "PauliMonomial":
        return cls(CycloNumber.one(conductor_for_prime(n)), (0, 0, 0, 0), n)

    @classmethod
    def from_exponents(cls, exps, n: int, phase_power: int = 0) -> "PauliMonomial":
        return cls(omega(n, phase_power), tuple(exps), n)

    def to_matrix(self) -> CycloMatrix:
        return monomial_to_matrix(self)

    def __mul__(self, other: "PauliMonomial") -> "PauliMonomial":
        return monomial_mul(self, other)

    def phase_power(self) -> int | None:
        """a with phase == w_n^a, or None when the phase is not an n-th root of unity."""
        for a in range(self.n):
            if self.phase == omega(self.n, a):
                return a
        return None

    def to_text(self) -> str:
        a = self.phase_power()
        if a is None:
            raise ValueError(f"phase {self.phase!r} is not a power of w; no text form")
        i, j, k, l = self.exponents
        return f"w^{a} P^{i} Q^{j} x P^{k} Q^{l}"

    @classmethod
    def from_text(cls, text: str, n: int) -> "PauliMonomial":
        m = _MONO_RE.match(text.strip())
        if not m:
            raise ParseError(f"cannot parse monomial {text!r}")
        a = int(m.group(1) or 0)
        return cls(omega(n, a), tuple(int(m.group(g)) for g in range(2, 6)), n)


_MONO_RE = re.compile(r"^(?:w\^(-?\d+)\s+)?P\^(-?\d+)\s+Q\^(-?\d+)\s+x\s+P\^(-?\d+)\s+Q\^(-?\d+)$")


def _support_pattern(n: int, j: int, l: int) -> np.ndarray:
    r1, r2 = np.divmod(np.arange(n * n), n)
    return ((r1 + j) % n) * n + (r2 + l) % n


def monomial_to_matrix(mono: PauliMonomial) -> CycloMatrix:
    n = mono.n
    i, j, k, l = mono.exponents
    r1, r2 = np.divmod(np.arange(n * n), n)
    exps = omega_step(n) * ((i * r1 + k * r2) % n)
    base = CycloMatrix.phase_permutation(_support_pattern(n, j, l), exps, conductor_for_prime(n))
    return base if mono.phase == 1 else base.scale(mono.phase)


def matrix_to_monomial(M: CycloMatrix, n: int) -> PauliMonomial:
    """Recognize M as phase * P^iQ^j (x) P^kQ^l, or raise NotAMonomial."""
    d = n * n
    if M.shape != (d, d):
        raise ValueError(f"expected a {d}x{d} matrix for n={n}, got {M.shape}")
    if M.conductor != conductor_for_prime(n):
        raise ValueError("matrix lives in the wrong cyclotomic field")
    supp = M.support()
    row0 = np.flatnonzero(supp[0])
    if len(row0) != 1:
        raise NotAMonomial("first row does not have exactly one nonzero entry")
    j, l = divmod(int(row0[0]), n)
    cols = _support_pattern(n, j, l)
    expected = np.zeros((d, d), dtype=bool)
    expected[np.arange(d), cols] = True
    if not np.array_equal(supp, expected):
        raise NotAMonomial("support is not the permutation pattern of a Pauli monomial")

    f = _field(M.conductor)
    step = omega_step(n)
    alpha = np.asarray(M.num[0, cols[0]])
    # numerators of alpha * w_n^t, all over the shared denominator M.den
    table = []
    for t in range(n):
        s = step * t
        shift = np.array([f.red_rows[(a + s) % f.m] for a in range(f.deg)], dtype=object)
        table.append(np.dot(alpha.astype(object), shift))
    table = np.array(table, dtype=object).reshape(n, f.deg)

    vals = np.asarray(M.num[np.arange(d), cols]).astype(object)

    def lookup(row: int) -> int:
        for t in range(n):
            if np.array_equal(vals[row], table[t]):
                return t
        raise NotAMonomial(f"entry in row {row} is not w-power times the leading phase")

    k = lookup(1)       # row (0, 1)
    i = lookup(n)       # row (1, 0)
    r1, r2 = np.divmod(np.arange(d), n)
    want = table[(i * r1 + k * r2) % n]
    if not np.array_equal(vals, want):
        raise NotAMonomial("phase pattern does not match w^(i r1 + k r2)")
    phase = M.entry(0, int(cols[0]))
    return PauliMonomial(phase, (i, j, k, l), n)


def monomial_mul(a: PauliMonomial, b: PauliMonomial) -> PauliMonomial:
    """Product in normal form; reordering Q^j past P^i' contributes w^(j i')."""
    if a.n != b.n:
        raise ValueError("monomials of different order")
    n = a.n
    ia, ja, ka, la = a.exponents
    ib, jb, kb, lb = b.exponents
    phase = a.phase * b.phase * omega(n, ja * ib + la * kb)
    return PauliMonomial(phase, (ia + ib, ja + jb, ka + kb, la + lb), n)
