"""Automorphisms of sl(p^2, C) normalizing the tensor Pauli MAD-group.

An AutomorphismRep (B, outer) stands for X -> B^-1 X B, or for
X -> -(B^-1 X B)^T when outer is set. coeff_matrix reads off the 4x4 matrix
over Z_n whose column p holds the exponents of B^-1 A_p B (for outer reps, of
its inverse transpose, which just flips the signs of the P-exponents).

Ad_X Ad_Y = Ad_{YX}, so the word D_t1 ... D_tk lifts to B_tk ... B_t1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .cyclo import CycloMatrix, _field, conductor_for_prime, read_cyclo_matrix, write_cyclo_matrix
from .errors import NotAMonomial, NotInNormalizer, ParseError
from .pauli import (
    GradingIndex,
    PauliMonomial,
    generators,
    matrix_to_monomial,
    monomial_to_matrix,
    omega_step,
)
from .symplectic import GeneratorWord, decompose, outer_diag
from .zmod import ZModMatrix, require_prime


# ---------------------------------------------------------------------------
# B1..B4


def _eps_exp(n: int) -> int:
    """epsilon as a power of w_m: i for n = 2, w^-(n-1)/2 otherwise."""
    if n == 2:
        return 1
    return (-(n - 1) // 2) % n


def _b1_exps(n: int, e: int = 1) -> np.ndarray:
    m = conductor_for_prime(n)
    j = np.arange(n)
    one = j * _eps_exp(n) + omega_step(n) * (j * (j - 1) // 2)
    # B1 (x) I has diagonal entry b_{p1} in row (p1, p2)
    return np.repeat((e * one) % m, n)


def _perm(n: int, f) -> np.ndarray:
    p1, p2 = np.divmod(np.arange(n * n), n)
    c1, c2 = f(p1, p2)
    return (c1 % n) * n + c2 % n


def _sylvester(n: int, sign: int = 1) -> CycloMatrix:
    m = conductor_for_prime(n)
    s = omega_step(n)
    rows = np.zeros((n, n), dtype=np.int64)
    i = np.arange(n)
    rows[:] = sign * s * np.outer(i, i) % m
    return CycloMatrix(_field(m).red[rows], 1, m)


@lru_cache(maxsize=None)
def _token_pair(index: int, e: int, n: int) -> tuple[CycloMatrix, CycloMatrix]:
    """(B_index^e, its inverse) up to a common nonzero scalar, from closed forms."""
    require_prime(n)
    m = conductor_for_prime(n)
    d = n * n
    ident = np.arange(d)
    I_n = CycloMatrix.identity(n, m)
    if index == 1:
        ex = _b1_exps(n, e)
        return (
            CycloMatrix.phase_permutation(ident, ex, m),
            CycloMatrix.phase_permutation(ident, -ex, m),
        )
    if index == 2:
        e %= 4
        fwd, bwd = _sylvester(n, 1), _sylvester(n, -1)
        if e == 0:
            return CycloMatrix.identity(d, m), CycloMatrix.identity(d, m)
        if e == 1:
            return fwd.tensor(I_n), bwd.tensor(I_n).scale(Fraction(1, n))
        if e == 3:
            return bwd.tensor(I_n), fwd.tensor(I_n).scale(Fraction(1, n))
        # (w^{ij})^2 = n R with R the parity permutation i -> -i
        R = CycloMatrix.phase_permutation([(-i) % n for i in range(n)], [0] * n, m).tensor(I_n)
        return R, R
    if index == 3:
        P = CycloMatrix.phase_permutation(_perm(n, lambda a, b: (b, a)), [0] * d, m)
        if e % 2 == 0:
            return CycloMatrix.identity(d, m), CycloMatrix.identity(d, m)
        return P, P
    if index == 4:
        fw = _perm(n, lambda a, b: (a - e * b, b))
        bw = _perm(n, lambda a, b: (a + e * b, b))
        # row p maps to column fw[p]; the inverse permutation maps row fw[p] to p
        return (
            CycloMatrix.phase_permutation(fw, [0] * d, m),
            CycloMatrix.phase_permutation(bw, [0] * d, m),
        )
    raise ValueError(f"generator index must be 1..4, got {index}")


def build_B(index: int, n: int) -> CycloMatrix:
    """The literal p^2 x p^2 matrix B_index."""
    return _token_pair(index, 1, n)[0]


def build_B_inverse(index: int, n: int) -> CycloMatrix:
    return _token_pair(index, 1, n)[1]


# ---------------------------------------------------------------------------
# representation


@dataclass(frozen=True)
class AutomorphismRep:
    matrix: CycloMatrix
    n: int
    outer: bool = False
    # inverse of matrix, possibly off by a nonzero scalar; filled lazily
    _inverse: Optional[CycloMatrix] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        require_prime(self.n)
        d = self.n * self.n
        if self.matrix.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix for n={self.n}, got {self.matrix.shape}")
        if self.matrix.conductor != conductor_for_prime(self.n):
            raise ValueError("matrix lives in the wrong cyclotomic field")

    @classmethod
    def identity(cls, n: int, outer: bool = False) -> "AutomorphismRep":
        I = CycloMatrix.identity(n * n, conductor_for_prime(n))
        return cls(I, n, outer, I)

    @property
    def inverse_matrix(self) -> CycloMatrix:
        if self._inverse is None:
            object.__setattr__(self, "_inverse", self.matrix.inverse())
        return self._inverse

    def compose(self, other: "AutomorphismRep") -> "AutomorphismRep":
        """self o other (apply other first)."""
        if other.n != self.n:
            raise ValueError("reps over different n")
        B1, B1inv = self.matrix, self.inverse_matrix
        if other.outer:
            # Ad_B Out_I = Out_I Ad_{B^-T}
            B1, B1inv = B1inv.T, B1.T
        return AutomorphismRep(
            other.matrix @ B1, self.n, self.outer != other.outer, B1inv @ other.inverse_matrix
        )

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> "AutomorphismRep":
        if self.outer:
            return AutomorphismRep(self.matrix.T, self.n, True, self.inverse_matrix.T)
        return AutomorphismRep(self.inverse_matrix, self.n, False, self.matrix)

    def apply(self, X: CycloMatrix) -> CycloMatrix:
        Y = self.inverse_matrix @ X @ self.matrix
        return -Y.T if self.outer else Y

    def to_text(self) -> str:
        return write_cyclo_matrix(self.matrix, self.n, {"outer": "true" if self.outer else "false"})

    @classmethod
    def from_text(cls, text: str) -> "AutomorphismRep":
        mat, n, extra = read_cyclo_matrix(text)
        flag = extra.get("outer", "false")
        if flag not in ("true", "false"):
            raise ParseError(f"outer flag must be true or false, got {flag!r}")
        if mat.conductor != conductor_for_prime(require_prime(n)):
            raise ParseError(f"conductor {mat.conductor} does not match n={n}")
        return cls(mat, n, flag == "true")


def ad_B(index: int, n: int) -> AutomorphismRep:
    """Ad_{B_index}, carrying the closed-form inverse."""
    B, Binv = _token_pair(index, 1, n)
    return AutomorphismRep(B, n, False, Binv)


def compose_all(reps) -> AutomorphismRep:
    """r1 o r2 o ... o rk."""
    reps = list(reps)
    out = reps[-1]
    for r in reversed(reps[:-1]):
        out = r @ out
    return out


def out_I(n: int) -> AutomorphismRep:
    return AutomorphismRep.identity(n, outer=True)


def apply(rep: AutomorphismRep, X: CycloMatrix) -> CycloMatrix:
    return rep.apply(X)


# ---------------------------------------------------------------------------
# coefficient matrix


def _conjugated_monomial(rep: AutomorphismRep, X: CycloMatrix) -> PauliMonomial:
    Y = rep.inverse_matrix @ X @ rep.matrix
    try:
        return matrix_to_monomial(Y, rep.n)
    except NotAMonomial as exc:
        raise NotInNormalizer(str(exc)) from None


def coeff_matrix(rep: AutomorphismRep) -> ZModMatrix:
    """C(rep): column p is the exponent quadruple of the image of A_p."""
    n = rep.n
    cols = []
    for A in generators(n):
        cols.append(_conjugated_monomial(rep, A).exponents)
    C = ZModMatrix([list(r) for r in zip(*cols)], n)
    if rep.outer:
        # Out_I Ad_X Out_I^-1 = Ad_{X^-T}; for a monomial this negates the P-exponents
        C = outer_diag(n) @ C
    return C


def grading_action(rep: AutomorphismRep, v: GradingIndex) -> GradingIndex:
    """Index of the grading subspace that rep sends the subspace of v to.

    Inner reps act by C v. The transpose in an outer rep sends P^iQ^j to a
    multiple of P^iQ^-j, and with C = diag(-1, 1, -1, 1) C_inner that makes
    the action -C v.
    """
    if v.n != rep.n:
        raise ValueError("index and rep over different n")
    C = coeff_matrix(rep)
    w = C @ ZModMatrix([[x] for x in v.values], rep.n)
    vals = [w[i, 0] for i in range(4)]
    if rep.outer:
        vals = [-x for x in vals]
    return GradingIndex(tuple(vals), rep.n)


def grading_action_direct(rep: AutomorphismRep, v: GradingIndex) -> GradingIndex:
    """Same as grading_action, by conjugating the monomial itself and recognizing the result."""
    X = monomial_to_matrix(PauliMonomial.from_exponents(v.values, rep.n))
    try:
        mono = matrix_to_monomial(rep.apply(X), rep.n)
    except NotAMonomial as exc:
        raise NotInNormalizer(str(exc)) from None
    return GradingIndex(mono.exponents, rep.n)


# ---------------------------------------------------------------------------
# words <-> reps


def lift(word: GeneratorWord, n: int | None = None) -> AutomorphismRep:
    """Rep whose coefficient matrix equals word.evaluate()."""
    n = word.n if n is None else n
    if n != word.n:
        raise ValueError(f"word is over n={word.n}, asked for n={n}")
    d = n * n
    m = conductor_for_prime(n)
    B = CycloMatrix.identity(d, m)
    Binv = B
    for sym, e in word.body().tokens:
        M, Minv = _token_pair(int(sym[1]), e, n) if e >= 0 else _token_pair(int(sym[1]), -e, n)[::-1]
        B, Binv = M @ B, Binv @ Minv
        B, _ = B.rescaled()
        Binv, _ = Binv.rescaled()
    return AutomorphismRep(B, n, word.outer, Binv)


def realize(M: ZModMatrix, outer: bool | None = None) -> AutomorphismRep:
    """One automorphism with coefficient matrix M (a G-coset representative).

    outer picks the coset explicitly; it only matters for n = 2.
    """
    return lift(decompose(M, outer=outer), M.modulus)
