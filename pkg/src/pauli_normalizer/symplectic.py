"""Sp(4, F_p), its +-J extension, and constructive decomposition into D1..D4.

The symplectic form is J = I_2 (x) [[0, 1], [-1, 0]]. Decomposition follows
the two-step reduction: Step 1 moves M into S(k) by block-diagonal and
block-antidiagonal factors from H = <D1, D2, D3>, Step 2 writes S(k) through
D4 and H. SL(2) blocks are written over T = [[1, 1], [0, 1]] and
S = [[0, 1], [-1, 0]] by elimination.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NotInGroup, NotInSL2, NotSymplectic, ParseError, ZeroMatrix
from .zmod import ZModMatrix, ZModScalar, require_prime

# ---------------------------------------------------------------------------
# fixed matrices


@lru_cache(maxsize=None)
def form_J(n: int) -> ZModMatrix:
    return ZModMatrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], n)


@lru_cache(maxsize=None)
def outer_diag(n: int) -> ZModMatrix:
    """diag(-1, 1, -1, 1), the coefficient matrix of the transpose automorphism."""
    return ZModMatrix.diag([-1, 1, -1, 1], n)


_D_ROWS = {
    1: [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    2: [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    3: [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
    4: [[1, 0, 0, 0], [0, 1, 0, -1], [1, 0, 1, 0], [0, 0, 0, 1]],
}

# multiplicative orders used to normalize exponents; None means "the prime n"
_D_ORDER = {1: None, 2: 4, 3: 2, 4: None}


@lru_cache(maxsize=None)
def build_D(index: int, n: int) -> ZModMatrix:
    if index not in _D_ROWS:
        raise ValueError(f"generator index must be 1..4, got {index}")
    return ZModMatrix(_D_ROWS[index], require_prime(n))


def build_S(k, n: int | None = None) -> ZModMatrix:
    """The one-parameter family S(k) that Step 1 reduces to."""
    if isinstance(k, ZModScalar):
        n = k.modulus if n is None else n
        k = k.value
    if n is None:
        raise ValueError("modulus required when k is a plain int")
    return ZModMatrix(
        [[1, 0, 1, 0], [0, k, 0, 1 - k], [k - 1, 0, k, 0], [0, -1, 0, 1]], require_prime(n)
    )


def _check4(M: ZModMatrix):
    if M.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {M.shape}")


def is_symplectic(M: ZModMatrix) -> int | None:
    """+1 if M^T J M = J, -1 if M^T J M = -J, None otherwise."""
    _check4(M)
    J = form_J(M.modulus)
    form = M.T @ J @ M
    if form == J:
        return 1
    if form == -J:
        return -1
    return None


def six_residuals(M: ZModMatrix) -> tuple[int, ...]:
    """Left side minus right side of the six membership congruences, mod n."""
    _check4(M)
    n = M.modulus
    # a_ij with 1-based indices, as the congruences are usually written
    (a11, a12, a13, a14), (a21, a22, a23, a24), (a31, a32, a33, a34), (a41, a42, a43, a44) = M.rows
    lhs = (
        a11 * a22 - a21 * a12 + a31 * a42 - a41 * a32,
        a13 * a24 - a14 * a23 + a33 * a44 - a34 * a43,
        a11 * a23 - a13 * a21 + a31 * a43 - a33 * a41,
        a11 * a24 - a14 * a21 + a31 * a44 - a34 * a41,
        a12 * a23 - a13 * a22 + a32 * a43 - a33 * a42,
        a12 * a24 - a14 * a22 + a32 * a44 - a34 * a42,
    )
    rhs = (1, 1, 0, 0, 0, 0)
    return tuple((x - y) % n for x, y in zip(lhs, rhs))


def six_equations(M: ZModMatrix) -> bool:
    return not any(six_residuals(M))


# ---------------------------------------------------------------------------
# SL(2) words over T and S


def _T(n, x=1) -> ZModMatrix:
    return ZModMatrix([[1, x], [0, 1]], n)


def _S(n) -> ZModMatrix:
    return ZModMatrix([[0, 1], [-1, 0]], n)


def _sl2_normalize(sym: str, e: int, n: int) -> int:
    if sym == "T":
        return e % n
    e %= 4
    return -1 if e == 3 else e


def _merge(tokens: Iterable[tuple[str, int]], norm) -> list[tuple[str, int]]:
    out: list[tuple[str, int]] = []
    for sym, e in tokens:
        if out and out[-1][0] == sym:
            e = e + out.pop()[1]
        e = norm(sym, e)
        if e:
            out.append((sym, e))
    return out


def sl2_word(A: ZModMatrix) -> list[tuple[str, int]]:
    """Write A in SL(2, F_n) as a product of powers of T and S.

    Reduces A to the identity with left multiplications by T^x (row1 += x row2)
    and S, then returns the record with every step inverted. Tokens are (symbol, exponent).
    """
    n = A.modulus
    if A.shape != (2, 2):
        raise ValueError("sl2_word needs a 2x2 matrix")
    if A.det() != 1:
        raise NotInSL2(f"determinant {A.det().value} != 1")
    if A[1, 0] == 0 and A[0, 0] == 1:
        # already T^b
        return [("T", A[0, 1])] if A[0, 1] else []
    ops: list[tuple[str, int]] = []
    cur = A

    def apply(sym, e):
        nonlocal cur
        mat = _T(n, e) if sym == "T" else _S(n) ** e
        cur = mat @ cur
        ops.append((sym, e))

    a, c = cur[0, 0], cur[1, 0]
    if c == 0:
        apply("S", 1)
        a, c = cur[0, 0], cur[1, 0]
    if a != 1:
        apply("T", (1 - a) * pow(c, -1, n) % n)
    if cur[1, 0] != 0:
        c = cur[1, 0]
        apply("S", 1)
        apply("T", c)
        apply("S", -1)
    b = cur[0, 1]
    if b:
        apply("T", -b % n)
    assert cur == ZModMatrix.identity(2, n)
    # L_k ... L_1 A = I, so A = L_1^-1 ... L_k^-1
    inverted = [(sym, -e) for sym, e in ops]
    return _merge(inverted, lambda s, e: _sl2_normalize(s, e, n))


def evaluate_sl2_word(word: Sequence[tuple[str, int]], n: int) -> ZModMatrix:
    out = ZModMatrix.identity(2, n)
    for sym, e in word:
        out = out @ (_T(n, e) if sym == "T" else _S(n) ** e)
    return out


def format_sl2_word(word: Sequence[tuple[str, int]]) -> str:
    return " ".join(sym if e == 1 else f"{sym}^{e}" for sym, e in word)


# ---------------------------------------------------------------------------
# generator words

_TOKEN_RE = re.compile(r"^(OUT|D[1-4])(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class GeneratorWord:
    """Product of D1..D4 powers, optionally led by OUT = diag(-1, 1, -1, 1).

    Tokens are (name, exponent) pairs; evaluation multiplies left to right.
    """

    tokens: tuple[tuple[str, int], ...]
    n: int

    def __post_init__(self):
        require_prime(self.n)
        toks = tuple((str(s), int(e)) for s, e in self.tokens)
        for pos, (sym, e) in enumerate(toks):
            if sym == "OUT":
                if pos != 0 or e != 1:
                    raise ValueError("OUT may only appear once, as the leading token")
            elif sym not in ("D1", "D2", "D3", "D4"):
                raise ValueError(f"unknown token {sym!r}")
        object.__setattr__(self, "tokens", toks)

    @classmethod
    def empty(cls, n: int) -> "GeneratorWord":
        return cls((), n)

    @property
    def outer(self) -> bool:
        return bool(self.tokens) and self.tokens[0][0] == "OUT"

    def body(self) -> "GeneratorWord":
        """The word without its OUT prefix."""
        return GeneratorWord(self.tokens[1:] if self.outer else self.tokens, self.n)

    def __len__(self):
        return len(self.tokens)

    def __add__(self, other: "GeneratorWord") -> "GeneratorWord":
        if other.n != self.n:
            raise ValueError("words over different moduli")
        return GeneratorWord(self.tokens + other.tokens, self.n)

    def length(self) -> int:
        """Number of generator letters with exponents expanded."""
        return sum(abs(e) for _, e in self.tokens)

    def simplified(self) -> "GeneratorWord":
        n = self.n
        head = self.tokens[:1] if self.outer else ()
        body = self.tokens[len(head):]

        def norm(sym, e):
            order = _D_ORDER[int(sym[1])] or n
            e %= order
            if order == 4 and e == 3:
                return -1
            return e

        return GeneratorWord(head + tuple(_merge(body, norm)), n)

    def inverse(self) -> "GeneratorWord":
        if self.outer:
            raise ValueError("inverse of an OUT-led word is not a GeneratorWord")
        return GeneratorWord(tuple((s, -e) for s, e in reversed(self.tokens)), self.n).simplified()

    def evaluate(self) -> ZModMatrix:
        n = self.n
        out = ZModMatrix.identity(4, n)
        for sym, e in self.tokens:
            if sym == "OUT":
                out = out @ outer_diag(n)
            else:
                out = out @ (build_D(int(sym[1]), n) ** e)
        return out

    def expanded(self) -> list[str]:
        """Letters with every exponent written out as repeats of D or D^-1."""
        letters = []
        for sym, e in self.tokens:
            letters += [sym if e > 0 else f"{sym}^-1"] * abs(e)
        return letters

    def to_text(self) -> str:
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in self.tokens)

    @classmethod
    def from_text(cls, text: str, n: int) -> "GeneratorWord":
        toks = []
        for raw in text.split():
            m = _TOKEN_RE.match(raw)
            if not m:
                raise ParseError(f"bad word token {raw!r}")
            e = int(m.group(2)) if m.group(2) is not None else 1
            toks.append((m.group(1), e))
        try:
            return cls(tuple(toks), n)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def __str__(self):
        return self.to_text() or "<identity>"


def random_word(n: int, length: int, rng: random.Random) -> GeneratorWord:
    toks = []
    for _ in range(length):
        idx = rng.randint(1, 4)
        order = _D_ORDER[idx] or n
        toks.append((f"D{idx}", rng.randrange(1, order) if order > 1 else 1))
    return GeneratorWord(tuple(toks), n)


def random_symplectic(n: int, rng: random.Random, length: int = 40, extended: bool = False) -> ZModMatrix:
    """Random element of Sp(4, F_n) as an evaluated random word; optionally in the -J coset too."""
    M = random_word(n, length, rng).evaluate()
    if extended and rng.random() < 0.5:
        M = outer_diag(n) @ M
    return M


# ---------------------------------------------------------------------------
# H = <D1, D2, D3>


def h_word(A: ZModMatrix, B: ZModMatrix, swapped: bool = False) -> GeneratorWord:
    """Word for the block matrix A (+) B, followed by D3 when swapped.

    D3 (B (+) I) D3 = I (+) B and (A (+) B) D3 = [[0, A], [B, 0]].
    """
    n = A.modulus
    sub = {"T": "D1", "S": "D2"}
    top = [(sub[s], e) for s, e in sl2_word(A)]
    bottom = [(sub[s], e) for s, e in sl2_word(B)]
    toks = list(top)
    if bottom:
        toks += [("D3", 1)] + bottom + [("D3", 1)]
    if swapped:
        toks.append(("D3", 1))
    return GeneratorWord(tuple(toks), n).simplified()


# ---------------------------------------------------------------------------
# the 2x2 reduction lemma


def lemma_bcde(A: ZModMatrix, side: str) -> tuple[ZModMatrix, ZModMatrix]:
    """SL(2) factors (L, R) with L A R = diag(1, k) (side "i") or diag(k, 1) (side "ii"), k = det A.

    For k != 0 the right factor is the identity. When the entry needed as a
    pivot is zero, A is replaced by A S, S A or S A S, whichever comes first
    with a nonzero pivot (for k != 0 only S A is used, keeping R = I).
    """
    if side not in ("i", "ii"):
        raise ValueError("side must be 'i' or 'ii'")
    if A.shape != (2, 2):
        raise ValueError("lemma_bcde needs a 2x2 matrix")
    if A.is_zero():
        raise ZeroMatrix("lemma_bcde needs a nonzero matrix")
    n = A.modulus
    I = ZModMatrix.identity(2, n)
    S = _S(n)
    k = A.det().value

    def M2(a, b, c, d):
        return ZModMatrix([[a, b], [c, d]], n)

    def inv(x):
        return pow(x, -1, n)

    if k:
        if side == "ii":
            B, _ = lemma_bcde(A, "i")
            L, R = M2(k, 0, 0, inv(k)) @ B, I
        else:
            pre = I
            if A[0, 0] == 0:
                pre = S  # S A has top-left entry c, nonzero since det = -bc != 0
            X = pre @ A
            a, b, c = X[0, 0], X[0, 1], X[1, 0]
            ia = inv(a)
            B = M2(1, -b * ia * inv(k), 0, 1) @ M2(1, 0, -a * c, 1) @ M2(ia, 0, 0, a)
            L, R = B @ pre, I
    else:
        pivot = (0, 0) if side == "i" else (1, 1)
        candidates = [(I, I), (I, S), (S, I), (S, S)]
        for pre, post in candidates:
            X = pre @ A @ post
            if X[pivot]:
                break
        a, b, c, d = X[0, 0], X[0, 1], X[1, 0], X[1, 1]
        if side == "i":
            ia = inv(a)
            Lx = M2(1, 0, -a * c, 1) @ M2(ia, 0, 0, a)
            Rx = M2(1, -ia * b, 0, 1)
        else:
            id_ = inv(d)
            Lx = M2(1, -b * d, 0, 1) @ M2(d, 0, 0, id_)
            Rx = M2(1, 0, -c * id_, 1)
        L, R = Lx @ pre, post @ Rx

    target = M2(1, 0, 0, k) if side == "i" else M2(k, 0, 0, 1)
    assert L @ A @ R == target and L.det() == 1 and R.det() == 1
    return L, R


# ---------------------------------------------------------------------------
# Step 1 and Step 2


def step1_reduce(M: ZModMatrix) -> tuple[GeneratorWord, GeneratorWord, ZModScalar]:
    """Words G1, G2 and k = det(M22) with G1 M G2 = S(k).

    G1 and G2 lie in H whenever both right-hand blocks M12, M22 are nonzero.
    Otherwise M is first multiplied on the left by D4, which makes both
    blocks nonzero, and G1 carries that trailing D4.
    """
    _check4(M)
    if is_symplectic(M) != 1:
        raise NotSymplectic("step1_reduce needs an element of Sp(4)")
    n = M.modulus
    if M.block(0, 1).is_zero() or M.block(1, 1).is_zero():
        G1, G2, k = step1_reduce(build_D(4, n) @ M)
        return (G1 + GeneratorWord((("D4", 1),), n)).simplified(), G2, k

    M12, M22 = M.block(0, 1), M.block(1, 1)
    k = M22.det()
    if k:
        B, R = lemma_bcde(M12, "i")
        D, _ = lemma_bcde(M22 @ R, "ii")
    else:
        D, R = lemma_bcde(M22, "ii")
        B, _ = lemma_bcde(M12 @ R, "i")
    I2 = ZModMatrix.identity(2, n)
    F1 = B.direct_sum(D)
    Mt = F1 @ M @ I2.direct_sum(R)
    N = ZModMatrix([[Mt[0, 0], Mt[0, 1]], [-Mt[3, 0], -Mt[3, 1]]], n)
    assert N.det() == 1
    Ninv = N.inv()
    G2m = Ninv.direct_sum(R)
    assert F1 @ M @ G2m == build_S(k)
    return h_word(B, D), h_word(Ninv, R), k


@lru_cache(maxsize=None)
def _j_words(n: int) -> tuple[GeneratorWord, GeneratorWord]:
    S = _S(n)
    Jw = h_word(S, S)
    return Jw, Jw.inverse()


def step2_sk_word(k) -> GeneratorWord:
    """Word for S(k) = J^T (D4^(1-k))^T J D4^T, using D4^T = D3 D4 D3."""
    if not isinstance(k, ZModScalar):
        raise TypeError("k must be a ZModScalar")
    n = k.modulus
    Jw, JTw = _j_words(n)
    d4t_pow = GeneratorWord((("D3", 1), ("D4", (1 - k.value) % n), ("D3", 1)), n)
    d4t = GeneratorWord((("D3", 1), ("D4", 1), ("D3", 1)), n)
    return (JTw + d4t_pow + Jw + d4t).simplified()


def _h_element(M: ZModMatrix) -> GeneratorWord | None:
    """Direct word when M is block diagonal or block antidiagonal."""
    if M.block(0, 1).is_zero() and M.block(1, 0).is_zero():
        return h_word(M.block(0, 0), M.block(1, 1))
    if M.block(0, 0).is_zero() and M.block(1, 1).is_zero():
        return h_word(M.block(0, 1), M.block(1, 0), swapped=True)
    return None


def decompose(M: ZModMatrix, outer: bool | None = None) -> GeneratorWord:
    """Word over D1..D4 (and a leading OUT for the -J coset) evaluating to M.

    outer forces the coset. Over F_2 the two cosets are the same set of
    matrices (-J = J), so there the caller picks which one it means.
    """
    _check4(M)
    sign = is_symplectic(M)
    if sign is None:
        raise NotInGroup("matrix satisfies neither X^T J X = J nor = -J")
    n = M.modulus
    if outer is None:
        outer = sign == -1
    elif outer != (sign == -1) and n != 2:
        raise NotInGroup(f"matrix has sign {sign:+d}, incompatible with outer={outer}")
    if outer:
        rest = decompose(outer_diag(n) @ M, outer=False)
        return GeneratorWord((("OUT", 1),) + rest.tokens, n)
    direct = _h_element(M)
    if direct is not None:
        return direct
    G1, G2, k = step1_reduce(M)
    return (G1.inverse() + step2_sk_word(k) + G2.inverse()).simplified()
