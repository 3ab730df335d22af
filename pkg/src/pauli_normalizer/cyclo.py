"""Exact arithmetic in the cyclotomic field Q(w_m) and dense matrices over it.

An element is a vector of rational coefficients in the basis 1, w, ..., w^(d-1)
with d = deg(Phi_m), always reduced modulo Phi_m. Scalars store integer
numerators over a common positive denominator in lowest terms, so equality is
plain tuple comparison.

Matrices use the same idea with a numpy array of numerators of shape
(rows, cols, d) and one shared denominator. Products go through
`_exact_matmul`, which uses float64 BLAS only when every partial sum is
provably below 2**53 and otherwise falls back to int64 or Python ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import DivisionByZero, NotInvertible, ParseError
from .zmod import is_prime

_F53 = 1 << 53
_I62 = 1 << 62


# ---------------------------------------------------------------------------
# polynomial helpers (coefficient lists, low degree first)


def _poly_divmod_int(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    # b monic
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    r = a[: len(b) - 1]
    return q, r


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("conductor must be >= 1")
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_poly(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


@dataclass(frozen=True)
class _Field:
    m: int
    deg: int
    phi: tuple[int, ...]
    red: np.ndarray          # (m, deg): canonical coefficients of w^s
    red_rows: tuple[tuple[int, ...], ...]
    rnorm: int               # max column abs-sum of red
    conj: np.ndarray         # (deg, deg): coefficient map of w -> w^-1


@lru_cache(maxsize=None)
def _field(m: int) -> _Field:
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    rows = []
    for s in range(m):
        _, r = _poly_divmod_int([0] * s + [1], list(phi))
        r = r + [0] * (deg - len(r))
        rows.append(tuple(r[:deg]))
    red = np.array(rows, dtype=np.int64).reshape(m, deg)
    conj = np.array([rows[(-a) % m] for a in range(deg)], dtype=np.int64).reshape(deg, deg)
    rnorm = int(np.abs(red).sum(axis=0).max()) if deg else 1
    field = _Field(m, deg, phi, red, tuple(rows), rnorm, conj)
    if is_prime(m):
        # w^m = 1 and the m-th roots sum to zero
        total = np.zeros(deg, dtype=np.int64)
        for s in range(m):
            total += red[s]
        assert not total.any()
        assert rows[0] == tuple([1] + [0] * (deg - 1))
    return field


def degree(m: int) -> int:
    return _field(m).deg


def conductor_for_prime(n: int) -> int:
    """Conductor of the field holding every entry used for Pauli order n.

    Odd primes use m = n. For n = 2 the B1 phase needs a square root of
    w_2 = -1, so the field is Q(i) with m = 4.
    """
    return 4 if n == 2 else n


# ---------------------------------------------------------------------------
# scalars


def _content_gcd(values: Iterable[int], den: int) -> int:
    g = den
    for v in values:
        g = math.gcd(g, v)
        if g == 1:
            break
    return g


class CycloNumber:
    __slots__ = ("num", "den", "conductor")

    def __init__(self, coeffs: Sequence, conductor: int):
        f = _field(conductor)
        if len(coeffs) != f.deg:
            raise ValueError(f"expected {f.deg} coefficients for conductor {conductor}, got {len(coeffs)}")
        fr = [Fraction(c) for c in coeffs]
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in fr), 1)
        self._set(tuple(int(c * den) for c in fr), den, conductor)

    def _set(self, num, den, conductor):
        if den < 0:
            num, den = tuple(-x for x in num), -den
        g = _content_gcd(num, den)
        if g > 1:
            num, den = tuple(x // g for x in num), den // g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "conductor", conductor)

    def __setattr__(self, name, value):
        raise AttributeError("CycloNumber is immutable")

    @classmethod
    def _raw(cls, num, den, conductor) -> "CycloNumber":
        x = object.__new__(cls)
        x._set(tuple(int(v) for v in num), int(den), conductor)
        return x

    @classmethod
    def from_rational(cls, q, conductor: int) -> "CycloNumber":
        q = Fraction(q)
        deg = _field(conductor).deg
        return cls._raw((q.numerator,) + (0,) * (deg - 1), q.denominator, conductor)

    @classmethod
    def zero(cls, conductor: int) -> "CycloNumber":
        return cls.from_rational(0, conductor)

    @classmethod
    def one(cls, conductor: int) -> "CycloNumber":
        return cls.from_rational(1, conductor)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return not self.is_zero()

    def _lift(self, other) -> "CycloNumber":
        if isinstance(other, CycloNumber):
            if other.conductor != self.conductor:
                raise ValueError(f"conductor mismatch: {self.conductor} vs {other.conductor}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.from_rational(other, self.conductor)
        return NotImplemented

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den, self.conductor))

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        d1, d2 = self.den, other.den
        return CycloNumber._raw(
            [a * d2 + b * d1 for a, b in zip(self.num, other.num)], d1 * d2, self.conductor
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber._raw([-a for a in self.num], self.den, self.conductor)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        f = _field(self.conductor)
        prod = [0] * max(2 * f.deg - 1, 1)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(other.num):
                    if b:
                        prod[i + j] += a * b
        out = [0] * f.deg
        for s, c in enumerate(prod):
            if c:
                for k, r in enumerate(f.red_rows[s % f.m]):
                    if r:
                        out[k] += c * r
        return CycloNumber._raw(out, self.den * other.den, self.conductor)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        """Multiplicative inverse via the extended Euclidean algorithm over Q[x]."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        f = _field(self.conductor)
        a = _trim([Fraction(c) for c in self.num])
        b = [Fraction(c) for c in f.phi]
        # invariant: s0 * a == r0  (mod Phi)
        r0, r1 = a, b
        s0, s1 = [Fraction(1)], [Fraction(0)]
        while any(r1):
            q, r = _poly_divmod_q(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        # r0 is a nonzero constant since Phi is irreducible
        c = r0[0]
        inv = [x / c for x in s0]
        _, inv = _poly_divmod_q(inv, b)
        inv = inv + [Fraction(0)] * (f.deg - len(inv))
        # self.num/den is the value; we inverted num, so scale by den
        return CycloNumber([x * self.den for x in inv[: f.deg]], self.conductor)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        base = self if e >= 0 else self.inverse()
        out = CycloNumber.one(self.conductor)
        e = abs(e)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "CycloNumber":
        """Complex conjugate (the Galois map w -> w^-1)."""
        f = _field(self.conductor)
        v = np.array(self.num, dtype=object) @ f.conj.astype(object)
        return CycloNumber._raw(v, self.den, self.conductor)

    def to_text(self) -> str:
        return ",".join(f"{c.numerator}/{c.denominator}" for c in self.coeffs)

    @classmethod
    def from_text(cls, text: str, conductor: int) -> "CycloNumber":
        try:
            return cls([Fraction(t) for t in text.split(",")], conductor)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad cyclotomic entry {text!r}: {exc}") from None

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*w^{k}")
        return f"Cyclo[{self.conductor}](" + (" + ".join(terms) or "0") + ")"


def _trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod_q(a: list, b: list) -> tuple[list, list]:
    a = _trim(a)
    b = _trim(b)
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    a = list(a)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    r = _trim(a[: len(b) - 1] or [Fraction(0)])
    return q, r


def root_of_unity(m: int, k: int) -> CycloNumber:
    """w_m ** k in canonical form."""
    f = _field(m)
    return CycloNumber._raw(f.red_rows[k % m], 1, m)


def cyclo_add(a: CycloNumber, b: CycloNumber) -> CycloNumber:
    return a + b


def cyclo_mul(a: CycloNumber, b: CycloNumber) -> CycloNumber:
    return a * b


def cyclo_inv(a: CycloNumber) -> CycloNumber:
    return a.inverse()


# ---------------------------------------------------------------------------
# exact integer matrix kernels


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(np.max(np.abs(a)))


def _fit(a: np.ndarray) -> np.ndarray:
    """Downcast an object array of ints to int64 when it fits."""
    if a.dtype == object and _maxabs(a) < _I62:
        return a.astype(np.int64)
    return a


def _exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    bound = _maxabs(a) * _maxabs(b) * max(a.shape[1], 1)
    if bound < _F53:
        out = a.astype(np.float64) @ b.astype(np.float64)
        return np.rint(out).astype(np.int64)
    if bound < _I62 and a.dtype != object and b.dtype != object:
        return a @ b
    return np.dot(a.astype(object), b.astype(object))


def _apply_lastaxis(num: np.ndarray, mat: np.ndarray) -> np.ndarray:
    """num[..., a] -> sum_a num[..., a] * mat[a, k], exactly."""
    shape = num.shape
    flat = num.reshape(-1, shape[-1])
    out = _exact_matmul(flat, mat)
    return _fit(out.reshape(shape[:-1] + (mat.shape[1],)))


def _reduce_power(power: np.ndarray, f: _Field, bound: int) -> np.ndarray:
    """power[s, ...] holds coefficients of w^s (s < m); return (..., deg) canonical."""
    m = power.shape[0]
    red = f.red
    if bound * f.rnorm * m >= _I62 or power.dtype == object:
        power = power.astype(object)
        red = red.astype(object)
    out = np.tensordot(power, red[:m], axes=([0], [0]))
    return _fit(out)


# ---------------------------------------------------------------------------
# matrices


class CycloMatrix:
    """Immutable dense matrix over Q(w_m)."""

    __slots__ = ("num", "den", "conductor")

    def __init__(self, num: np.ndarray, den: int, conductor: int):
        f = _field(conductor)
        num = np.asarray(num)
        if num.ndim != 3 or num.shape[2] != f.deg:
            raise ValueError(f"numerator array must have shape (r, c, {f.deg}), got {num.shape}")
        if num.dtype != object:
            num = num.astype(np.int64)
        den = int(den)
        if den == 0:
            raise DivisionByZero("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = den
        if num.size:
            if num.dtype == object:
                g = reduce(math.gcd, (int(x) for x in num.flat), den)
            else:
                g = math.gcd(int(np.gcd.reduce(np.abs(num).ravel())), den)
        if g > 1:
            num = num // g
            den //= g
        num = _fit(num)
        num.setflags(write=False)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "conductor", conductor)

    def __setattr__(self, name, value):
        raise AttributeError("CycloMatrix is immutable")

    # constructors

    @classmethod
    def zeros(cls, rows: int, cols: int, conductor: int) -> "CycloMatrix":
        return cls(np.zeros((rows, cols, degree(conductor)), dtype=np.int64), 1, conductor)

    @classmethod
    def identity(cls, size: int, conductor: int) -> "CycloMatrix":
        return cls.phase_permutation(list(range(size)), [0] * size, conductor)

    @classmethod
    def phase_permutation(cls, cols: Sequence[int], exps: Sequence[int], conductor: int) -> "CycloMatrix":
        """Matrix with entry w_m^exps[r] at (r, cols[r]) and zeros elsewhere."""
        f = _field(conductor)
        d = len(cols)
        num = np.zeros((d, d, f.deg), dtype=np.int64)
        num[np.arange(d), np.asarray(cols, dtype=np.int64)] = f.red[np.asarray(exps, dtype=np.int64) % f.m]
        return cls(num, 1, conductor)

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence], conductor: int) -> "CycloMatrix":
        f = _field(conductor)
        ents = [[e if isinstance(e, CycloNumber) else CycloNumber.from_rational(e, conductor) for e in r] for r in rows]
        for r in ents:
            for e in r:
                if e.conductor != conductor:
                    raise ValueError("conductor mismatch")
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (e.den for r in ents for e in r), 1)
        num = np.empty((len(ents), len(ents[0]), f.deg), dtype=object)
        for i, r in enumerate(ents):
            for j, e in enumerate(r):
                scale = den // e.den
                num[i, j, :] = [x * scale for x in e.num]
        return cls(num, den, conductor)

    # basic access

    @property
    def shape(self) -> tuple[int, int]:
        return self.num.shape[0], self.num.shape[1]

    @property
    def dim(self) -> int:
        r, c = self.shape
        if r != c:
            raise ValueError("non-square matrix has no dim")
        return r

    def entry(self, i: int, j: int) -> CycloNumber:
        return CycloNumber._raw(self.num[i, j], self.den, self.conductor)

    def tolist(self) -> list[list[CycloNumber]]:
        r, c = self.shape
        return [[self.entry(i, j) for j in range(c)] for i in range(r)]

    def support(self) -> np.ndarray:
        """Boolean mask of nonzero entries."""
        return np.any(self.num != 0, axis=2)

    def is_zero(self) -> bool:
        return not self.num.any()

    def __eq__(self, other):
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        return (
            self.conductor == other.conductor
            and self.shape == other.shape
            and self.den == other.den
            and np.array_equal(self.num, other.num)
        )

    def __hash__(self):
        return hash((self.conductor, self.den, self.num.shape, self.num.tobytes() if self.num.dtype != object else tuple(self.num.flat)))

    def __repr__(self):
        r, c = self.shape
        return f"CycloMatrix({r}x{c}, m={self.conductor}, den={self.den})"

    def _check(self, other: "CycloMatrix"):
        if not isinstance(other, CycloMatrix):
            raise TypeError(f"expected CycloMatrix, got {type(other).__name__}")
        if other.conductor != self.conductor:
            raise ValueError(f"conductor mismatch: {self.conductor} vs {other.conductor}")

    # ring operations

    def __add__(self, other: "CycloMatrix") -> "CycloMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        a = self.num.astype(object) * other.den + other.num.astype(object) * self.den
        return CycloMatrix(a, self.den * other.den, self.conductor)

    def __neg__(self) -> "CycloMatrix":
        return CycloMatrix(-self.num, self.den, self.conductor)

    def __sub__(self, other: "CycloMatrix") -> "CycloMatrix":
        return self + (-other)

    def __matmul__(self, other: "CycloMatrix") -> "CycloMatrix":
        self._check(other)
        (r, k), (k2, c) = self.shape, other.shape
        if k != k2:
            raise ValueError(f"dimension mismatch: {self.shape} @ {other.shape}")
        f = _field(self.conductor)
        deg = f.deg
        # all blocks A_a @ B_b in one product: (deg*r, k) @ (k, deg*c)
        a_stack = np.ascontiguousarray(self.num.transpose(2, 0, 1)).reshape(deg * r, k)
        b_cat = np.ascontiguousarray(other.num.transpose(0, 2, 1)).reshape(k, deg * c)
        prod = _exact_matmul(a_stack, b_cat).reshape(deg, r, deg, c)
        bound = _maxabs(self.num) * _maxabs(other.num) * max(k, 1) * deg
        dtype = object if (prod.dtype == object or bound >= _I62) else np.int64
        power = np.zeros((f.m, r, c), dtype=dtype)
        for a in range(deg):
            for b in range(deg):
                power[(a + b) % f.m] += prod[a, :, b, :]
        out = _reduce_power(power, f, bound)
        return CycloMatrix(out, self.den * other.den, self.conductor)

    def scale(self, c) -> "CycloMatrix":
        """Multiply every entry by a scalar (CycloNumber, int or Fraction)."""
        f = _field(self.conductor)
        if not isinstance(c, CycloNumber):
            q = Fraction(c)
            return CycloMatrix(self.num.astype(object) * q.numerator, self.den * q.denominator, self.conductor)
        if c.conductor != self.conductor:
            raise ValueError("conductor mismatch")
        mult = np.zeros((f.deg, f.deg), dtype=object)
        for a in range(f.deg):
            for b, cb in enumerate(c.num):
                if cb:
                    mult[a] += np.array(f.red_rows[(a + b) % f.m], dtype=object) * cb
        return CycloMatrix(_apply_lastaxis(self.num, _fit(mult)), self.den * c.den, self.conductor)

    def __pow__(self, e: int) -> "CycloMatrix":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = CycloMatrix.identity(self.dim, self.conductor)
        while e:
            if e & 1:
                out = out @ base
            e >>= 1
            if e:
                base = base @ base
        return out

    @property
    def T(self) -> "CycloMatrix":
        return CycloMatrix(self.num.transpose(1, 0, 2), self.den, self.conductor)

    def conj(self) -> "CycloMatrix":
        """Entrywise complex conjugate."""
        f = _field(self.conductor)
        return CycloMatrix(_apply_lastaxis(self.num, f.conj), self.den, self.conductor)

    @property
    def H(self) -> "CycloMatrix":
        return self.conj().T

    def tensor(self, other: "CycloMatrix") -> "CycloMatrix":
        """Kronecker product with row index I = i1 * rows(other) + j1."""
        self._check(other)
        f = _field(self.conductor)
        (ra, ca), (rb, cb) = self.shape, other.shape
        bound = _maxabs(self.num) * _maxabs(other.num) * f.deg
        wide = self.num.dtype == object or other.num.dtype == object or bound >= _I62
        a = self.num.astype(object) if wide else self.num
        b = other.num.astype(a.dtype)
        outer = a[:, None, :, None, :, None] * b[None, :, None, :, None, :]
        power = np.zeros((f.m, ra, rb, ca, cb), dtype=outer.dtype)
        for x in range(f.deg):
            for y in range(f.deg):
                power[(x + y) % f.m] += outer[..., x, y]
        out = _reduce_power(power, f, bound).reshape(ra * rb, ca * cb, f.deg)
        return CycloMatrix(out, self.den * other.den, self.conductor)

    def inverse(self) -> "CycloMatrix":
        """Inverse by Gauss-Jordan elimination over Q(w_m)."""
        n = self.dim
        m = self.conductor
        one = CycloNumber.one(m)
        zero = CycloNumber.zero(m)
        a = self.tolist()
        inv = [[one if i == j else zero for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
            if piv is None:
                raise NotInvertible("singular cyclotomic matrix")
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            pinv = a[col][col].inverse()
            a[col] = [x * pinv for x in a[col]]
            inv[col] = [x * pinv for x in inv[col]]
            for r in range(n):
                if r != col and not a[r][col].is_zero():
                    fct = a[r][col]
                    a[r] = [x - fct * y if not y.is_zero() else x for x, y in zip(a[r], a[col])]
                    inv[r] = [x - fct * y if not y.is_zero() else x for x, y in zip(inv[r], inv[col])]
        return CycloMatrix.from_entries(inv, m)

    def rescaled(self) -> tuple["CycloMatrix", Fraction]:
        """Return (s * self, s) with s > 0 rational making the numerators primitive integers."""
        s = Fraction(self.den)
        return CycloMatrix(self.num, 1, self.conductor), s


def cmat_mul(a: CycloMatrix, b: CycloMatrix) -> CycloMatrix:
    return a @ b


def cmat_inv(a: CycloMatrix) -> CycloMatrix:
    return a.inverse()


def cmat_scale(a: CycloMatrix, c) -> CycloMatrix:
    return a.scale(c)


def tensor(a: CycloMatrix, b: CycloMatrix) -> CycloMatrix:
    return a.tensor(b)


# ---------------------------------------------------------------------------
# file format
#
#   n <prime>
#   m <conductor>
#   dim <size>
#   [extra "key value" header lines]
#   then dim lines of dim entries; entry = comma-joined "num/den" coefficients


def write_cyclo_matrix(mat: CycloMatrix, n: int, extra: dict | None = None) -> str:
    r, c = mat.shape
    if r != c:
        raise ValueError("only square matrices are serialized")
    lines = [f"n {n}", f"m {mat.conductor}", f"dim {r}"]
    for key, val in (extra or {}).items():
        lines.append(f"{key} {val}")
    for i in range(r):
        lines.append(" ".join(mat.entry(i, j).to_text() for j in range(c)))
    return "\n".join(lines) + "\n"


def read_cyclo_matrix(text: str) -> tuple[CycloMatrix, int, dict]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    header: dict[str, str] = {}
    body_start = 0
    for idx, ln in enumerate(lines):
        parts = ln.split()
        if len(parts) == 2 and parts[0].isalpha():
            header[parts[0]] = parts[1]
            body_start = idx + 1
        else:
            break
    try:
        n = int(header.pop("n"))
        m = int(header.pop("m"))
        dim = int(header.pop("dim"))
    except (KeyError, ValueError) as exc:
        raise ParseError(f"cyclotomic matrix header incomplete: {exc}") from None
    body = lines[body_start:]
    if len(body) != dim:
        raise ParseError(f"expected {dim} rows, found {len(body)}")
    rows = []
    for ln in body:
        toks = ln.split()
        if len(toks) != dim:
            raise ParseError(f"expected {dim} entries per row, found {len(toks)}")
        rows.append([CycloNumber.from_text(t, m) for t in toks])
    return CycloMatrix.from_entries(rows, m), n, header
