"""Residues mod n and small dense matrices over Z_n.

Matrices require a prime modulus (elimination needs a field). The scalar
ring ZModScalar accepts any positive modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NotInvertible, NotPrime, ParseError


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_prime(n: int) -> int:
    if not isinstance(n, int) or not is_prime(n):
        raise NotPrime(f"modulus must be prime, got {n!r}")
    return n


@dataclass(frozen=True)
class ZModScalar:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, ZModScalar):
            if other.modulus != self.modulus:
                raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ZModScalar(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ZModScalar(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ZModScalar(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ZModScalar(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ZModScalar(-self.value, self.modulus)

    def __eq__(self, other):
        if isinstance(other, ZModScalar):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def inverse(self) -> "ZModScalar":
        try:
            return ZModScalar(pow(self.value, -1, self.modulus), self.modulus)
        except ValueError:
            raise NotInvertible(f"{self.value} is not a unit mod {self.modulus}") from None

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


class ZModMatrix:
    """Immutable dense matrix over F_p, entries stored as ints in [0, p)."""

    __slots__ = ("rows", "modulus", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], modulus: int):
        require_prime(modulus)
        rows = tuple(tuple(int(x) % modulus for x in r) for r in rows)
        if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
            raise ValueError("matrix rows must be non-empty and of equal length")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ZModMatrix is immutable")

    @classmethod
    def _raw(cls, rows, modulus):
        # trusted constructor: rows already reduced tuples
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "modulus", modulus)
        object.__setattr__(m, "_hash", None)
        return m

    @classmethod
    def identity(cls, size: int, modulus: int) -> "ZModMatrix":
        return cls([[int(i == j) for j in range(size)] for i in range(size)], modulus)

    @classmethod
    def zeros(cls, r: int, c: int, modulus: int) -> "ZModMatrix":
        return cls([[0] * c for _ in range(r)], modulus)

    @classmethod
    def diag(cls, values: Sequence[int], modulus: int) -> "ZModMatrix":
        k = len(values)
        return cls([[values[i] if i == j else 0 for j in range(k)] for i in range(k)], modulus)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def signed(self) -> list[list[int]]:
        """Entries as balanced residues in (-p/2, p/2], for display."""
        p = self.modulus
        return [[x - p if x > p // 2 else x for x in r] for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, ZModMatrix):
            return NotImplemented
        return self.modulus == other.modulus and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.rows, self.modulus)))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"ZModMatrix([{body}], p={self.modulus})"

    def key(self) -> str:
        """Row-major digit string; canonical and hashable."""
        width = len(str(self.modulus - 1))
        return "".join(str(x).zfill(width) for r in self.rows for x in r)

    def _check_same(self, other: "ZModMatrix"):
        if not isinstance(other, ZModMatrix):
            raise TypeError(f"expected ZModMatrix, got {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __matmul__(self, other: "ZModMatrix") -> "ZModMatrix":
        self._check_same(other)
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"dimension mismatch: {self.shape} @ {other.shape}")
        p = self.modulus
        cols = list(zip(*other.rows))
        rows = tuple(
            tuple(sum(a * b for a, b in zip(r, c)) % p for c in cols) for r in self.rows
        )
        return ZModMatrix._raw(rows, p)

    def __add__(self, other: "ZModMatrix") -> "ZModMatrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise ValueError("dimension mismatch")
        p = self.modulus
        return ZModMatrix._raw(
            tuple(tuple((a + b) % p for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), p
        )

    def __neg__(self) -> "ZModMatrix":
        p = self.modulus
        return ZModMatrix._raw(tuple(tuple(-a % p for a in r) for r in self.rows), p)

    def __sub__(self, other: "ZModMatrix") -> "ZModMatrix":
        return self + (-other)

    def scale(self, k: int) -> "ZModMatrix":
        p = self.modulus
        k = int(k)
        return ZModMatrix._raw(tuple(tuple(a * k % p for a in r) for r in self.rows), p)

    def __pow__(self, e: int) -> "ZModMatrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        base = self if e >= 0 else self.inv()
        e = abs(e)
        out = ZModMatrix.identity(self.shape[0], self.modulus)
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    @property
    def T(self) -> "ZModMatrix":
        return ZModMatrix._raw(tuple(zip(*self.rows)), self.modulus)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def block(self, i: int, j: int, size: int = 2) -> "ZModMatrix":
        """The (i, j) block of a matrix cut into size x size blocks."""
        rows = tuple(r[j * size:(j + 1) * size] for r in self.rows[i * size:(i + 1) * size])
        return ZModMatrix._raw(rows, self.modulus)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["ZModMatrix"]]) -> "ZModMatrix":
        p = blocks[0][0].modulus
        rows = []
        for brow in blocks:
            for k in range(brow[0].shape[0]):
                rows.append(tuple(x for b in brow for x in b.rows[k]))
        return cls._raw(tuple(rows), p)

    def direct_sum(self, other: "ZModMatrix") -> "ZModMatrix":
        self._check_same(other)
        (a, b), (c, d) = self.shape, other.shape
        return ZModMatrix.from_blocks(
            [
                [self, ZModMatrix.zeros(a, d, self.modulus)],
                [ZModMatrix.zeros(c, b, self.modulus), other],
            ]
        )

    def _eliminate(self, augment: bool):
        # Gauss-Jordan over F_p with first-nonzero pivoting.
        if not self.is_square:
            raise ValueError(f"square matrix required, got shape {self.shape}")
        p = self.modulus
        n = self.shape[0]
        a = [list(r) + ([int(i == j) for j in range(n)] if augment else []) for i, r in enumerate(self.rows)]
        det = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                return 0, None
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            pv = a[col][col]
            det = det * pv % p
            inv = pow(pv, -1, p)
            a[col] = [x * inv % p for x in a[col]]
            start = 0 if augment else col + 1
            for r in range(start, n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
        inverse = [row[n:] for row in a] if augment else None
        return det % p, inverse

    def det(self) -> ZModScalar:
        d, _ = self._eliminate(augment=False)
        return ZModScalar(d, self.modulus)

    def inv(self) -> "ZModMatrix":
        d, inverse = self._eliminate(augment=True)
        if d == 0:
            raise NotInvertible("singular matrix")
        return ZModMatrix(inverse, self.modulus)

    # text format: "p <prime>" header then one line per row

    def to_text(self) -> str:
        lines = [f"p {self.modulus}"]
        lines += [" ".join(str(x) for x in r) for r in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ZModMatrix":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ParseError("empty matrix file")
        head = lines[0].split()
        if len(head) != 2 or head[0] != "p":
            raise ParseError(f"expected header 'p <prime>', got {lines[0]!r}")
        try:
            p = int(head[1])
            rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ParseError("ragged or empty matrix body")
        return cls(rows, require_prime(p))


def mat_mul(a: ZModMatrix, b: ZModMatrix) -> ZModMatrix:
    return a @ b


def mat_det(a: ZModMatrix) -> ZModScalar:
    return a.det()


def mat_inv(a: ZModMatrix) -> ZModMatrix:
    return a.inv()
