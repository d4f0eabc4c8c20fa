"""Exact linear algebra over the rationals or a prime field.

Matrices are dense (numpy ``object`` arrays holding exact scalars), but row
reduction runs on sparse rows so that the large, permutation-like constraint
systems produced by tensor powers stay cheap.  Pivoting is always on the first
nonzero column, which makes every basis returned here reproducible.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInput, ShapeMismatch

__all__ = [
    "QQ", "RationalField", "PrimeField", "Fp", "parse_field",
    "Matrix", "Kernel", "rref", "nullspace", "kernel", "rank", "solve",
    "invert", "kron", "apply_to_axis",
]


# ---------------------------------------------------------------- fields

class RationalField:
    name = "q"
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, bool):
            raise InvalidInput(f"not a scalar: {x!r}")
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            try:
                return Fraction(x.strip())
            except (ValueError, ZeroDivisionError):
                raise InvalidInput(f"not a rational scalar: {x!r}") from None
        if isinstance(x, Fp):
            raise InvalidInput("prime-field residue used over Q")
        raise InvalidInput(f"not a scalar: {x!r}")

    def format(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class Fp:
    """Residue modulo a prime, always stored in canonical form ``0 <= v < p``."""
    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixed prime fields")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Fp(other, self.p) / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    def __init__(self, p: int):
        if not _is_prime(p):
            raise InvalidInput(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"p:{p}"
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise InvalidInput("residue from a different prime field")
            return x
        if isinstance(x, bool):
            raise InvalidInput(f"not a scalar: {x!r}")
        if isinstance(x, (int, Fraction, str)):
            try:
                q = Fraction(x.strip()) if isinstance(x, str) else Fraction(x)
            except (ValueError, ZeroDivisionError):
                raise InvalidInput(f"not a scalar: {x!r}") from None
            if q.denominator % self.p == 0:
                raise InvalidInput(f"{x!r} has no image in GF({self.p})")
            return Fp(q.numerator, self.p) / q.denominator
        raise InvalidInput(f"not a scalar: {x!r}")

    def format(self, x) -> str:
        return str(x.v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def parse_field(spec: str):
    """``"q"`` for the rationals, ``"p:<prime>"`` for a prime field."""
    if spec == "q":
        return QQ
    if spec.startswith("p:"):
        try:
            p = int(spec[2:])
        except ValueError:
            raise InvalidInput(f"bad field spec {spec!r}") from None
        return PrimeField(p)
    raise InvalidInput(f"bad field spec {spec!r}")


# ---------------------------------------------------------------- matrices

def _zeros(field, shape):
    a = np.empty(shape, dtype=object)
    a.fill(field.zero)
    return a


class Matrix:
    """Dense exact matrix; entries are normalized field elements."""
    __slots__ = ("field", "a")

    def __init__(self, field, a: np.ndarray):
        if a.ndim != 2:
            raise ShapeMismatch("matrix data must be two-dimensional")
        self.field = field
        self.a = a

    # construction
    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        return cls(field, _zeros(field, (rows, cols)))

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.a[i, i] = field.one
        return m

    @classmethod
    def from_rows(cls, field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ShapeMismatch("ragged matrix rows")
        m = cls.zeros(field, len(rows), cols)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                m.a[i, j] = field(x)
        return m

    @classmethod
    def column(cls, field, entries: Sequence) -> "Matrix":
        return cls.from_rows(field, [[x] for x in entries], cols=1)

    @classmethod
    def permutation(cls, field, perm: Sequence[int]) -> "Matrix":
        """Matrix sending basis vector ``j`` to basis vector ``perm[j]``."""
        n = len(perm)
        m = cls.zeros(field, n, n)
        for j, i in enumerate(perm):
            m.a[i, j] = field.one
        return m

    # shape
    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    def __getitem__(self, idx):
        return self.a[idx]

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.a.copy())

    # arithmetic
    def _check_same(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if self.shape != other.shape:
            raise ShapeMismatch(f"shapes {self.shape} and {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.field, self.a + other.a)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.field, self.a - other.a)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, -self.a)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, self.a * c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = _zeros(self.field, (self.rows, other.cols))
        b = other.a
        for i, k in self.nonzeros():
            out[i, :] += self.a[i, k] * b[k, :]
        return Matrix(self.field, out)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.a.T.copy())

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self.a == other.a))

    __hash__ = None

    def is_zero(self) -> bool:
        return not bool(np.any(self.a != 0))

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.field, self.rows)

    def nonzeros(self) -> list[tuple[int, int]]:
        if self.a.size == 0:
            return []
        ii, jj = np.nonzero(self.a != 0)
        return list(zip(ii.tolist(), jj.tolist()))

    def sparse_rows(self) -> list[dict]:
        out = [dict() for _ in range(self.rows)]
        for i, j in self.nonzeros():
            out[i][j] = self.a[i, j]
        return out

    def sparse_cols(self) -> list[dict]:
        out = [dict() for _ in range(self.cols)]
        for i, j in self.nonzeros():
            out[j][i] = self.a[i, j]
        return out

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.a]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.a)
        return f"Matrix[{self.rows}x{self.cols}]({body})"

    # convenience wrappers
    def kron(self, other: "Matrix") -> "Matrix":
        return kron(self, other)

    def rank(self) -> int:
        return rank(self)

    def nullspace(self) -> "Matrix":
        return nullspace(self)

    def inverse(self) -> "Matrix | None":
        return invert(self)


# ---------------------------------------------------------------- elimination

def _drop(row: dict, c):
    row.pop(c, None)


def rref(rows: Iterable[dict], field) -> dict[int, dict]:
    """Reduced row echelon form of sparse rows.

    Returns ``{pivot_col: row}`` where each row has a 1 in its pivot column and
    no entries in any other pivot column.
    """
    zero = field.zero
    piv: dict[int, dict] = {}
    for src in rows:
        r = {c: v for c, v in src.items() if v != 0}
        heap = list(r)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            v = r.get(c)
            if v is None:
                continue
            prow = piv.get(c)
            if prow is None:
                inv = field.one / v
                piv[c] = {cc: vv * inv for cc, vv in r.items()}
                break
            for cc, pv in prow.items():
                new = r.get(cc, zero) - v * pv
                if new == 0:
                    _drop(r, cc)
                else:
                    if cc not in r:
                        heapq.heappush(heap, cc)
                    r[cc] = new
    # back substitution, largest pivot first
    done: dict[int, dict] = {}
    for c in sorted(piv, reverse=True):
        r = piv[c]
        for cc in [k for k in r if k != c and k in done]:
            f = r.get(cc)
            if f is None:
                continue
            for k, pv in done[cc].items():
                new = r.get(k, zero) - f * pv
                if new == 0:
                    _drop(r, k)
                else:
                    r[k] = new
        done[c] = r
    return dict(sorted(done.items()))


class Kernel:
    """Solution space of a homogeneous system, kept in RREF form.

    Basis vector number ``i`` is 1 at free column ``free[i]``, 0 at the other
    free columns; so coordinates of a kernel vector are its free entries.
    """

    def __init__(self, field, ncols: int, pivots: dict[int, dict]):
        self.field = field
        self.ncols = ncols
        self.pivots = pivots
        self.free = [c for c in range(ncols) if c not in pivots]
        self._free_pos = {c: i for i, c in enumerate(self.free)}

    @property
    def dim(self) -> int:
        return len(self.free)

    def basis_vector(self, i: int) -> np.ndarray:
        f = self.free[i]
        v = _zeros(self.field, (self.ncols,))
        v[f] = self.field.one
        for c, row in self.pivots.items():
            x = row.get(f)
            if x is not None:
                v[c] = -x
        return v

    def basis_matrix(self) -> Matrix:
        m = _zeros(self.field, (self.ncols, self.dim))
        for i, f in enumerate(self.free):
            m[f, i] = self.field.one
        for c, row in self.pivots.items():
            for f, x in row.items():
                if f != c:
                    m[c, self._free_pos[f]] = -x
        return Matrix(self.field, m)

    def combine(self, coords: Sequence) -> np.ndarray:
        v = _zeros(self.field, (self.ncols,))
        for i, f in enumerate(self.free):
            v[f] = coords[i]
        for c, row in self.pivots.items():
            s = self.field.zero
            for f, x in row.items():
                if f != c:
                    s = s - x * v[f]
            v[c] = s
        return v

    def contains(self, v: np.ndarray) -> bool:
        for c, row in self.pivots.items():
            s = v[c]
            for f, x in row.items():
                if f != c:
                    s = s + x * v[f]
            if s != 0:
                return False
        return True

    def coords(self, v: np.ndarray) -> list | None:
        """Coordinates of ``v`` in the basis, or None if ``v`` is not in the space."""
        v = np.asarray(v, dtype=object).reshape(-1)
        if v.shape[0] != self.ncols:
            raise ShapeMismatch("vector length does not match the ambient space")
        if not self.contains(v):
            return None
        return [v[f] for f in self.free]


def kernel(rows: Iterable[dict], ncols: int, field) -> Kernel:
    return Kernel(field, ncols, rref(rows, field))


def nullspace(m: Matrix) -> Matrix:
    """Basis of ``{x : m x = 0}`` as the columns of a matrix."""
    return kernel(m.sparse_rows(), m.cols, m.field).basis_matrix()


def rank(m: Matrix) -> int:
    return len(rref(m.sparse_rows(), m.field))


def solve(m: Matrix, b) -> np.ndarray | None:
    """One solution of ``m x = b`` (free variables set to zero), or None."""
    b = b.a[:, 0] if isinstance(b, Matrix) else np.asarray(b, dtype=object).reshape(-1)
    if len(b) != m.rows:
        raise ShapeMismatch("right-hand side has the wrong length")
    n = m.cols
    rows = m.sparse_rows()
    for i, r in enumerate(rows):
        if b[i] != 0:
            r[n] = b[i]
    red = rref(rows, m.field)
    if n in red:
        return None
    x = _zeros(m.field, (n,))
    for c, r in red.items():
        x[c] = r.get(n, m.field.zero)
    return x


def invert(m: Matrix) -> Matrix | None:
    if m.rows != m.cols:
        raise ShapeMismatch("only square matrices are invertible")
    n = m.rows
    rows = m.sparse_rows()
    for i, r in enumerate(rows):
        r[n + i] = m.field.one
    red = rref(rows, m.field)
    if any(c >= n for c in red) or len(red) < n:
        return None
    out = _zeros(m.field, (n, n))
    for c, r in red.items():
        for k, v in r.items():
            if k >= n:
                out[c, k - n] = v
    return Matrix(m.field, out)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; row (i, k) sits at index ``i * b.rows + k``."""
    out = _zeros(a.field, (a.rows * b.rows, a.cols * b.cols))
    br, bc = b.shape
    for i, j in a.nonzeros():
        out[i * br:(i + 1) * br, j * bc:(j + 1) * bc] = a.a[i, j] * b.a
    return Matrix(a.field, out)


def apply_to_axis(t: np.ndarray, m: Matrix, axis: int) -> np.ndarray:
    """Apply ``m`` to one tensor factor of ``t``; that axis becomes length ``m.rows``."""
    if t.shape[axis] != m.cols:
        raise ShapeMismatch("matrix does not fit the tensor axis")
    moved = np.moveaxis(t, axis, 0)
    out = _zeros(m.field, (m.rows,) + moved.shape[1:])
    written = set()
    for i, j in m.nonzeros():
        x = m.a[i, j]
        term = moved[j] if x == 1 else x * moved[j]
        if i in written:
            out[i] = out[i] + term
        else:
            out[i] = term
            written.add(i)
    return np.moveaxis(out, 0, axis)


def zeros_array(field, shape) -> np.ndarray:
    return _zeros(field, shape)
