"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  Matrices are small, dense and
immutable; elimination converts each row to integers and works fraction-free
(Bareiss style), dividing every updated row by its content so coefficients
stay small.  Rows are kept sparse during elimination because the systems
produced by Hom/Ext computations are overwhelmingly zero.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "Fraction",
    "Matrix",
    "Subspace",
    "Echelon",
    "NotInvertible",
    "as_fraction",
    "format_rational",
    "parse_rational",
    "kernel",
    "kernel_of_rows",
    "rank",
    "solve",
    "inverse",
    "generalized_eigenspace",
    "algebra_radical",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class NotInvertible(ValueError):
    pass


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            d = int(den)
            if d <= 0:
                raise ValueError
            return Fraction(int(num), d)
        return Fraction(int(num))
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None


class Matrix:
    """Immutable dense matrix over the rationals, stored row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash", "_srows")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(as_fraction(e) for e in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._hash = None
        self._srows = None

    # constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, rows: int, cols: int, entries: tuple) -> "Matrix":
        m = object.__new__(cls)
        m.rows, m.cols, m.entries, m._hash, m._srows = rows, cols, entries, None, None
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        columns = [list(c) for c in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        return cls(nrows, len(columns), [columns[j][i] for i in range(nrows) for j in range(len(columns))])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._raw(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        e = [ZERO] * (n * n)
        for i in range(n):
            e[i * n + i] = ONE
        return cls._raw(n, n, tuple(e))

    @classmethod
    def from_sparse(cls, rows: int, cols: int, items: dict) -> "Matrix":
        e = [ZERO] * (rows * cols)
        for (i, j), v in items.items():
            if v:
                e[i * cols + j] = as_fraction(v)
        return cls._raw(rows, cols, tuple(e))

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls.from_sparse(n, n, {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def block_diagonal(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        items = {}
        r0 = c0 = 0
        for b in blocks:
            for (i, j), v in b.nonzero().items():
                items[r0 + i, c0 + j] = v
            r0 += b.rows
            c0 += b.cols
        return cls.from_sparse(n, m, items)

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.rows else ()

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def nonzero(self) -> dict:
        c = self.cols
        return {divmod(k, c): v for k, v in enumerate(self.entries) if v}

    def _sparse_rows(self) -> list[list[tuple[int, Fraction]]]:
        if self._srows is None:
            c = self.cols
            out = []
            for i in range(self.rows):
                base = i * c
                out.append([(j, v) for j, v in enumerate(self.entries[base:base + c]) if v])
            self._srows = out
        return self._srows

    # arithmetic ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(v) for v in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(self.rows, self.cols, tuple((a + b if a else b) if b else a
                                                       for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(self.rows, self.cols, tuple((a - b if a else -b) if b else a
                                                       for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "Matrix":
        c = as_fraction(c)
        if not c:
            return Matrix.zeros(self.rows, self.cols)
        if c == 1:
            return self
        return Matrix._raw(self.rows, self.cols, tuple(c * a if a else ZERO for a in self.entries))

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            n, m = self.rows, other.cols
            out = [ZERO] * (n * m)
            orows = other._sparse_rows()
            for i, srow in enumerate(self._sparse_rows()):
                base = i * m
                for k, a in srow:
                    for j, b in orows[k]:
                        out[base + j] += a * b
            return Matrix._raw(n, m, tuple(out))
        vec = [as_fraction(v) for v in other]
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * vec[j] for j, a in row), ZERO) for row in self._sparse_rows())

    def __pow__(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.cols, self.rows, tuple(self.entries[i * self.cols + j]
                                                       for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def kron(self, other: "Matrix") -> "Matrix":
        p, q = other.rows, other.cols
        items = {}
        onz = other.nonzero()
        for (i, j), a in self.nonzero().items():
            for (k, l), b in onz.items():
                items[i * p + k, j * q + l] = a * b
        return Matrix.from_sparse(self.rows * p, self.cols * q, items)

    def trace(self) -> Fraction:
        return sum((self.entries[i * self.cols + i] for i in range(min(self.rows, self.cols))), ZERO)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(len(rows), len(cols), tuple(self.entries[i * self.cols + j] for i in rows for j in cols))

    def is_nilpotent(self) -> bool:
        if self.rows != self.cols:
            raise ValueError("nilpotency of a non-square matrix")
        power = self
        for _ in range(self.rows):
            if power.is_zero():
                return True
            power = power @ self
        return power.is_zero()


# --------------------------------------------------------------------------
# fraction-free sparse elimination


def _integer_row(items) -> dict[int, int]:
    """Scale a sparse rational row to a primitive integer row."""
    items = [(j, as_fraction(v)) for j, v in items if v]
    if not items:
        return {}
    den = lcm(*(v.denominator for _, v in items))
    row = {j: v.numerator * (den // v.denominator) for j, v in items}
    return _primitive(row)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _eliminate(row: dict[int, int], prow: dict[int, int], col: int) -> dict[int, int]:
    # row <- p*row - r*prow, zeroing `col`; then divide out the content
    p = prow[col]
    r = row[col]
    g = gcd(p, r)
    p //= g
    r //= g
    out = {j: p * v for j, v in row.items()} if p != 1 else dict(row)
    for j, v in prow.items():
        nv = out.get(j, 0) - r * v
        if nv:
            out[j] = nv
        else:
            out.pop(j, None)
    return _primitive(out)


class Echelon:
    """Incrementally maintained row echelon form over the integers.

    Each stored row has a pivot column (its smallest column) and no row has a
    nonzero entry at a pivot column of an earlier-inserted row with a smaller
    pivot.  ``add`` reports whether the new row was independent.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        pivots = self.pivots
        while row:
            hits = [c for c in row if c in pivots]
            if not hits:
                break
            c = min(hits)
            row = _eliminate(row, pivots[c], c)
        return row

    def add_integer_row(self, row: dict[int, int]) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        self.pivots[min(row)] = row
        return True

    def add(self, vector) -> bool:
        if isinstance(vector, dict):
            return self.add_integer_row(_integer_row(vector.items()))
        return self.add_integer_row(_integer_row(enumerate(vector)))

    def contains(self, vector) -> bool:
        items = vector.items() if isinstance(vector, dict) else enumerate(vector)
        return not self.reduce(_integer_row(items))

    def reduced(self) -> dict[int, dict[int, int]]:
        """Return the fully reduced echelon form (pivot columns cleared above)."""
        cols = sorted(self.pivots, reverse=True)
        done: dict[int, dict[int, int]] = {}
        for c in cols:
            row = self.pivots[c]
            while True:
                hits = [k for k in row if k != c and k in done]
                if not hits:
                    break
                k = min(hits)
                row = _eliminate(row, done[k], k)
            done[c] = row
        return done

    def kernel_basis(self) -> list[tuple[Fraction, ...]]:
        red = self.reduced()
        free = [c for c in range(self.ncols) if c not in red]
        basis = []
        for f in free:
            v = [ZERO] * self.ncols
            v[f] = ONE
            for c, row in red.items():
                a = row.get(f)
                if a:
                    v[c] = Fraction(-a, row[c])
            basis.append(tuple(v))
        return basis


def kernel_of_rows(rows: Iterable, ncols: int) -> list[tuple[Fraction, ...]]:
    """Kernel of the matrix whose (sparse or dense) rows are given."""
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    return ech.kernel_basis()


def _echelon_of(A: Matrix) -> Echelon:
    ech = Echelon(A.cols)
    for srow in A._sparse_rows():
        ech.add_integer_row(_integer_row(srow))
    return ech


def rank(A: Matrix) -> int:
    return len(_echelon_of(A))


def kernel(A: Matrix) -> "Subspace":
    """Basis of the right null space of ``A``; ``dim = cols - rank(A)``."""
    return Subspace(A.cols, _echelon_of(A).kernel_basis(), _checked=True)


def solve(A: Matrix, b) -> tuple[Fraction, ...] | None:
    """Some ``x`` with ``A x = b``, or ``None`` when the system is inconsistent."""
    b = [as_fraction(v) for v in b]
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    n = A.cols
    ech = Echelon(n + 1)
    for srow, bi in zip(A._sparse_rows(), b):
        ech.add_integer_row(_integer_row(srow + [(n, bi)]))
    if n in ech.pivots:
        return None
    red = ech.reduced()
    x = [ZERO] * n
    for c, row in red.items():
        # row: p*x_c + sum(free) = b_row, set free variables to zero
        x[c] = Fraction(row.get(n, 0), row[c])
    return tuple(x)


def inverse(A: Matrix) -> Matrix:
    if A.rows != A.cols:
        raise NotInvertible("not invertible: matrix is not square")
    n = A.rows
    ech = Echelon(2 * n)
    for i, srow in enumerate(A._sparse_rows()):
        ech.add_integer_row(_integer_row(srow + [(n + i, ONE)]))
    red = ech.reduced()
    if any(c not in red for c in range(n)):
        raise NotInvertible("not invertible")
    # rows of [A | I] reduced to [D | B] with D diagonal: A^{-1} = D^{-1} B
    items = {}
    for c in range(n):
        row = red[c]
        p = row[c]
        for j, v in row.items():
            if j >= n:
                items[c, j - n] = Fraction(v, p)
    return Matrix.from_sparse(n, n, items)


# --------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of ``Q^ambient_dim`` given by linearly independent vectors."""

    __slots__ = ("ambient_dim", "basis", "_coord")

    def __init__(self, ambient_dim: int, vectors: Iterable = (), *, _checked: bool = False):
        vectors = [tuple(as_fraction(v) for v in vec) for vec in vectors]
        if not _checked:
            ech = Echelon(ambient_dim)
            kept = []
            for v in vectors:
                if len(v) != ambient_dim:
                    raise ValueError("vector length does not match ambient dimension")
                if ech.add(v):
                    kept.append(v)
            vectors = kept
        self.ambient_dim = ambient_dim
        self.basis = tuple(vectors)
        self._coord = None

    def __len__(self):
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n).tolist(), _checked=True)

    def matrix(self) -> Matrix:
        """Basis vectors as the columns of an ``ambient x dim`` matrix."""
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def echelon(self) -> Echelon:
        ech = Echelon(self.ambient_dim)
        for v in self.basis:
            ech.add(v)
        return ech

    def contains(self, vector) -> bool:
        return self.echelon().contains(vector)

    def __contains__(self, vector) -> bool:
        return self.contains(vector)

    def includes(self, other: "Subspace") -> bool:
        ech = self.echelon()
        return all(ech.contains(v) for v in other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.dim == other.dim
                and self.includes(other))

    __hash__ = None

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def coordinates(self, vector) -> tuple[Fraction, ...]:
        """Coordinates of ``vector`` (assumed to lie in the span) in ``basis``."""
        if self._coord is None:
            B = self.matrix()
            rows = _independent_rows(B)
            self._coord = (rows, inverse(B.submatrix(rows, range(self.dim))) if rows else None)
        rows, inv = self._coord
        if inv is None:
            return ()
        return inv @ [as_fraction(vector[r]) for r in rows]

    def complement_indices(self) -> list[int]:
        """Standard basis indices whose vectors complete ``basis`` to a basis."""
        ech = self.echelon()
        out = []
        for i in range(self.ambient_dim):
            if ech.add_integer_row({i: 1}):
                out.append(i)
        return out


def _independent_rows(B: Matrix) -> list[int]:
    ech = Echelon(B.cols)
    rows = []
    for i, srow in enumerate(B._sparse_rows()):
        if ech.add_integer_row(_integer_row(srow)):
            rows.append(i)
            if len(rows) == B.cols:
                break
    return rows


def generalized_eigenspace(A: Matrix, eigenvalue) -> Subspace:
    """Kernel of ``(A - eigenvalue*I)^dim``.

    Powers are taken one at a time until the rank stops dropping, which
    happens by the nilpotency index of the eigenvalue's Jordan blocks.
    """
    if A.rows != A.cols:
        raise ValueError("generalized eigenspace of a non-square matrix")
    n = A.rows
    lam = as_fraction(eigenvalue)
    B = A - Matrix.identity(n).scale(lam)
    power = B
    r = rank(power)
    while True:
        if r == 0:
            return Subspace.whole(n)
        nxt = B @ power
        r2 = rank(nxt)
        if r2 == r:
            return kernel(power)
        power, r = nxt, r2


def algebra_radical(basis: Sequence[Matrix]) -> Subspace:
    """Radical of the trace form on ``span(basis)``.

    Returned in coefficient coordinates relative to ``basis``.  For a unital
    subalgebra of ``End(V)`` over a field of characteristic zero this is the
    Jacobson radical (Dickson's criterion).
    """
    k = len(basis)
    sparse = [b.nonzero() for b in basis]
    gram = []
    for i in range(k):
        row = []
        for j in range(k):
            bj = basis[j]
            row.append(sum((a * bj[c, r] for (r, c), a in sparse[i].items()), ZERO))
        gram.append(row)
    if not k:
        return Subspace(0, (), _checked=True)
    return kernel(Matrix.from_rows(gram))
