"""Exact dense linear algebra over a prime field F_p.

Everything downstream (Hom spaces, resolutions, certificates) reduces to
the three solvers in this module: ``rref``, ``solve_linear`` and
``kernel_basis``.  All arithmetic is exact; matrices are immutable.
Pivoting is deterministic (first nonzero entry), so every certificate
derived from these routines is bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

DEFAULT_PRIME = 101


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p in (2, 3):
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field F_p; p is verified prime at construction."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p < 2**31:
            raise ValueError(f"modulus must be an integer in [2, 2^31): {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"modulus is not prime: {self.p}")


@dataclass(frozen=True)
class Mat:
    """Dense row-major matrix over F_p.

    0xn and nx0 matrices are legal and represent maps to/from the zero
    space.  Entries are stored reduced modulo p in a flat tuple.
    """

    rows: int
    cols: int
    entries: tuple
    p: int

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entry count {len(self.entries)} != {self.rows}x{self.cols}"
            )

    # -- constructors ------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], p: int, cols: Optional[int] = None) -> "Mat":
        nrows = len(rows)
        if nrows == 0:
            if cols is None:
                cols = 0
            return Mat(0, cols, (), p)
        ncols = len(rows[0]) if cols is None else cols
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(x % p for x in r)
        return Mat(nrows, ncols, tuple(flat), p)

    @staticmethod
    def zero(rows: int, cols: int, p: int) -> "Mat":
        return Mat(rows, cols, (0,) * (rows * cols), p)

    @staticmethod
    def identity(n: int, p: int) -> "Mat":
        flat = [0] * (n * n)
        for i in range(n):
            flat[i * n + i] = 1 % p
        return Mat(n, n, tuple(flat), p)

    # -- element access ----------------------------------------------

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    # -- arithmetic ---------------------------------------------------

    def _check_p(self, other: "Mat"):
        if self.p != other.p:
            raise ValueError(f"field mismatch: F_{self.p} vs F_{other.p}")

    def add(self, other: "Mat") -> "Mat":
        self._check_p(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        p = self.p
        return Mat(self.rows, self.cols,
                   tuple((a + b) % p for a, b in zip(self.entries, other.entries)), p)

    def sub(self, other: "Mat") -> "Mat":
        self._check_p(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in sub")
        p = self.p
        return Mat(self.rows, self.cols,
                   tuple((a - b) % p for a, b in zip(self.entries, other.entries)), p)

    def neg(self) -> "Mat":
        p = self.p
        return Mat(self.rows, self.cols, tuple((-a) % p for a in self.entries), p)

    def scale(self, c: int) -> "Mat":
        p = self.p
        c %= p
        return Mat(self.rows, self.cols, tuple((c * a) % p for a in self.entries), p)

    def mul(self, other: "Mat") -> "Mat":
        """Matrix product self * other (self applied after other on columns)."""
        self._check_p(other)
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in mul: {self.rows}x{self.cols} * {other.rows}x{other.cols}"
            )
        p = self.p
        n, k, m = self.rows, self.cols, other.cols
        flat = [0] * (n * m)
        srows = self.entries
        orows = other.entries
        for i in range(n):
            base = i * k
            for t in range(k):
                a = srows[base + t]
                if a == 0:
                    continue
                ob = t * m
                ib = i * m
                for j in range(m):
                    flat[ib + j] = (flat[ib + j] + a * orows[ob + j]) % p
        return Mat(n, m, tuple(flat), p)

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows,
                   tuple(self.entries[i * self.cols + j]
                         for j in range(self.cols) for i in range(self.rows)),
                   self.p)

    @staticmethod
    def hstack(mats: Sequence["Mat"]) -> "Mat":
        if not mats:
            raise ValueError("hstack of nothing")
        rows = mats[0].rows
        p = mats[0].p
        if any(m.rows != rows or m.p != p for m in mats):
            raise ValueError("hstack shape/field mismatch")
        out = []
        for i in range(rows):
            for m in mats:
                out.extend(m.row(i))
        return Mat(rows, sum(m.cols for m in mats), tuple(out), p)

    @staticmethod
    def vstack(mats: Sequence["Mat"]) -> "Mat":
        if not mats:
            raise ValueError("vstack of nothing")
        cols = mats[0].cols
        p = mats[0].p
        if any(m.cols != cols or m.p != p for m in mats):
            raise ValueError("vstack shape/field mismatch")
        out = []
        for m in mats:
            out.extend(m.entries)
        return Mat(sum(m.rows for m in mats), cols, tuple(out), p)

    @staticmethod
    def block(grid: Sequence[Sequence["Mat"]]) -> "Mat":
        return Mat.vstack([Mat.hstack(row) for row in grid])

    def vectorize(self) -> tuple:
        """Row-major flattening; the coordinate convention for Hom spaces."""
        return self.entries


def rref(a: Mat) -> "tuple[Mat, list[int]]":
    """Reduced row-echelon form and pivot columns, deterministic pivoting."""
    p = a.p
    rows = [list(a.row(i)) for i in range(a.rows)]
    pivots: list = []
    r = 0
    for c in range(a.cols):
        pr = None
        for i in range(r, a.rows):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(a.rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                ri, rr = rows[i], rows[r]
                rows[i] = [(x - f * y) % p for x, y in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == a.rows:
            break
    return Mat.from_rows(rows, p, cols=a.cols), pivots


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def solve_linear(a: Mat, b: Mat) -> Optional[Mat]:
    """One solution x of a*x = b (columns independently), or None."""
    if a.p != b.p:
        raise ValueError("field mismatch in solve_linear")
    if a.rows != b.rows:
        raise ValueError(f"shape mismatch: a has {a.rows} rows, b has {b.rows}")
    aug = Mat.hstack([a, b]) if a.cols + b.cols > 0 else Mat.zero(a.rows, 0, a.p)
    red, pivots = rref(aug)
    for c in pivots:
        if c >= a.cols:
            return None
    x = [[0] * b.cols for _ in range(a.cols)]
    for r, c in enumerate(pivots):
        for j in range(b.cols):
            x[c][j] = red.at(r, a.cols + j)
    return Mat.from_rows(x, a.p, cols=b.cols)


def kernel_basis(a: Mat) -> Mat:
    """Columns form a basis of the null space {x : a*x = 0}."""
    red, pivots = rref(a)
    p = a.p
    free = [j for j in range(a.cols) if j not in pivots]
    cols = []
    for j in free:
        v = [0] * a.cols
        v[j] = 1
        for r, c in enumerate(pivots):
            v[c] = (-red.at(r, j)) % p
        cols.append(v)
    return Mat.from_rows([[cols[k][i] for k in range(len(free))] for i in range(a.cols)],
                         p, cols=len(free))


def column_space_basis(a: Mat) -> Mat:
    """Columns of a at the pivot positions: a basis of the column space."""
    _, pivots = rref(a)
    cols = [a.col(j) for j in pivots]
    return Mat.from_rows([[c[i] for c in cols] for i in range(a.rows)], a.p,
                         cols=len(pivots))


def quotient_data(span: Mat) -> "tuple[Mat, list[int]]":
    """Projection F^n -> F^n/colspace(span) plus its free coordinates.

    Rows of the projection express the quotient coordinates (indexed by
    the non-pivot positions of the reduced span) of an input vector; the
    kernel is exactly the column space of ``span``.  The standard basis
    vectors at the free coordinates lift the quotient basis.
    """
    p = span.p
    n = span.rows
    red, pivots = rref(span.transpose())
    free = [j for j in range(n) if j not in pivots]
    proj_rows = []
    for j in free:
        row = [0] * n
        row[j] = 1
        for r, c in enumerate(pivots):
            row[c] = (-red.at(r, j)) % p
        proj_rows.append(row)
    return Mat.from_rows(proj_rows, p, cols=n), free


def quotient_projection(span: Mat) -> Mat:
    return quotient_data(span)[0]


def in_column_space(span: Mat, v: Mat) -> bool:
    return solve_linear(span, v) is not None


def det(a: Mat) -> int:
    """Determinant by fraction-free elimination over F_p."""
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    p = a.p
    rows = [list(a.row(i)) for i in range(a.rows)]
    sign = 1
    acc = 1
    for c in range(a.cols):
        pr = None
        for i in range(c, a.rows):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            return 0
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            sign = -sign
        acc = (acc * rows[c][c]) % p
        inv = pow(rows[c][c], p - 2, p)
        for i in range(c + 1, a.rows):
            if rows[i][c]:
                f = (rows[i][c] * inv) % p
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[c])]
    return (acc * sign) % p


def random_invertible(n: int, p: int, rng) -> Mat:
    """Uniform-ish invertible matrix by rejection sampling."""
    while True:
        m = Mat.from_rows([[rng.randrange(p) for _ in range(n)] for _ in range(n)],
                          p, cols=n)
        if rank(m) == n:
            return m


def mat_from_vector(vec: Iterable[int], rows: int, cols: int, p: int) -> Mat:
    flat = tuple(x % p for x in vec)
    if len(flat) != rows * cols:
        raise ValueError("vector length does not match shape")
    return Mat(rows, cols, flat, p)
