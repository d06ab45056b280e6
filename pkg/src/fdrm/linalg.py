"""Exact matrices over GF(p^n): rank, reduced forms, block assembly.

One generic implementation serves matrices over a base field and over an
extension field; the field tag on MatrixF decides the arithmetic.  Pivoting
is always "first nonzero entry scanning top to bottom": exact fields have
no pivot-magnitude concept, and determinism matters more than fill-in.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import GF


class LinalgError(ValueError):
    """Dimension mismatch or singular input."""


@dataclass(frozen=True, eq=True)
class MatrixF:
    """Immutable matrix with entries in a declared field."""

    field: GF
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise LinalgError("ragged rows")
        for r in self.rows:
            for e in r:
                self.field.check(e)

    @classmethod
    def from_rows(cls, field: GF, rows) -> "MatrixF":
        return cls(field, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, field: GF, k: int) -> "MatrixF":
        return cls(field, tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k)))

    @classmethod
    def zeros(cls, field: GF, nrows: int, ncols: int) -> "MatrixF":
        return cls(field, tuple((0,) * ncols for _ in range(nrows)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def transpose(self) -> "MatrixF":
        return MatrixF(self.field, tuple(zip(*self.rows)) if self.rows else ())

    def submatrix(self, row_slice: slice, col_slice: slice) -> "MatrixF":
        return MatrixF(self.field, tuple(r[col_slice] for r in self.rows[row_slice]))

    def hstack(self, other: "MatrixF") -> "MatrixF":
        if other.field is not self.field or other.nrows != self.nrows:
            raise LinalgError("hstack mismatch")
        return MatrixF(self.field, tuple(a + b for a, b in zip(self.rows, other.rows)))

    def vstack(self, other: "MatrixF") -> "MatrixF":
        if other.field is not self.field or other.ncols != self.ncols:
            raise LinalgError("vstack mismatch")
        return MatrixF(self.field, self.rows + other.rows)

    def add(self, other: "MatrixF") -> "MatrixF":
        if other.field is not self.field or other.shape != self.shape:
            raise LinalgError("add mismatch")
        f = self.field
        return MatrixF(
            f,
            tuple(
                tuple(f.add(a, b) for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
        )

    def scale(self, c: int) -> "MatrixF":
        f = self.field
        return MatrixF(f, tuple(tuple(f.mul(c, e) for e in r) for r in self.rows))

    def mul(self, other: "MatrixF") -> "MatrixF":
        if other.field is not self.field or self.ncols != other.nrows:
            raise LinalgError("mul mismatch")
        f = self.field
        ot = other.transpose().rows
        out = []
        for r in self.rows:
            row = []
            for c in ot:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                row.append(acc)
            out.append(tuple(row))
        return MatrixF(f, tuple(out))

    def vecmul(self, vec) -> tuple[int, ...]:
        """Row vector times this matrix."""
        if len(vec) != self.nrows:
            raise LinalgError("vecmul mismatch")
        f = self.field
        out = []
        for j in range(self.ncols):
            acc = 0
            for a, r in zip(vec, self.rows):
                if a and r[j]:
                    acc = f.add(acc, f.mul(a, r[j]))
            out.append(acc)
        return tuple(out)

    def is_zero(self) -> bool:
        return all(all(e == 0 for e in r) for r in self.rows)


def _eliminate(rows: list[list[int]], field: GF, reduced: bool) -> tuple[list[list[int]], list[int]]:
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, nrows):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        rng = range(nrows) if reduced else range(r + 1, nrows)
        for i in rng:
            if i != r and rows[i][c]:
                fct = rows[i][c]
                rows[i] = [
                    field.sub(x, field.mul(fct, y)) for x, y in zip(rows[i], rows[r])
                ]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(M: MatrixF) -> int:
    """Rank by Gaussian elimination over the entry field."""
    rows = [list(r) for r in M.rows]
    _, pivots = _eliminate(rows, M.field, reduced=False)
    return len(pivots)


def rref(M: MatrixF) -> tuple[MatrixF, list[int]]:
    """Reduced row echelon form and pivot columns (zero rows kept at bottom)."""
    rows = [list(r) for r in M.rows]
    rows, pivots = _eliminate(rows, M.field, reduced=True)
    return MatrixF.from_rows(M.field, rows), pivots


def invert(M: MatrixF) -> MatrixF:
    if M.nrows != M.ncols:
        raise LinalgError("only square matrices invert")
    n = M.nrows
    aug = [list(r) + [1 if j == i else 0 for j in range(n)] for i, r in enumerate(M.rows)]
    aug, pivots = _eliminate(aug, M.field, reduced=True)
    if pivots[:n] != list(range(n)):
        raise LinalgError("singular matrix")
    return MatrixF.from_rows(M.field, [r[n:] for r in aug])


def systematic_form(G: MatrixF) -> tuple[MatrixF, MatrixF]:
    """(T, S) with S = T*G of shape (I_k | A); the row space is preserved.

    Raises LinalgError when the leftmost k x k block is singular.
    """
    k = G.nrows
    if G.ncols < k:
        raise LinalgError("wider-than-tall generator required")
    left = G.submatrix(slice(0, k), slice(0, k))
    T = invert(left)
    return T, T.mul(G)


def valid_length(vec) -> int:
    """1-based index of the rightmost nonzero component; 0 for a zero vector."""
    vl = 0
    for i, v in enumerate(vec):
        if v:
            vl = i + 1
    return vl


def serialize_matrix(M: MatrixF) -> list:
    """Row-major serialization: each entry as its coefficient vector.

    Base-field matrices (degree-1 entries) serialize more compactly as one
    digit string per row.
    """
    if M.field.degree == 1:
        return ["".join(str(e) for e in row) for row in M.rows]
    return [[list(M.field.coeffs(e)) for e in row] for row in M.rows]


def matrix_from_serial(field: GF, data) -> MatrixF:
    if field.degree == 1:
        return MatrixF.from_rows(field, [[int(c) for c in row] for row in data])
    return MatrixF.from_rows(
        field, [[field.from_coeffs(e) for e in row] for row in data]
    )


def block_compose(
    field: GF,
    shape: tuple[int, int],
    placements,
) -> MatrixF:
    """Assemble a matrix from (row_offset, col_offset, MatrixF) placements.

    Unoccupied cells are zero-filled; blocks must fit inside `shape` and
    must not overlap.
    """
    nrows, ncols = shape
    grid = [[0] * ncols for _ in range(nrows)]
    used = [[False] * ncols for _ in range(nrows)]
    for r0, c0, blk in placements:
        if blk.field is not field:
            raise LinalgError("block field mismatch")
        if r0 < 0 or c0 < 0 or r0 + blk.nrows > nrows or c0 + blk.ncols > ncols:
            raise LinalgError("block does not fit: non-conformal sizes")
        for i in range(blk.nrows):
            for j in range(blk.ncols):
                if used[r0 + i][c0 + j]:
                    raise LinalgError("overlapping blocks")
                used[r0 + i][c0 + j] = True
                grid[r0 + i][c0 + j] = blk.rows[i][j]
    return MatrixF.from_rows(field, grid)
