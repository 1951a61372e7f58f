"""Exact linear algebra over the integers.

Matrices carry arbitrary-precision Python ints, so the coefficient growth
that occurs during Smith reduction can never overflow.  All values are
immutable and all operations are pure functions; concurrent use needs no
coordination.

The Smith reduction uses a fixed pivoting rule (smallest nonzero absolute
value, ties broken by lowest row then lowest column index), so every result
here is deterministic and can be tested byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .abgroups import AbGroup

__all__ = [
    "IntMatrix",
    "SNFDecomposition",
    "IntBasis",
    "smith_normal_form",
    "rank",
    "kernel_basis",
    "cokernel_presentation",
]


@dataclass(frozen=True)
class IntMatrix:
    """An immutable ``rows x cols`` integer matrix, stored row-major.

    Empty matrices (``0 x n`` and ``n x 0``) are first class: genus-0
    surfaces and sides with vanishing first Betti number produce them.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        entries = tuple(self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(entries)}"
            )
        for e in entries:
            if not isinstance(e, int) or isinstance(e, bool):
                raise ValueError(f"matrix entries must be ints, got {e!r}")
        object.__setattr__(self, "entries", entries)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        """Build from a list of rows; ``cols`` disambiguates the 0-row case."""
        nrows = len(rows)
        if nrows == 0:
            return cls(0, 0 if cols is None else cols, ())
        ncols = len(rows[0])
        if cols is not None and cols != ncols:
            raise ValueError("cols does not match row length")
        flat: list[int] = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(nrows, ncols, tuple(flat))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def vstack(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        """Stack matrices with equal column counts on top of each other."""
        if not blocks:
            raise ValueError("vstack needs at least one block")
        cols = blocks[0].cols
        flat: list[int] = []
        rows = 0
        for b in blocks:
            if b.cols != cols:
                raise ValueError("column mismatch in vstack")
            flat.extend(b.entries)
            rows += b.rows
        return cls(rows, cols, tuple(flat))

    @classmethod
    def block_diag(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        i0 = j0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[i0 + i][j0 + j] = b.entry(i, j)
            i0 += b.rows
            j0 += b.cols
        return cls.from_rows(out, cols=cols)

    # -- access ------------------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entry(i, i) for i in range(min(self.rows, self.cols)))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def is_diagonal(self) -> bool:
        return all(
            self.entry(i, j) == 0
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    # -- arithmetic --------------------------------------------------------

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        out: list[int] = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.entry(k, j) for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-e for e in self.entries))

    def mul_vector(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(self.row(i)[k] * v[k] for k in range(self.cols)) for i in range(self.rows))

    def det(self) -> int:
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def __str__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"<empty {self.rows}x{self.cols}>"
        return "\n".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))


@dataclass(frozen=True)
class SNFDecomposition:
    """Unimodular ``U``, ``V`` and diagonal ``D`` with ``U @ A @ V == D``.

    The diagonal entries are nonnegative and form a divisibility chain
    ``d1 | d2 | ...`` with zeros last.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        return self.D.diagonal()

    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d != 0)

    def invariant_factors(self) -> tuple[int, ...]:
        """Diagonal entries greater than 1 (the torsion of the cokernel)."""
        return tuple(d for d in self.diagonal() if d > 1)


@dataclass(frozen=True)
class IntBasis:
    """Vectors spanning a saturated subgroup (a direct summand) of Z^n."""

    ambient_dim: int
    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        vectors = tuple(tuple(int(x) for x in v) for v in self.vectors)
        for v in vectors:
            if len(v) != self.ambient_dim:
                raise ValueError("basis vector has wrong length")
        object.__setattr__(self, "vectors", vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def matrix(self) -> IntMatrix:
        """The len(self) x ambient_dim matrix whose rows are the vectors."""
        return IntMatrix.from_rows([list(v) for v in self.vectors], cols=self.ambient_dim)


def smith_normal_form(A: IntMatrix) -> SNFDecomposition:
    """Smith normal form with unimodular transforms, ``U @ A @ V == D``.

    Deterministic: the pivot is always the entry of smallest nonzero
    absolute value, ties broken by lowest row index, then lowest column
    index.
    """
    m, n = A.rows, A.cols
    d = A.to_rows()
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(a: int, b: int) -> None:
        d[a], d[b] = d[b], d[a]
        u[a], u[b] = u[b], u[a]

    def swap_cols(a: int, b: int) -> None:
        for row in d:
            row[a], row[b] = row[b], row[a]
        for row in v:
            row[a], row[b] = row[b], row[a]

    def add_row(src: int, dst: int, q: int) -> None:
        # row[dst] += q * row[src]
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src: int, dst: int, q: int) -> None:
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(a: int) -> None:
        d[a] = [-x for x in d[a]]
        u[a] = [-x for x in u[a]]

    t = 0
    while True:
        best: tuple[int, int, int] | None = None
        for i in range(t, m):
            for j in range(t, n):
                val = abs(d[i][j])
                if val and (best is None or val < best[0]):
                    best = (val, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    if q:
                        add_row(t, i, -q)
            left = next((i for i in range(t + 1, m) if d[i][t]), None)
            if left is not None:
                # A remainder survived; it is strictly smaller than the
                # pivot, so promoting it makes progress.
                swap_rows(t, left)
                continue
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    if q:
                        add_col(t, j, -q)
            left = next((j for j in range(t + 1, n) if d[t][j]), None)
            if left is not None:
                swap_cols(t, left)
                continue
            # Row and column are clear; force the pivot to divide the rest
            # of the submatrix so the diagonal comes out as a chain.
            dirty = False
            for i in range(t + 1, m):
                if any(d[i][j] % d[t][t] for j in range(t + 1, n)):
                    add_row(i, t, 1)
                    dirty = True
                    break
            if not dirty:
                break
        if d[t][t] < 0:
            negate_row(t)
        t += 1

    return SNFDecomposition(
        U=IntMatrix.from_rows(u, cols=m),
        D=IntMatrix.from_rows(d, cols=n),
        V=IntMatrix.from_rows(v, cols=n),
    )


def rank(A: IntMatrix) -> int:
    """Rank over the rationals: nonzero diagonal entries of the SNF."""
    return smith_normal_form(A).rank()


def _hnf_rows(vectors: list[list[int]], width: int) -> list[list[int]]:
    """Canonical basis of the row lattice spanned by independent vectors.

    Echelon over Z with positive pivots and entries above each pivot
    reduced into [0, pivot); rows ordered by pivot column.  This is the
    deterministic normal form used for every kernel basis.
    """
    rows = [list(v) for v in vectors]
    r = 0
    for col in range(width):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        for i in range(r + 1, len(rows)):
            while rows[i][col]:
                q = rows[r][col] // rows[i][col]
                rows[r] = [a - q * b for a, b in zip(rows[r], rows[i])]
                rows[r], rows[i] = rows[i], rows[r]
        if rows[r][col] < 0:
            rows[r] = [-x for x in rows[r]]
        for i in range(r):
            q = rows[i][col] // rows[r][col]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return rows[:r]


def kernel_basis(A: IntMatrix) -> IntBasis:
    """Saturated basis of ``{ v : A @ v = 0 }`` inside Z^cols.

    The kernel of a map into a free group is automatically a direct
    summand; the basis returned is its canonical echelon form.
    """
    snf = smith_normal_form(A)
    r = snf.rank()
    vecs = [list(snf.V.column(j)) for j in range(r, A.cols)]
    rows = _hnf_rows(vecs, A.cols)
    return IntBasis(A.cols, tuple(tuple(row) for row in rows))


def cokernel_presentation(A: IntMatrix) -> AbGroup:
    """Normal form of ``Z^rows / A(Z^cols)``.

    Free rank is ``rows - rank(A)``; the invariant factors are the SNF
    diagonal entries greater than 1.
    """
    snf = smith_normal_form(A)
    return AbGroup(A.rows - snf.rank(), snf.invariant_factors())
