"""Dense matrices of Laurent polynomials.

Matrices carry a base-ring tag; every entry must respect the tag's exponent
constraint.  Storage is dense row-major, suitable for the desk-scale sizes
this package targets.
"""

from __future__ import annotations

from .errors import BaseRingViolationError, ShapeError
from .laurent import BaseRing, LaurentPoly, exact_div
from .scalars import CoefficientRing, check_same_ring


class LaurentMatrix:
    """Immutable rows x cols matrix over K[x,x^-1] (or a sub base ring)."""

    __slots__ = ("ring", "base", "rows", "cols", "entries")

    def __init__(self, ring: CoefficientRing, rows: int, cols: int,
                 entries, base: BaseRing = BaseRing.LAURENT, check=True):
        if rows < 0 or cols < 0:
            raise ShapeError("negative matrix dimensions")
        self.ring = ring
        self.base = base
        self.rows = rows
        self.cols = cols
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ShapeError(
                f"entry grid does not match shape {rows}x{cols}"
            )
        self.entries = tuple(tuple(row) for row in entries)
        if check:
            for i, row in enumerate(self.entries):
                for j, p in enumerate(row):
                    check_same_ring(ring, p.ring)
                    if not p.respects(base):
                        raise BaseRingViolationError(
                            f"entry ({i},{j}) = {p} violates {base.tag}"
                        )

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ring, rows, cols, base=BaseRing.LAURENT):
        z = LaurentPoly.zero(ring)
        return cls(ring, rows, cols, [[z] * cols for _ in range(rows)],
                   base, check=False)

    @classmethod
    def identity(cls, ring, n, base=BaseRing.LAURENT):
        one = LaurentPoly.one(ring)
        z = LaurentPoly.zero(ring)
        return cls(ring, n, n,
                   [[one if i == j else z for j in range(n)] for i in range(n)],
                   base, check=False)

    @classmethod
    def from_rows(cls, ring, rows_of_polys, base=BaseRing.LAURENT):
        rows = len(rows_of_polys)
        cols = len(rows_of_polys[0]) if rows else 0
        return cls(ring, rows, cols, rows_of_polys, base)

    @classmethod
    def scalar_diag(cls, ring, polys, base=BaseRing.LAURENT):
        n = len(polys)
        z = LaurentPoly.zero(ring)
        return cls(ring, n, n,
                   [[polys[i] if i == j else z for j in range(n)]
                    for i in range(n)], base)

    @classmethod
    def block(cls, ring, grid, base=BaseRing.LAURENT):
        """Assemble from a 2d grid of LaurentMatrix blocks."""
        row_heights = [grid[i][0].rows for i in range(len(grid))]
        col_widths = [grid[0][j].cols for j in range(len(grid[0]))]
        for i, brow in enumerate(grid):
            for j, b in enumerate(brow):
                if b.rows != row_heights[i] or b.cols != col_widths[j]:
                    raise ShapeError("ragged block grid")
        entries = []
        for i, brow in enumerate(grid):
            for r in range(row_heights[i]):
                entries.append(
                    [b.entries[r][c] for b in brow for c in range(b.cols)]
                )
        return cls(ring, sum(row_heights), sum(col_widths), entries, base)

    # -- access -----------------------------------------------------------

    def __getitem__(self, pos):
        i, j = pos
        return self.entries[i][j]

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for row in self.entries for p in row)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def nonzero_entries(self):
        for i, row in enumerate(self.entries):
            for j, p in enumerate(row):
                if not p.is_zero:
                    yield i, j, p

    def global_maxdeg(self):
        """Largest exponent among all entries; None for the zero matrix."""
        degs = [p.maxdeg for _, _, p in self.nonzero_entries()]
        return max(degs) if degs else None

    def global_mindeg(self):
        degs = [p.mindeg for _, _, p in self.nonzero_entries()]
        return min(degs) if degs else None

    # -- arithmetic ---------------------------------------------------------

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeError(
                f"shape mismatch {self.rows}x{self.cols} vs "
                f"{other.rows}x{other.cols}"
            )

    def __add__(self, other):
        self._same_shape(other)
        base = self.base if self.base == other.base else BaseRing.LAURENT
        return LaurentMatrix(
            self.ring, self.rows, self.cols,
            [[self.entries[i][j] + other.entries[i][j]
              for j in range(self.cols)] for i in range(self.rows)],
            base, check=False)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.map_entries(lambda p: -p)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}"
            )
        check_same_ring(self.ring, other.ring)
        z = LaurentPoly.zero(self.ring)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if not (a.is_zero or b.is_zero):
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        base = self.base if self.base == other.base else BaseRing.LAURENT
        return LaurentMatrix(self.ring, self.rows, other.cols, out,
                             base, check=False)

    def map_entries(self, fn, base=None):
        return LaurentMatrix(
            self.ring, self.rows, self.cols,
            [[fn(p) for p in row] for row in self.entries],
            base if base is not None else self.base, check=False)

    def scale_poly(self, poly: LaurentPoly):
        return self.map_entries(lambda p: p * poly, base=BaseRing.LAURENT)

    def times_monomial(self, exponent: int):
        return self.map_entries(
            lambda p: p.times_monomial(exponent), base=BaseRing.LAURENT)

    def monomial_row_scale(self, exponents):
        """Multiply row i by x^exponents[i]."""
        if len(exponents) != self.rows:
            raise ShapeError("row exponent list has wrong length")
        return LaurentMatrix(
            self.ring, self.rows, self.cols,
            [[p.times_monomial(exponents[i]) for p in row]
             for i, row in enumerate(self.entries)],
            BaseRing.LAURENT, check=False)

    def monomial_col_scale(self, exponents):
        """Multiply column j by x^exponents[j]."""
        if len(exponents) != self.cols:
            raise ShapeError("column exponent list has wrong length")
        return LaurentMatrix(
            self.ring, self.rows, self.cols,
            [[p.times_monomial(exponents[j]) for j, p in enumerate(row)]
             for row in self.entries],
            BaseRing.LAURENT, check=False)

    def with_base(self, base: BaseRing):
        """Re-tag, re-validating the exponent constraint."""
        return LaurentMatrix(self.ring, self.rows, self.cols,
                             self.entries, base, check=True)

    def transpose(self):
        return LaurentMatrix(
            self.ring, self.cols, self.rows,
            [[self.entries[i][j] for i in range(self.rows)]
             for j in range(self.cols)], self.base, check=False)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ShapeError("row counts differ")
        return LaurentMatrix(
            self.ring, self.rows, self.cols + other.cols,
            [list(self.entries[i]) + list(other.entries[i])
             for i in range(self.rows)],
            BaseRing.LAURENT, check=False)

    def submatrix(self, row_idx, col_idx):
        return LaurentMatrix(
            self.ring, len(row_idx), len(col_idx),
            [[self.entries[i][j] for j in col_idx] for i in row_idx],
            self.base, check=False)

    # -- determinant (fraction-free Bareiss) --------------------------------

    def determinant(self) -> LaurentPoly:
        """Exact determinant via Bareiss elimination.

        Works over any of the supported coefficient rings; all divisions
        are exact by the Bareiss identity.
        """
        if not self.is_square:
            raise ShapeError("determinant of a non-square matrix")
        n = self.rows
        ring = self.ring
        if n == 0:
            return LaurentPoly.one(ring)
        m = [list(row) for row in self.entries]
        sign = 1
        prev = LaurentPoly.one(ring)
        for k in range(n - 1):
            if m[k][k].is_zero:
                for i in range(k + 1, n):
                    if not m[i][k].is_zero:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return LaurentPoly.zero(ring)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                    m[i][j] = exact_div(num, prev)
            prev = m[k][k]
        det = m[n - 1][n - 1]
        return det if sign > 0 else -det

    def is_unit_determinant(self) -> bool:
        """True iff square with determinant a unit of K[x,x^-1]."""
        return self.is_square and self.determinant().is_unit

    # -- comparisons -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.entries))

    def __repr__(self):
        if self.rows == 0 or self.cols == 0:
            return f"<{self.rows}x{self.cols} empty>"
        body = "; ".join(
            ", ".join(str(p) for p in row) for row in self.entries)
        return f"[{body}]"


def scalar_rank(m: LaurentMatrix) -> int:
    """Rank of a matrix of constants (exponent-0 entries) over a field.

    Plain Gaussian elimination on the coefficients; fast path used for
    complexes over the base ring K.
    """
    ring = m.ring
    rows = []
    for row in m.entries:
        out = []
        for p in row:
            if p.is_zero:
                out.append(ring.zero())
            else:
                if p.maxdeg != 0 or p.mindeg != 0:
                    raise ShapeError("scalar_rank on a non-constant matrix")
                out.append(p.coeff(0))
        rows.append(out)
    return field_row_rank(ring, rows)


def field_row_rank(ring: CoefficientRing, rows) -> int:
    """Rank of a list-of-lists matrix of ring elements, ring a field."""
    if not rows or not rows[0]:
        return 0
    rows = [list(r) for r in rows]
    ncols = len(rows[0])
    rank = 0
    col = 0
    nrows = len(rows)
    while rank < nrows and col < ncols:
        pivot = None
        for i in range(rank, nrows):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = ring.invert(rows[rank][col])
        prow = rows[rank]
        for j in range(col, ncols):
            prow[j] = ring.mul(prow[j], inv)
        for i in range(nrows):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                irow = rows[i]
                for j in range(col, ncols):
                    irow[j] = ring.sub(irow[j], ring.mul(f, prow[j]))
        rank += 1
        col += 1
    return rank
