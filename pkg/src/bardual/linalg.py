"""Dense exact linear algebra: elimination, rank, kernel/image bases, solving.

Matrices are dense and row-major over one of the fields in `fields`.
All pivoting is first-nonzero ("first-pivot convention") so every answer
is deterministic given the input.
"""

from __future__ import annotations


class Matrix:
    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows: int, cols: int, data=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            z = field.zero
            self.data = [[z] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("matrix data does not match shape")
            self.data = [list(r) for r in data]

    @classmethod
    def from_rows(cls, field, rows):
        r = len(rows)
        c = len(rows[0]) if r else 0
        return cls(field, r, c, rows)

    @classmethod
    def from_cols(cls, field, cols, rows_hint=None):
        if not cols:
            return cls(field, rows_hint or 0, 0)
        r = len(cols[0])
        data = [[cols[j][i] for j in range(len(cols))] for i in range(r)]
        return cls(field, r, len(cols), data)

    @classmethod
    def identity(cls, field, n):
        m = cls(field, n, n)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    def copy(self):
        return Matrix(self.field, self.rows, self.cols, self.data)

    def col(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def transpose(self):
        return Matrix(self.field, self.cols, self.rows,
                      [[self.data[i][j] for i in range(self.rows)]
                       for j in range(self.cols)])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        z = self.field.zero
        out = Matrix(self.field, self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            orow = out.data[i]
            for k in range(self.cols):
                a = row[k]
                if not a:
                    continue
                brow = other.data[k]
                for j in range(other.cols):
                    b = brow[j]
                    if b:
                        orow[j] = orow[j] + a * b
        return out

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch in sum")
        return Matrix(self.field, self.rows, self.cols,
                      [[self.data[i][j] + other.data[i][j]
                        for j in range(self.cols)] for i in range(self.rows)])

    def __neg__(self):
        return Matrix(self.field, self.rows, self.cols,
                      [[-v for v in row] for row in self.data])

    def scale(self, c):
        return Matrix(self.field, self.rows, self.cols,
                      [[c * v for v in row] for row in self.data])

    def apply(self, v):
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for i in range(self.rows):
            s = self.field.zero
            row = self.data[i]
            for j, x in enumerate(v):
                if x:
                    s = s + row[j] * x
            out.append(s)
        return out

    def is_zero(self):
        return all(not v for row in self.data for v in row)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


def _rref(m: Matrix):
    """Reduced row echelon form; returns (rref matrix, pivot column list)."""
    a = [list(r) for r in m.data]
    nr, nc = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if a[i][c]:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = m.field.one / a[r][c]
        a[r] = [inv * v for v in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [a[i][j] - f * a[r][j] for j in range(nc)]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return Matrix(m.field, nr, nc, a), pivots


def eliminate(m: Matrix):
    """Rank, kernel basis and image basis of m, all exact.

    kernel vectors are columns v with m @ v = 0; image basis is the set of
    pivot columns of m itself, so rank + len(kernel) == cols.
    """
    red, pivots = _rref(m)
    rank = len(pivots)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    z = m.field.zero
    one = m.field.one
    kernel = []
    for j in free:
        v = [z] * m.cols
        v[j] = one
        for r, pc in enumerate(pivots):
            if red.data[r][j]:
                v[pc] = -red.data[r][j]
        kernel.append(v)
    image = [m.col(j) for j in pivots]
    return rank, kernel, image


def rank(m: Matrix) -> int:
    return eliminate(m)[0]


def solve(m: Matrix, b):
    """Some x with m @ x = b, or None when b is not in the image.

    Raises on length mismatch; the zero-column case degenerates correctly.
    """
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    aug = Matrix(m.field, m.rows, m.cols + 1,
                 [m.data[i] + [b[i]] for i in range(m.rows)])
    red, pivots = _rref(aug)
    if m.cols in pivots:
        return None
    z = m.field.zero
    x = [z] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = red.data[r][m.cols]
    return x


def solve_matrix(m: Matrix, bmat: Matrix):
    """Solve m @ X = bmat column by column; None if any column fails."""
    cols = []
    for j in range(bmat.cols):
        x = solve(m, bmat.col(j))
        if x is None:
            return None
        cols.append(x)
    return Matrix.from_cols(m.field, cols, rows_hint=m.cols)


def inverse(m: Matrix):
    if m.rows != m.cols:
        raise ValueError("only square matrices invert")
    inv = solve_matrix(m, Matrix.identity(m.field, m.rows))
    if inv is None:
        return None
    return inv


def quotient_representatives(span_cols, candidate_cols, field, dim):
    """Columns among `candidate_cols` extending span(span_cols) to
    span(span_cols + candidates); first-pivot convention.

    Used for cohomology representatives: candidates are kernel vectors,
    span_cols the image of the previous differential.
    """
    all_cols = list(span_cols) + list(candidate_cols)
    if not all_cols:
        return []
    m = Matrix.from_cols(field, all_cols, rows_hint=dim)
    _, pivots = _rref(m)
    k = len(span_cols)
    return [candidate_cols[j - k] for j in pivots if j >= k]
