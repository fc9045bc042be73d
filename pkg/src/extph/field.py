"""Exact sparse linear algebra over a prime field F_q.

Scalars are plain ints reduced mod q.  A sparse column keeps its nonzero
entries sorted by row index, so the bottom nonzero entry (its *low*) is
always the last one.  ``reduce`` brings a column-major matrix to reduced
form using left-to-right column additions only; the pivot positions of the
reduced matrix do not depend on the order in which admissible additions
are performed, which is what makes pairings read off the pivots well
defined.

The dense helpers at the end (rank / kernel / solve on numpy int arrays
mod q) back the homology rank oracles.  They share no code with the
sparse reduction, so the two routes can be played against each other in
tests.
"""

from bisect import bisect_left

import numpy as np

__all__ = [
    "PrimeField",
    "SparseColumn",
    "SparseMatrix",
    "PivotMap",
    "as_field",
    "low",
    "reduce",
    "rank",
    "solve_in_span",
    "dense_matrix",
    "dense_rank",
    "dense_kernel",
    "dense_solve",
    "dense_solve_many",
    "IncrementalSpan",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """Arithmetic in the integers mod a prime q."""

    __slots__ = ("q",)

    def __init__(self, q: int = 2):
        if not isinstance(q, int) or isinstance(q, bool) or not _is_prime(q):
            raise ValueError(f"field modulus must be a prime integer, got {q!r}")
        self.q = q

    def normalize(self, a: int) -> int:
        return a % self.q

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        return pow(a, self.q - 2, self.q)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self):
        return hash(("PrimeField", self.q))

    def __repr__(self):
        return f"PrimeField({self.q})"


def as_field(q) -> PrimeField:
    """Coerce an int modulus (or pass a PrimeField through)."""
    return q if isinstance(q, PrimeField) else PrimeField(q)


class SparseColumn:
    """Sparse vector: nonzero (row, coefficient) entries sorted by row."""

    __slots__ = ("entries",)

    def __init__(self, entries=()):
        # trusted constructor: entries must be sorted by row with nonzero,
        # fully reduced coefficients; use from_pairs for raw data
        self.entries = tuple(entries)

    @classmethod
    def from_pairs(cls, pairs, field: PrimeField) -> "SparseColumn":
        """Build a column from unsorted, possibly repeated (row, coeff) pairs."""
        acc: dict[int, int] = {}
        for row, coeff in pairs:
            acc[row] = (acc.get(row, 0) + coeff) % field.q
        return cls(sorted((r, c) for r, c in acc.items() if c))

    @property
    def low(self):
        """Row index of the bottom nonzero entry; None for the zero column."""
        return self.entries[-1][0] if self.entries else None

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def coeff(self, row: int) -> int:
        rows = [r for r, _ in self.entries]
        i = bisect_left(rows, row)
        if i < len(rows) and rows[i] == row:
            return self.entries[i][1]
        return 0

    def scaled(self, c: int, field: PrimeField) -> "SparseColumn":
        c = field.normalize(c)
        if c == 0:
            return SparseColumn()
        if c == 1:
            return self
        return SparseColumn((r, field.mul(v, c)) for r, v in self.entries)

    def plus_scaled(self, other: "SparseColumn", c: int, field: PrimeField) -> "SparseColumn":
        """self + c * other, merging the two sorted entry lists."""
        c = field.normalize(c)
        if c == 0:
            return self
        out = []
        a, b = self.entries, other.entries
        i = j = 0
        while i < len(a) and j < len(b):
            ra, rb = a[i][0], b[j][0]
            if ra < rb:
                out.append(a[i])
                i += 1
            elif rb < ra:
                v = field.mul(b[j][1], c)
                if v:
                    out.append((rb, v))
                j += 1
            else:
                v = (a[i][1] + b[j][1] * c) % field.q
                if v:
                    out.append((ra, v))
                i += 1
                j += 1
        out.extend(a[i:])
        for rb, vb in b[j:]:
            v = field.mul(vb, c)
            if v:
                out.append((rb, v))
        return SparseColumn(out)

    def to_dense(self, num_rows: int) -> np.ndarray:
        v = np.zeros(num_rows, dtype=np.int64)
        for r, c in self.entries:
            v[r] = c
        return v

    def __eq__(self, other):
        return isinstance(other, SparseColumn) and other.entries == self.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"SparseColumn({list(self.entries)})"


def low(column: SparseColumn):
    """Largest row index carrying a nonzero coefficient; None if the column is zero."""
    return column.low


class SparseMatrix:
    """Column-major sparse matrix over F_q."""

    __slots__ = ("num_rows", "columns", "field")

    def __init__(self, num_rows: int, columns=(), field=2):
        self.field = as_field(field)
        self.num_rows = int(num_rows)
        self.columns = tuple(columns)
        for j, col in enumerate(self.columns):
            if col.entries and col.low >= self.num_rows:
                raise ValueError(
                    f"column {j} has an entry at row {col.low}, but num_rows is {self.num_rows}"
                )

    @property
    def num_cols(self) -> int:
        return len(self.columns)

    def column(self, j: int) -> SparseColumn:
        return self.columns[j]

    def to_dense(self) -> np.ndarray:
        return dense_matrix(self.columns, self.num_rows, self.field.q)

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and other.num_rows == self.num_rows
            and other.columns == self.columns
            and other.field == self.field
        )

    def __repr__(self):
        return f"SparseMatrix({self.num_rows}x{self.num_cols} over F_{self.field.q})"


class PivotMap:
    """The (row, column) pivot positions of a reduced matrix.

    Rows are pairwise distinct and so are columns: a reduced matrix has
    (r, j) in the map exactly when column j is nonzero with low r.
    """

    __slots__ = ("pairs", "by_row", "by_col")

    def __init__(self, pairs=()):
        self.pairs = frozenset(pairs)
        self.by_row = {r: c for r, c in self.pairs}
        self.by_col = {c: r for r, c in self.pairs}
        if len(self.by_row) != len(self.pairs) or len(self.by_col) != len(self.pairs):
            raise ValueError("pivot rows and pivot columns must all be distinct")

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __contains__(self, pair):
        return pair in self.pairs

    def __eq__(self, other):
        return isinstance(other, PivotMap) and other.pairs == self.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        return f"PivotMap({sorted(self.pairs)})"


def reduce(matrix: SparseMatrix, skip_columns=(), record: bool = False):
    """Left-to-right column reduction.

    Column j only ever receives multiples of columns i < j.  While the low
    of column j collides with the low of an earlier pivot column, the
    collision is cancelled; the column either claims a fresh pivot row or
    vanishes.  ``skip_columns`` zeroes those columns without doing the
    work; callers may only pass columns already known to reduce to zero
    (the clearing optimization).

    Returns (reduced, pivots).  The additions performed are not kept by
    default; with ``record`` on, an upper unitriangular transition matrix
    with reduced = matrix @ transition is returned as a third element
    (skipped columns excepted, theirs being forced to zero).
    """
    field = matrix.field
    skip = set(skip_columns)
    working = list(matrix.columns)
    trans = [SparseColumn(((j, 1),)) for j in range(len(working))] if record else None
    owner: dict[int, int] = {}  # pivot row -> column that claimed it
    for j in range(len(working)):
        if j in skip:
            working[j] = SparseColumn()
            if record:
                trans[j] = SparseColumn()
            continue
        col = working[j]
        while not col.is_zero:
            r, v = col.entries[-1]
            i = owner.get(r)
            if i is None:
                owner[r] = j
                break
            pivot_col = working[i]
            factor = field.neg(field.div(v, pivot_col.entries[-1][1]))
            col = col.plus_scaled(pivot_col, factor, field)
            if record:
                trans[j] = trans[j].plus_scaled(trans[i], factor, field)
        working[j] = col
    reduced = SparseMatrix(matrix.num_rows, working, field)
    pivots = PivotMap((r, c) for r, c in owner.items())
    if record:
        return reduced, pivots, SparseMatrix(len(working), trans, field)
    return reduced, pivots


def rank(matrix: SparseMatrix) -> int:
    """Rank over F_q: the number of pivots of any reduction."""
    return len(reduce(matrix)[1])


def solve_in_span(target: SparseColumn, basis_cols: SparseMatrix):
    """Coefficients expressing ``target`` over the columns of ``basis_cols``.

    Returns a list of ints (one per column), or None when the target lies
    outside the span.
    """
    if target.entries and target.low >= basis_cols.num_rows:
        raise ValueError("target has entries outside the row space of the basis")
    a = basis_cols.to_dense()
    b = target.to_dense(basis_cols.num_rows)
    x = dense_solve(a, b, basis_cols.field.q)
    return None if x is None else [int(v) for v in x]


# ---------------------------------------------------------------------------
# dense mod-q helpers (oracle side)
# ---------------------------------------------------------------------------


def dense_matrix(columns, num_rows: int, q: int) -> np.ndarray:
    a = np.zeros((num_rows, len(columns)), dtype=np.int64)
    for j, col in enumerate(columns):
        for r, c in col.entries:
            a[r, j] = c
    return a % q


def _row_echelon(a: np.ndarray, q: int):
    """Reduced row echelon form mod q; returns (rref, pivot column list)."""
    a = np.array(a, dtype=np.int64) % q
    n_rows, n_cols = a.shape
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        pr = r + int(hits[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = (a[r] * pow(int(a[r, c]), q - 2, q)) % q
        col = a[:, c].copy()
        col[r] = 0
        nz = np.nonzero(col)[0]
        if nz.size:
            a[nz] = (a[nz] - np.outer(col[nz], a[r])) % q
        pivots.append(c)
        r += 1
    return a, pivots


def dense_rank(a, q: int) -> int:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    return len(_row_echelon(a, q)[1])


def dense_kernel(a, q: int) -> np.ndarray:
    """Columns spanning the right kernel of ``a`` mod q."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = _row_echelon(a, q)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        out[fc, k] = 1
        for i, pc in enumerate(pivots):
            out[pc, k] = (-int(r[i, fc])) % q
    return out


def dense_solve(a, b, q: int):
    """One solution x of a @ x = b mod q, or None if inconsistent."""
    b = np.asarray(b, dtype=np.int64)
    x = dense_solve_many(a, b.reshape(-1, 1), q)
    return None if x is None else x[:, 0]


def dense_solve_many(a, b, q: int):
    """Solve a @ X = b mod q column-wise; None if any column is unsolvable."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = a.shape[1]
    m = b.shape[1]
    if m == 0:
        return np.zeros((n, 0), dtype=np.int64)
    aug = np.hstack([a % q, b % q])
    r, pivots = _row_echelon(aug, q)
    if pivots and pivots[-1] >= n:
        return None  # a pivot inside the augmented block: inconsistent system
    x = np.zeros((n, m), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc, :] = r[i, n:]
    return x


class IncrementalSpan:
    """Growing span of dense mod-q vectors with cheap membership tests.

    Stored rows have pairwise distinct leading positions and are kept in
    leading-position order, so a single forward sweep reduces any vector.
    """

    __slots__ = ("length", "q", "_rows")

    def __init__(self, length: int, q: int):
        self.length = length
        self.q = q
        self._rows: list[tuple[int, np.ndarray]] = []

    def _residue(self, vec) -> np.ndarray:
        v = np.array(vec, dtype=np.int64) % self.q
        for p, row in self._rows:
            c = int(v[p])
            if c:
                v = (v - c * row) % self.q
        return v

    def contains(self, vec) -> bool:
        return not self._residue(vec).any()

    def add(self, vec) -> bool:
        """Insert a vector; True if it enlarged the span."""
        v = self._residue(vec)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        p = int(nz[0])
        v = (v * pow(int(v[p]), self.q - 2, self.q)) % self.q
        keys = [row[0] for row in self._rows]
        self._rows.insert(bisect_left(keys, p), (p, v))
        return True

    @property
    def rank(self) -> int:
        return len(self._rows)
