"""Exact linear algebra over the rationals.

Row reduction always takes the leftmost available pivot, so every rank,
kernel and solve below is deterministic.  Matrices are immutable value
types; the wedge helpers fix the lexicographic pair ordering used for
second exterior powers throughout the package.
"""

from __future__ import annotations

from .scalars import Q, ZERO


class NotInSpan(Exception):
    """Target is outside the span; carries the exact nonzero residual."""

    def __init__(self, residual):
        self.residual = tuple(residual)
        super().__init__(f"target not in span, residual {self.residual!r}")


def _rref(rows, limit=None):
    """Reduced row echelon form with leftmost pivots; returns (rows, pivots).

    With limit set, pivots are only taken from the first limit columns;
    later columns are carried along (used for augmented solves).
    """
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols if limit is None else limit):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if work[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        if pv != 1:
            work[r] = [x / pv for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                row_r = work[r]
                work[i] = [a - f * b for a, b in zip(work[i], row_r)]
        pivots.append(c)
        r += 1
    return work, tuple(pivots)


class Mat:
    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(Q(x) for x in row) for row in entries)
        self.entries = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        if any(len(r) != self.ncols for r in rows):
            raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, rows):
        return cls(rows)

    @classmethod
    def from_cols(cls, cols):
        cols = [list(c) for c in cols]
        if not cols:
            return cls(())
        return cls([[col[i] for col in cols] for i in range(len(cols[0]))])

    @classmethod
    def zero(cls, nrows, ncols):
        return cls([[ZERO] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n):
        return cls([[Q(1) if i == j else ZERO for j in range(n)] for i in range(n)])

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def cols(self):
        return [self.col(j) for j in range(self.ncols)]

    def transpose(self):
        return Mat(zip(*self.entries)) if self.nrows else Mat(())

    def rref(self):
        rows, pivots = _rref(self.entries)
        return Mat(rows), pivots

    def rank(self):
        return len(self.rref()[1])

    def times_vector(self, v):
        v = list(v)
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        return tuple(sum((a * b for a, b in zip(row, v)), ZERO) for row in self.entries)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("row mismatch")
        return Mat([ra + rb for ra, rb in zip(self.entries, other.entries)])

    def __eq__(self, other):
        return isinstance(other, Mat) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Mat({[list(map(str, r)) for r in self.entries]!r})"


def solve_in_span(basis: Mat, target):
    """Coefficients c with basis @ c == target, basis columns spanning.

    When the columns are dependent the solution is the canonical
    representative with every free coordinate set to zero (free = the
    non-pivot columns under leftmost-pivot reduction).  Raises NotInSpan
    with the exact residual when no solution exists.
    """
    target = [Q(x) for x in target]
    if len(target) != basis.nrows:
        raise ValueError("dimension mismatch")
    augmented = [list(row) + [t] for row, t in zip(basis.entries, target)]
    if not augmented:
        return (ZERO,) * basis.ncols
    reduced, pivots = _rref(augmented, limit=basis.ncols)
    coeffs = [ZERO] * basis.ncols
    for r, c in enumerate(pivots):
        coeffs[c] = reduced[r][basis.ncols]
    residual = [t - s for t, s in zip(target, basis.times_vector(coeffs))]
    if any(x != 0 for x in residual):
        raise NotInSpan(residual)
    return tuple(coeffs)


def kernel_basis(m: Mat):
    """Basis of the column kernel, one vector per free column."""
    reduced, pivots = m.rref()
    pivot_set = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [ZERO] * m.ncols
        vec[fc] = Q(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced.entries[r][fc]
        basis.append(tuple(vec))
    return basis


def pair_count(m):
    return m * (m - 1) // 2


def pair_list(m):
    return [(i, j) for i in range(m) for j in range(i + 1, m)]


def pair_index(i, j, m):
    if not 0 <= i < j < m:
        raise ValueError("pair out of range")
    return i * m - i * (i + 1) // 2 + (j - i - 1)


def wedge(u, v):
    """Second-exterior-power coordinates of u and v, pairs in lex order.

    Generic over ring elements (rationals, jets, polynomials).
    """
    u = list(u)
    v = list(v)
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    out = []
    for i in range(len(u)):
        ui, vi = u[i], v[i]
        for j in range(i + 1, len(u)):
            out.append(ui * v[j] - u[j] * vi)
    return out


class SpanAccumulator:
    """Incrementally row-reduced span with leftmost pivots."""

    def __init__(self, dim):
        self.dim = dim
        self.rows = []
        self.pivot_of_row = []

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        """Eliminate all pivot coordinates; returns the residual vector."""
        v = [Q(x) for x in vec]
        for row, p in zip(self.rows, self.pivot_of_row):
            f = v[p]
            if f != 0:
                for k in range(p, self.dim):
                    v[k] -= f * row[k]
        return v

    def insert(self, vec):
        """Add a vector; returns True when it increases the rank."""
        v = self.reduce(vec)
        pivot = next((k for k, x in enumerate(v) if x != 0), None)
        if pivot is None:
            return False
        pv = v[pivot]
        if pv != 1:
            v = [x / pv for x in v]
        for row, p in zip(self.rows, self.pivot_of_row):
            f = row[pivot]
            if f != 0:
                for k in range(self.dim):
                    row[k] -= f * v[k]
        self.rows.append(v)
        self.pivot_of_row.append(pivot)
        order = sorted(range(len(self.rows)), key=lambda r: self.pivot_of_row[r])
        self.rows = [self.rows[r] for r in order]
        self.pivot_of_row = [self.pivot_of_row[r] for r in order]
        return True

    def pivot_columns(self):
        return tuple(self.pivot_of_row)

    def free_columns(self):
        taken = set(self.pivot_of_row)
        return tuple(c for c in range(self.dim) if c not in taken)

    def basis_matrix(self):
        return Mat(self.rows)
