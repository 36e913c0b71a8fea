"""Exact Gaussian elimination over fields with decidable zero tests.

Entries may be int, Fraction, or QuadraticFieldElement; anything with
exact +, -, *, / and == 0 works.  Pivots are chosen leftmost-first in row
order, so every routine is deterministic; no magnitude pivoting is needed
because arithmetic is exact.
"""

from fractions import Fraction

from .errors import DimensionError


def _entry(x):
    return Fraction(x) if isinstance(x, int) else x


def rref(rows, width: int):
    """Reduced row echelon form.  Returns (reduced rows, pivot columns)."""
    mat = [[_entry(x) for x in row] for row in rows]
    for row in mat:
        if len(row) != width:
            raise DimensionError(f"row of length {len(row)}, expected {width}")
    pivots = []
    r = 0
    for c in range(width):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = mat[r][c]
        mat[r] = [x / inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def kernel_basis(rows, width: int):
    """Basis of the right kernel, one vector per free column, in column order."""
    reduced, pivots = rref(rows, width)
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * width
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -reduced[i][f]
        basis.append(tuple(vec))
    return basis


def solve(rows, rhs):
    """One exact solution of rows * x = rhs (free variables set to 0).

    Returns None when the system is inconsistent.
    """
    if len(rows) != len(rhs):
        raise DimensionError(f"{len(rows)} rows but {len(rhs)} right-hand sides")
    width = len(rows[0]) if rows else 0
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, width + 1)
    if width in pivots:
        return None
    x = [Fraction(0)] * width
    for i, p in enumerate(pivots):
        x[p] = reduced[i][width]
    return tuple(x)


def _determinant_bareiss(mat):
    """Fraction-free elimination for integer matrices; every intermediate
    entry is an exact minor, so no rational normalization happens."""
    n = len(mat)
    sign = 1
    prev = 1
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            mat[c], mat[pivot_row] = mat[pivot_row], mat[c]
            sign = -sign
        pivot = mat[c][c]
        for i in range(c + 1, n):
            row = mat[i]
            lead = row[c]
            for j in range(c + 1, n):
                row[j] = (pivot * row[j] - lead * mat[c][j]) // prev
            row[c] = 0
        prev = pivot
    return Fraction(sign * mat[n - 1][n - 1])


def determinant(matrix):
    """Exact determinant of a square matrix.

    Integer matrices go through fraction-free (Bareiss) elimination;
    anything else falls back to ordinary Gaussian elimination over the
    field of the entries.
    """
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise DimensionError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    if all(isinstance(x, int) for row in matrix for x in row):
        return _determinant_bareiss([list(row) for row in matrix])
    mat = [[_entry(x) for x in row] for row in matrix]
    sign = 1
    det = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            mat[c], mat[pivot_row] = mat[pivot_row], mat[c]
            sign = -sign
        det = det * mat[c][c]
        inv = mat[c][c]
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                f = mat[i][c] / inv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
    return sign * det


def independent_row_indices(rows, width: int):
    """Indices of the first maximal linearly independent subset of rows.

    Rows are taken in order, so the result is deterministic: a row is kept
    exactly when it is independent of the kept rows before it.
    """
    kept = []
    echelon = []  # (pivot column, normalized row)
    for idx, row in enumerate(rows):
        work = [_entry(x) for x in row]
        if len(work) != width:
            raise DimensionError(f"row of length {len(work)}, expected {width}")
        for pivot_col, pivot_row in echelon:
            if work[pivot_col] != 0:
                f = work[pivot_col]
                work = [a - f * b for a, b in zip(work, pivot_row)]
        lead = next((c for c in range(width) if work[c] != 0), None)
        if lead is None:
            continue
        inv = work[lead]
        work = [x / inv for x in work]
        echelon.append((lead, work))
        echelon.sort(key=lambda item: item[0])
        kept.append(idx)
    return kept
