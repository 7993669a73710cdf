"""Small exact linear algebra helpers over any exact field type.

Vectors are tuples/lists of field elements supporting +, -, *, truthiness
(nonzero test) and division.  Subspaces are given by lists of row vectors.
"""

from __future__ import annotations


def rref(rows):
    """Reduced row echelon form; returns (new_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def row_space_equal(a, b) -> bool:
    ra = rank(a)
    if ra != rank(b):
        return False
    return rank(list(a) + list(b)) == ra


def intersection_dim(a, b) -> int:
    """dim(span a  ∩  span b) via dim A + dim B - dim(A+B)."""
    return rank(a) + rank(b) - rank(list(a) + list(b))


def solve_right(matrix, rhs):
    """Solve M x = rhs exactly; returns x or None when inconsistent.

    ``matrix`` is a list of rows; a particular solution is returned (free
    variables set to zero requires field zero: taken from rhs entries).
    """
    if not matrix:
        return None
    aug = [list(row) + [r] for row, r in zip(matrix, rhs)]
    reduced, pivots = rref(aug)
    ncols = len(matrix[0])
    zero = rhs[0] - rhs[0]
    for row in reduced:
        if not any(row[:ncols]) and row[ncols]:
            return None
    x = [zero for _ in range(ncols)]
    for row, c in zip(reduced, pivots):
        if c < ncols:
            x[c] = row[ncols]
        elif row[ncols]:
            return None
    return x
