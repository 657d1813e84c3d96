"""Exact rational linear algebra.

Forward elimination is fraction-free (Bareiss) over arbitrary-precision
integers with a deterministic first-nonzero pivot rule; reduced echelon
form normalizes rationally at the end.  Matrices are row-major lists.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

Row = list[Fraction]
Matrix = list[Row]


def _integer_rows(rows: Matrix) -> list[list[int]]:
    out = []
    for row in rows:
        scale = lcm(*(c.denominator for c in row)) if row else 1
        out.append([int(c * scale) for c in row])
    return out


def _bareiss(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.  Returns (echelon rows, pivot columns)."""
    m = [r[:] for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        row_r = m[r]
        for i in range(r + 1, nr):
            # the rescale by piv/prev applies to every row, including rows
            # with a zero pivot-column entry: later exact divisions rely on it
            mic = m[i][c]
            row_i = m[i]
            for j in range(c + 1, nc):
                row_i[j] = (piv * row_i[j] - mic * row_r[j]) // prev
            row_i[c] = 0
        pivots.append(c)
        prev = piv
        r += 1
    return m, pivots


def rank(rows: Matrix) -> int:
    if not rows or not rows[0]:
        return 0
    _, pivots = _bareiss(_integer_rows(rows))
    return len(pivots)


def rref(rows: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over the rationals."""
    if not rows or not rows[0]:
        return [], []
    ech, pivots = _bareiss(_integer_rows(rows))
    nc = len(rows[0])
    reduced: Matrix = []
    for i, c in enumerate(pivots):
        piv = Fraction(ech[i][c])
        reduced.append([Fraction(x) / piv for x in ech[i]])
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        for k in range(i):
            factor = reduced[k][c]
            if factor:
                rk = reduced[k]
                ri = reduced[i]
                for j in range(c, nc):
                    rk[j] -= factor * ri[j]
    return reduced, pivots


def kernel_basis(rows: Matrix, ncols: int) -> Matrix:
    """Basis of the null space, one vector per free column, ascending."""
    if ncols == 0:
        return []
    if not rows:
        basis = []
        for f in range(ncols):
            v = [Fraction(0)] * ncols
            v[f] = Fraction(1)
            basis.append(v)
        return basis
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i][f]
        basis.append(v)
    return basis


def solve_particular(rows: Matrix, rhs: Row) -> Row | None:
    """One solution of rows @ x = rhs with free variables set to zero.

    Returns None when the system is inconsistent.  The solution is the
    deterministic reduced-echelon particular solution.
    """
    if not rows:
        return None if any(rhs) else []
    ncols = len(rows[0])
    augmented = [row + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = reduced[i][ncols]
    return x


def in_row_span(rows: Matrix, vector: Row) -> bool:
    if not any(vector):
        return True
    if not rows:
        return False
    return rank(rows) == rank(rows + [vector])
