"""Dense exact linear algebra over the rationals.

Small hand-rolled routines: the matrices here are tiny (endomorphism unknowns
of spaces of dimension at most 5), and keeping the elimination in-tree pins
down the canonical form the solver modules promise (reduced row echelon,
nullspace vectors with one free variable set to 1, deterministic order).
"""

from __future__ import annotations

from fractions import Fraction

from .core import GradedLinearMap, ZERO, ONE

Matrix = list[list[Fraction]]


def rref(rows: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    m = [list(row) for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = ONE / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows: Matrix) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the solution space of the homogeneous system ``rows @ x = 0``.

    One vector per free column, that free variable set to 1 and the pivot
    variables read off the reduced form; returned in free-column order.
    """
    if ncols is None:
        if not rows:
            raise ValueError("need ncols for an empty constraint system")
        ncols = len(rows[0])
    if not rows:
        reduced, pivots = [], []
    else:
        reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [ZERO] * ncols
        vec[free] = ONE
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -reduced[row_idx][free]
        basis.append(vec)
    return basis


def in_span(basis: list[list[Fraction]], vector: list[Fraction]) -> bool:
    """Exact membership of ``vector`` in the rational span of ``basis``."""
    if all(v == 0 for v in vector):
        return True
    if not basis:
        return False
    stacked = [list(b) for b in basis]
    return rank(stacked) == rank(stacked + [list(vector)])


def invert_map(f: GradedLinearMap) -> GradedLinearMap:
    """Exact inverse of a linear map; raises ValueError when singular."""
    space = f.space
    d = space.dim
    m = f.matrix()
    aug = [list(m[i]) + [ONE if j == i else ZERO for j in range(d)] for i in range(d)]
    reduced, pivots = rref(aug)
    if pivots != list(range(d)):
        raise ValueError("map is singular")
    inv_rows = [reduced[i][d:] for i in range(d)]
    return GradedLinearMap.from_matrix(space, inv_rows, parity=f.parity)


def is_invertible(f: GradedLinearMap) -> bool:
    return rank(f.matrix()) == f.space.dim
