"""Gaussian elimination over Q(zeta_n)."""

from __future__ import annotations

from dataclasses import dataclass


class InconsistentSystem(ValueError):
    """Raised by ``solve`` when no solution exists.

    ``defect`` is the index of an equation (in the reduced system) reading
    ``0 = c`` with ``c != 0``; ``rank`` is the rank of the coefficient matrix.
    """

    def __init__(self, msg, rank, defect):
        super().__init__(msg)
        self.rank = rank
        self.defect = defect


@dataclass
class Echelon:
    rows: list  # reduced rows (each a list of Scalars, augmented if rhs given)
    pivots: list  # pivot column per row
    ncols: int


def rref(matrix, ctx, ncols=None) -> Echelon:
    """Reduced row echelon form. Works on a copy; entries must be Scalars of ctx."""
    rows = [list(r) for r in matrix]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        prow = rows[r]
        nz = [j for j, x in enumerate(prow) if x]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][col]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return Echelon(rows[:r] + rows[r:], pivots, ncols)


def rank(matrix, ctx) -> int:
    if not matrix:
        return 0
    return len(rref(matrix, ctx).pivots)


def solve(matrix, rhs, ctx):
    """Solve ``matrix @ x = rhs`` exactly.

    Returns ``(particular, nullspace)``: one solution (free variables set to 0)
    and a basis of the homogeneous solution space.
    """
    n = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    ech = rref(aug, ctx, ncols=n)
    nrank = len(ech.pivots)
    for i in range(nrank, len(ech.rows)):
        if ech.rows[i][n]:
            raise InconsistentSystem(
                f"inconsistent linear system (rank {nrank}, equation {i})", nrank, i
            )
    x = [ctx.zero] * n
    for i, col in enumerate(ech.pivots):
        x[col] = ech.rows[i][n]
    return x, _nullspace_from(ech, n, ctx)


def nullspace(matrix, ctx, ncols=None):
    if ncols is None:
        ncols = len(matrix[0])
    if not matrix:
        return [[ctx.one if i == j else ctx.zero for i in range(ncols)] for j in range(ncols)]
    ech = rref(matrix, ctx, ncols=ncols)
    return _nullspace_from(ech, ncols, ctx)


def _nullspace_from(ech: Echelon, n, ctx):
    pivset = set(ech.pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [ctx.zero] * n
        v[free] = ctx.one
        for i, col in enumerate(ech.pivots):
            v[col] = -ech.rows[i][free]
        basis.append(v)
    return basis


class Singular(ValueError):
    pass


def inverse_matrix(matrix, ctx):
    """Exact inverse of a square matrix (list of rows); raises Singular."""
    n = len(matrix)
    aug = [list(row) + [ctx.one if i == j else ctx.zero for j in range(n)] for i, row in enumerate(matrix)]
    ech = rref(aug, ctx, ncols=n)
    if len(ech.pivots) < n:
        raise Singular(f"matrix has rank {len(ech.pivots)} < {n}")
    return [row[n:] for row in ech.rows[:n]]
