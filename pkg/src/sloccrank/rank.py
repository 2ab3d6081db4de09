"""Exact rank and determinant of scalar matrices, plus a floating cross-check.

The exact routines run Gaussian elimination over Q(i, sqrt2) with
first-nonzero pivoting (magnitude pivoting is meaningless in an exact
field), so results are deterministic and carry no tolerance.  The numeric
rank goes through an SVD of the complex-double image of the matrix and acts
as an independent oracle for the exact path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coeffmatrix import CoeffMatrix
from .scalar import ONE, ZERO, Scalar

__all__ = [
    "RankResult",
    "ShapeError",
    "NumericFailure",
    "exact_rank",
    "exact_det",
    "numeric_rank",
    "to_complex_array",
]


@dataclass(frozen=True)
class RankResult:
    rank: int
    pivot_columns: tuple[int, ...]


class ShapeError(ValueError):
    """Operation requires a differently shaped matrix (e.g. square)."""


class NumericFailure(RuntimeError):
    """The floating-point backend failed to converge."""


def _grid(matrix) -> list[list[Scalar]]:
    if isinstance(matrix, CoeffMatrix):
        return [list(row) for row in matrix.entries]
    return [list(row) for row in matrix]


def exact_rank(matrix) -> RankResult:
    """Row-echelon rank over Q(i, sqrt2); exact, no thresholds involved."""
    grid = _grid(matrix)
    if not grid or not grid[0]:
        return RankResult(0, ())
    nrows, ncols = len(grid), len(grid[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if grid[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        grid[r], grid[pivot_row] = grid[pivot_row], grid[r]
        inv = grid[r][c].inverse()
        lead = grid[r]
        for i in range(r + 1, nrows):
            row = grid[i]
            if not row[c]:
                continue
            factor = row[c] * inv
            row[c] = ZERO
            for j in range(c + 1, ncols):
                if lead[j]:
                    row[j] = row[j] - factor * lead[j]
        pivots.append(c)
        r += 1
    return RankResult(r, tuple(pivots))


def exact_det(matrix) -> Scalar:
    """Exact determinant by fraction-free (Bareiss) elimination.

    The division by the previous pivot is exact at every step, which keeps
    intermediate entries from blowing up the way plain elimination would.
    """
    grid = _grid(matrix)
    n = len(grid)
    if any(len(row) != n for row in grid):
        raise ShapeError(f"determinant needs a square matrix, got {n}x{len(grid[0]) if grid else 0}")
    if n == 0:
        return ONE
    sign = 1
    previous = ONE
    for k in range(n - 1):
        if not grid[k][k]:
            swap = None
            for i in range(k + 1, n):
                if grid[i][k]:
                    swap = i
                    break
            if swap is None:
                return ZERO
            grid[k], grid[swap] = grid[swap], grid[k]
            sign = -sign
        pivot = grid[k][k]
        prev_inv = previous.inverse()
        for i in range(k + 1, n):
            row = grid[i]
            head = row[k]
            lead = grid[k]
            for j in range(k + 1, n):
                row[j] = (pivot * row[j] - head * lead[j]) * prev_inv
            row[k] = ZERO
        previous = pivot
    det = grid[n - 1][n - 1]
    return det if sign == 1 else -det


def to_complex_array(matrix) -> np.ndarray:
    """Complex-double image of a scalar matrix."""
    grid = _grid(matrix)
    return np.array([[complex(entry) for entry in row] for row in grid], dtype=complex)


def numeric_rank(matrix, tol: float | None = None) -> int:
    """Singular-value rank of the floating image of ``matrix``.

    The default threshold is max(rows, cols) * machine epsilon * largest
    singular value; a matrix whose largest singular value is zero has rank 0.
    """
    array = to_complex_array(matrix)
    if array.size == 0:
        return 0
    try:
        singular_values = np.linalg.svd(array, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"SVD did not converge: {exc}") from exc
    if singular_values.size == 0 or singular_values[0] == 0.0:
        return 0
    if tol is None:
        tol = max(array.shape) * np.finfo(float).eps * float(singular_values[0])
    return int((singular_values > tol).sum())
