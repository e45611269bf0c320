"""Exhaustive partition oracles for the variation estimators.

Every oracle enumerates subsets of a small sample grid directly, with no
shared code path into the package, so agreement is meaningful evidence.
"""
from itertools import combinations

import numpy as np


def _partitions(n_points):
    """All breakpoint index tuples (0, ..., n-1) through interior subsets."""
    interior = range(1, n_points - 1)
    for r in range(len(interior) + 1):
        for mid in combinations(interior, r):
            yield (0, *mid, n_points - 1)


def tv_oracle(values):
    """Max over subset partitions of summed absolute increments."""
    values = np.asarray(values, dtype=float)
    best = 0.0
    for part in _partitions(values.size):
        pts = values[list(part)]
        best = max(best, float(np.sum(np.abs(np.diff(pts)))))
    return best


def qv_oracle(values):
    """Max over subset partitions of summed squared increments."""
    values = np.asarray(values, dtype=float)
    best = 0.0
    for part in _partitions(values.size):
        pts = values[list(part)]
        best = max(best, float(np.sum(np.diff(pts) ** 2)))
    return best


def zv_oracle(f, grid):
    """Max over subset partitions of summed midpoint second differences.

    Cell midpoints are evaluated on f directly, so the enumeration is not
    tied to the package's fine-grid bookkeeping.
    """
    grid = np.asarray(grid, dtype=float)
    vals = np.asarray(f.eval(grid), dtype=float)
    best = 0.0
    for part in _partitions(grid.size):
        total = 0.0
        for i, j in zip(part[:-1], part[1:]):
            mid = 0.5 * (grid[i] + grid[j])
            total += abs(vals[i] + vals[j] - 2.0 * float(f.eval(mid)))
        best = max(best, total)
    return best
