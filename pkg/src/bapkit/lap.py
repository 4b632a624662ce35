"""Linear assignment subsolver used by every other module.

The solver is the classic shortest-augmenting-path scheme with dual
potentials (u, v): rows are inserted one at a time and each insertion
runs a Dijkstra-like scan over columns, so the whole solve is O(k^3).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, DimensionError
from .model import enumeration_cap


@dataclass(frozen=True)
class LapResult:
    perm: tuple[int, ...]
    value: float


def _validate(cost) -> np.ndarray:
    cost = np.asarray(cost, dtype=float)
    if cost.ndim != 2 or cost.shape[0] != cost.shape[1]:
        raise DimensionError(f"cost matrix must be square, got shape {cost.shape}")
    if cost.shape[0] < 1:
        raise DimensionError("cost matrix must be at least 1x1")
    if not np.all(np.isfinite(cost)):
        raise DimensionError("cost matrix contains non-finite entries")
    return cost


def _sap_minimize(cost: np.ndarray) -> np.ndarray:
    """Minimum-cost perm via shortest augmenting paths; returns row->col."""
    k = cost.shape[0]
    u = np.zeros(k + 1)
    v = np.zeros(k + 1)
    # row assigned to each column; column k is the virtual start column
    col_row = np.full(k + 1, -1, dtype=int)
    way = np.zeros(k + 1, dtype=int)

    for i in range(k):
        col_row[k] = i
        j0 = k
        minv = np.full(k + 1, np.inf)
        used = np.zeros(k + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = col_row[j0]
            # relax all unused columns from the row just reached
            reduced = cost[i0, :] - u[i0] - v[:k]
            better = ~used[:k] & (reduced < minv[:k])
            minv[:k][better] = reduced[better]
            way[:k][better] = j0
            # an unassigned column always remains reachable, so this is nonempty
            cand = np.where(~used[:k])[0]
            j1 = int(cand[np.argmin(minv[cand])])
            delta = float(minv[j1])
            u[col_row[used]] += delta
            v[used] -= delta
            minv[~used] -= delta
            j0 = j1
            if col_row[j0] == -1:
                break
        # augment along the alternating path back to the virtual column
        while j0 != k:
            j1 = way[j0]
            col_row[j0] = col_row[j1]
            j0 = j1

    perm = np.empty(k, dtype=int)
    perm[col_row[:k]] = np.arange(k)
    return perm


def solve_lap(cost, sense: str = "minimize") -> LapResult:
    """Optimal assignment for a square cost matrix.

    ``sense`` is "minimize" or "maximize"; maximization is solved by
    negating the costs.  The reported value is the exact sum of the
    selected entries of the original matrix.
    """
    cost = _validate(cost)
    if sense == "minimize":
        perm = _sap_minimize(cost)
    elif sense == "maximize":
        perm = _sap_minimize(-cost)
    else:
        raise ValueError(f"sense must be 'minimize' or 'maximize', got {sense!r}")
    value = float(cost[np.arange(cost.shape[0]), perm].sum())
    return LapResult(tuple(int(j) for j in perm), value)


def lap_value_all(cost, cap: int | None = None) -> list[float]:
    """Objective values of all k! permutations (testing aid, cap guarded)."""
    cost = _validate(cost)
    k = cost.shape[0]
    cap = enumeration_cap() if cap is None else cap
    count = math.factorial(k)
    if count > cap:
        raise CapExceededError(count, cap)
    rows = np.arange(k)
    return [float(cost[rows, perm].sum()) for perm in itertools.permutations(range(k))]
