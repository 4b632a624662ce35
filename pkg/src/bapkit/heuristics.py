"""Rounding, average-value and shift-family heuristics plus local search.

The two rounding procedures never increase the objective relative to the
fractional point they start from, so starting them at the uniform
doubly stochastic point yields a solution no worse than the average of
all feasible solutions.  The cyclic shift family gives the same
below-average guarantee in O(m^2 n^2) without any LAP solve.
"""

from __future__ import annotations

import numpy as np

from .errors import PreconditionError
from .lap import solve_lap
from .model import (
    Assignment,
    FractionalSolution,
    Instance,
    evaluate,
)


def average_value(instance: Instance) -> float:
    """Closed-form mean of the objective over all m!*n! solutions."""
    return (
        float(instance.Q.sum()) / (instance.m * instance.n)
        + float(instance.C.sum()) / instance.m
        + float(instance.D.sum()) / instance.n
    )


def uniform_fractional(m: int, n: int) -> FractionalSolution:
    """The uniform doubly stochastic pair (all entries 1/m resp. 1/n)."""
    return FractionalSolution(np.full((m, m), 1.0 / m), np.full((n, n), 1.0 / n))


def _x_cost(instance: Instance, y_mat: np.ndarray) -> np.ndarray:
    return instance.C + np.einsum("ijkl,kl->ij", instance.Q, y_mat)


def _y_cost(instance: Instance, x_mat: np.ndarray) -> np.ndarray:
    return instance.D + np.einsum("ijkl,ij->kl", instance.Q, x_mat)


def _y_cost_perm(instance: Instance, xp) -> np.ndarray:
    rows = np.arange(instance.m)
    return instance.D + instance.Q[rows, list(xp)].sum(axis=0)


def _x_cost_perm(instance: Instance, yp) -> np.ndarray:
    cols = np.arange(instance.n)
    return instance.C + instance.Q[:, :, cols, list(yp)].sum(axis=2)


def round_x_optimize_y(instance: Instance, frac: FractionalSolution) -> Assignment:
    """Round the x side by a LAP against the fractional y, then optimize y.

    The result never exceeds the fractional objective value.
    """
    h = _x_cost(instance, frac.y)
    xp = solve_lap(h, "minimize").perm
    g = _y_cost_perm(instance, xp)
    yp = solve_lap(g, "minimize").perm
    return Assignment(xp, yp)


def round_y_optimize_x(instance: Instance, frac: FractionalSolution) -> Assignment:
    """Mirror image of :func:`round_x_optimize_y`: round y first, optimize x."""
    g = _y_cost(instance, frac.x)
    yp = solve_lap(g, "minimize").perm
    h = _x_cost_perm(instance, yp)
    xp = solve_lap(h, "minimize").perm
    return Assignment(xp, yp)


def shift_solution(instance: Instance, a: int, b: int) -> Assignment:
    """The cyclic-shift solution with x(i) = i+a mod m and y(k) = k+b mod n."""
    m, n = instance.m, instance.n
    if not 0 <= a < m:
        raise PreconditionError(f"shift a={a} outside [0, {m})")
    if not 0 <= b < n:
        raise PreconditionError(f"shift b={b} outside [0, {n})")
    xp = tuple((i + a) % m for i in range(m))
    yp = tuple((k + b) % n for k in range(n))
    return Assignment(xp, yp)


def best_shift(instance: Instance) -> tuple[Assignment, float]:
    """Best of the m*n cyclic-shift solutions; value never exceeds the average.

    Ties go to the lexicographically smallest (a, b).
    """
    best_sol = None
    best_value = np.inf
    for a in range(instance.m):
        for b in range(instance.n):
            sol = shift_solution(instance, a, b)
            value = evaluate(instance, sol).total
            if value < best_value:
                best_sol, best_value = sol, value
    return best_sol, best_value


def alternating_search(
    instance: Instance,
    start: Assignment,
    max_rounds: int = 100,
    tol: float = 1e-9,
    trace: list[float] | None = None,
) -> Assignment:
    """Alternate LAP re-optimization of y given x and x given y.

    Each half-step is a LAP solve, so the objective is non-increasing;
    the loop stops once a full round improves by less than ``tol`` or
    after ``max_rounds`` rounds.  If ``trace`` is a list, the objective
    after the start and after every half-step is appended to it.
    """
    xp, yp = start.x_perm, start.y_perm
    value = evaluate(instance, start).total
    if trace is not None:
        trace.append(value)
    c_rows = np.arange(instance.m)
    d_rows = np.arange(instance.n)
    for _ in range(max_rounds):
        round_start = value

        g = _y_cost_perm(instance, xp)
        lap_y = solve_lap(g, "minimize")
        yp = lap_y.perm
        value = float(instance.C[c_rows, list(xp)].sum()) + lap_y.value
        if trace is not None:
            trace.append(value)

        h = _x_cost_perm(instance, yp)
        lap_x = solve_lap(h, "minimize")
        xp = lap_x.perm
        value = float(instance.D[d_rows, list(yp)].sum()) + lap_x.value
        if trace is not None:
            trace.append(value)

        if round_start - value < tol:
            break
    return Assignment(xp, yp)
