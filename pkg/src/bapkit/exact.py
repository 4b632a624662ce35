"""Exact solvers: the global brute-force oracle and x-enumeration.

``brute_force`` evaluates every one of the m!*n! solutions straight from
the objective definition and is the ground truth everything else is
tested against.  ``solve_by_x_enumeration`` walks the m! x-side
permutations only and solves a linear assignment over the induced
y-side costs for each, which is exact at a fraction of the work.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import CapExceededError
from .lap import solve_lap
from .model import (
    Assignment,
    Instance,
    ObjectiveValue,
    enumerate_assignments,
    enumeration_cap,
    evaluate,
)


def brute_force(instance: Instance, cap: int | None = None) -> tuple[Assignment, ObjectiveValue]:
    """Minimize over all feasible solutions; first minimizer in enumeration
    order wins ties."""
    best_sol = None
    best = ObjectiveValue(np.inf, np.inf, np.inf, np.inf)
    for sol in enumerate_assignments(instance.m, instance.n, cap=cap):
        val = evaluate(instance, sol)
        if val.total < best.total:
            best_sol, best = sol, val
    return best_sol, best


def solve_by_x_enumeration(
    instance: Instance, cap: int | None = None
) -> tuple[Assignment, ObjectiveValue]:
    """Exact optimum by enumerating the x side and solving a LAP per x.

    For each x the y-side cost matrix is d_kl + sum_i q[i, x(i), k, l];
    the best (x, LAP-optimal y) pair over all x is a global optimum.
    """
    m, n = instance.m, instance.n
    cap = enumeration_cap() if cap is None else cap
    count = math.factorial(m)
    if count > cap:
        raise CapExceededError(count, cap)

    rows = np.arange(m)
    best_sol = None
    best_value = np.inf
    for xp in itertools.permutations(range(m)):
        h = instance.D + instance.Q[rows, xp].sum(axis=0)
        lap = solve_lap(h, "minimize")
        total = float(instance.C[rows, xp].sum()) + lap.value
        if total < best_value:
            best_value = total
            best_sol = Assignment(xp, lap.perm)
    return best_sol, evaluate(instance, best_sol)


def median_value(instance: Instance, cap: int | None = None) -> float:
    """Median of all m!*n! objective values (lower middle for even counts).

    Enumeration only; there is no polynomial shortcut to aim for here.
    """
    values = sorted(
        evaluate(instance, sol).total
        for sol in enumerate_assignments(instance.m, instance.n, cap=cap)
    )
    return values[(len(values) - 1) // 2]
