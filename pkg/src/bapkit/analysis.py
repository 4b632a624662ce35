"""Enumeration-backed statistics: value profiles, domination, shift classes.

The solution set splits under simultaneous cyclic column shifts into
(m-1)!(n-1)! classes of size mn whose class mean equals the global
average, which is what guarantees that at least (m-1)!(n-1)! solutions
are no better than average.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .heuristics import average_value
from .model import Assignment, Instance, enumerate_assignments, evaluate

#: slack applied toward inclusion so float noise cannot undercount the
#: no-better-than-average set
DOMINATION_SLACK = 1e-9


@dataclass(frozen=True)
class ValueProfile:
    """Exhaustive objective statistics over all m!*n! solutions."""

    values: tuple[float, ...]
    mean: float
    median: float
    min: float
    max: float


def value_profile(instance: Instance, cap: int | None = None) -> ValueProfile:
    """Full enumeration statistics (median is the lower middle element)."""
    values = sorted(
        evaluate(instance, sol).total
        for sol in enumerate_assignments(instance.m, instance.n, cap=cap)
    )
    arr = np.asarray(values)
    return ValueProfile(
        values=tuple(values),
        mean=float(arr.mean()),
        median=values[(len(values) - 1) // 2],
        min=values[0],
        max=values[-1],
    )


def domination_count(instance: Instance, cap: int | None = None) -> int:
    """Number of solutions with value >= the average (inclusion-slack 1e-9)."""
    threshold = average_value(instance) - DOMINATION_SLACK
    return sum(
        1
        for sol in enumerate_assignments(instance.m, instance.n, cap=cap)
        if evaluate(instance, sol).total >= threshold
    )


def _shift_perm(perm: tuple[int, ...], a: int) -> tuple[int, ...]:
    size = len(perm)
    return tuple((v + a) % size for v in perm)


def equivalence_class(m: int, n: int, representative: Assignment) -> set[Assignment]:
    """The mn solutions reachable from the representative by cyclic shifts."""
    return {
        Assignment(_shift_perm(representative.x_perm, a), _shift_perm(representative.y_perm, b))
        for a in range(m)
        for b in range(n)
    }


def canonical_representative(sol: Assignment) -> Assignment:
    """Class representative shifted so each permutation maps 0 to 0."""
    m, n = len(sol.x_perm), len(sol.y_perm)
    return Assignment(
        _shift_perm(sol.x_perm, (-sol.x_perm[0]) % m),
        _shift_perm(sol.y_perm, (-sol.y_perm[0]) % n),
    )


def class_average_check(
    instance: Instance, representative: Assignment
) -> tuple[float, float, float]:
    """(min, max, mean) of the representative's class; mean equals the average."""
    values = [
        evaluate(instance, sol).total
        for sol in equivalence_class(instance.m, instance.n, representative)
    ]
    return min(values), max(values), float(np.mean(values))
