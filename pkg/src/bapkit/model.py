"""Problem instances, feasible solutions and objective evaluation.

An instance is the cost triple (Q, C, D) where Q is an m x m x n x n
array coupling the two sides, C is an m x m matrix for the x-side and
D is an n x n matrix for the y-side.  Feasible solutions are pairs of
permutations; the x-side permutes {0..m-1} and the y-side {0..n-1}.
All indices are 0-based throughout the package.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import CapExceededError, DimensionError, FeasibilityError

DEFAULT_ENUM_CAP = 10**7
ENUM_CAP_ENV = "BAPKIT_ENUM_CAP"

#: tolerance for the doubly stochastic feasibility checks
STOCHASTIC_TOL = 1e-9


def enumeration_cap() -> int:
    """Active enumeration cap; override with the BAPKIT_ENUM_CAP env var."""
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return DEFAULT_ENUM_CAP
    return int(raw)


def _as_readonly(a, dtype=float) -> np.ndarray:
    out = np.array(a, dtype=dtype)
    out.setflags(write=False)
    return out


class Instance:
    """Immutable cost triple (Q, C, D) with size parameters m <= n.

    If the arrays are handed in with m > n, the two sides are swapped
    (Q index-transposed, C and D exchanged) so that m <= n always holds
    internally; the swap is recorded in ``meta["swapped_mn"]``.
    """

    __slots__ = ("Q", "C", "D", "m", "n", "meta")

    def __init__(self, Q, C, D, meta: dict | None = None):
        Q = np.asarray(Q, dtype=float)
        C = np.asarray(C, dtype=float)
        D = np.asarray(D, dtype=float)
        meta = dict(meta) if meta else {}

        if C.ndim != 2 or C.shape[0] != C.shape[1]:
            raise DimensionError(f"C must be square, got shape {C.shape}")
        if D.ndim != 2 or D.shape[0] != D.shape[1]:
            raise DimensionError(f"D must be square, got shape {D.shape}")
        m, n = C.shape[0], D.shape[0]
        if m < 1 or n < 1:
            raise DimensionError("m and n must be at least 1")
        if Q.shape != (m, m, n, n):
            raise DimensionError(
                f"Q must have shape {(m, m, n, n)} to match C and D, got {Q.shape}"
            )
        for name, arr in (("Q", Q), ("C", C), ("D", D)):
            if not np.all(np.isfinite(arr)):
                raise DimensionError(f"{name} contains non-finite entries")

        if m > n:
            Q = Q.transpose(2, 3, 0, 1).copy()
            C, D = D, C
            m, n = n, m
            meta["swapped_mn"] = True

        self.Q = _as_readonly(Q)
        self.C = _as_readonly(C)
        self.D = _as_readonly(D)
        self.m = m
        self.n = n
        self.meta = meta

    def solution_count(self) -> int:
        return math.factorial(self.m) * math.factorial(self.n)

    def __repr__(self):
        return f"Instance(m={self.m}, n={self.n})"


def _check_perm(perm, size, side) -> tuple[int, ...]:
    p = tuple(int(v) for v in perm)
    if len(p) != size:
        raise DimensionError(f"{side} permutation has length {len(p)}, expected {size}")
    if sorted(p) != list(range(size)):
        raise DimensionError(f"{side} permutation is not a bijection on 0..{size - 1}")
    return p


@dataclass(frozen=True)
class Assignment:
    """A feasible solution: x_perm on the m side, y_perm on the n side.

    ``x_perm[i] == j`` encodes x_ij = 1, likewise for y.
    """

    x_perm: tuple[int, ...]
    y_perm: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x_perm", _check_perm(self.x_perm, len(self.x_perm), "x"))
        object.__setattr__(self, "y_perm", _check_perm(self.y_perm, len(self.y_perm), "y"))

    @staticmethod
    def identity(m: int, n: int) -> "Assignment":
        return Assignment(tuple(range(m)), tuple(range(n)))

    def swapped(self) -> "Assignment":
        return Assignment(self.y_perm, self.x_perm)

    def x_matrix(self) -> np.ndarray:
        mat = np.zeros((len(self.x_perm), len(self.x_perm)))
        mat[np.arange(len(self.x_perm)), self.x_perm] = 1.0
        return mat

    def y_matrix(self) -> np.ndarray:
        mat = np.zeros((len(self.y_perm), len(self.y_perm)))
        mat[np.arange(len(self.y_perm)), self.y_perm] = 1.0
        return mat


@dataclass(frozen=True)
class FractionalSolution:
    """A feasible point of the doubly stochastic relaxation."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", _as_readonly(self.x))
        object.__setattr__(self, "y", _as_readonly(self.y))
        _check_doubly_stochastic(self.x, "x")
        _check_doubly_stochastic(self.y, "y")

    @staticmethod
    def from_assignment(sol: Assignment) -> "FractionalSolution":
        return FractionalSolution(sol.x_matrix(), sol.y_matrix())


def _check_doubly_stochastic(mat: np.ndarray, side: str, tol: float = STOCHASTIC_TOL):
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise FeasibilityError(f"{side} matrix must be square, got shape {mat.shape}")
    if np.any(mat < -tol) or np.any(mat > 1 + tol):
        bad = np.argwhere((mat < -tol) | (mat > 1 + tol))[0]
        raise FeasibilityError(f"{side}[{bad[0]},{bad[1]}] outside [0,1]")
    rows = mat.sum(axis=1)
    cols = mat.sum(axis=0)
    for axis, sums in (("row", rows), ("column", cols)):
        off = np.abs(sums - 1.0)
        if off.max() > tol:
            k = int(off.argmax())
            raise FeasibilityError(f"{side} {axis} {k} sums to {sums[k]!r}, expected 1")


@dataclass(frozen=True)
class ObjectiveValue:
    """Objective split into its bilinear and two linear components."""

    total: float
    quadratic: float
    linear_x: float
    linear_y: float


def evaluate(instance: Instance, sol: Assignment) -> ObjectiveValue:
    """Objective value of a feasible solution, O(mn) via permutation encoding."""
    m, n = instance.m, instance.n
    if len(sol.x_perm) != m:
        raise DimensionError(f"x permutation has length {len(sol.x_perm)}, instance m={m}")
    if len(sol.y_perm) != n:
        raise DimensionError(f"y permutation has length {len(sol.y_perm)}, instance n={n}")
    xp = np.asarray(sol.x_perm)
    yp = np.asarray(sol.y_perm)
    im = np.arange(m)
    kn = np.arange(n)
    quad = float(instance.Q[im[:, None], xp[:, None], kn[None, :], yp[None, :]].sum())
    lin_x = float(instance.C[im, xp].sum())
    lin_y = float(instance.D[kn, yp].sum())
    return ObjectiveValue(quad + lin_x + lin_y, quad, lin_x, lin_y)


def evaluate_fractional(instance: Instance, frac: FractionalSolution) -> float:
    """Bilinear objective at a doubly stochastic point.

    Agrees with :func:`evaluate` when ``frac`` is the 0-1 embedding of an
    assignment.
    """
    if frac.x.shape != (instance.m, instance.m):
        raise DimensionError(
            f"x matrix has shape {frac.x.shape}, instance m={instance.m}"
        )
    if frac.y.shape != (instance.n, instance.n):
        raise DimensionError(
            f"y matrix has shape {frac.y.shape}, instance n={instance.n}"
        )
    quad = float(np.einsum("ijkl,ij,kl->", instance.Q, frac.x, frac.y))
    return quad + float((instance.C * frac.x).sum()) + float((instance.D * frac.y).sum())


def enumerate_assignments(m: int, n: int, cap: int | None = None) -> Iterator[Assignment]:
    """Yield all m!*n! solutions in lexicographic (x, then y) order.

    Refuses with :class:`CapExceededError` when the count exceeds the cap.
    """
    cap = enumeration_cap() if cap is None else cap
    count = math.factorial(m) * math.factorial(n)
    if count > cap:
        raise CapExceededError(count, cap)
    for xp in itertools.permutations(range(m)):
        for yp in itertools.permutations(range(n)):
            yield Assignment(xp, yp)
