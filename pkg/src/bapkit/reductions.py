"""Reductions of related problems into bilinear assignment instances.

Covered: the quadratic assignment problem via diagonal penalties, the
axial three-dimensional assignment problem via a sparse coupling array,
the disjoint matchings decision problem via an identity coupling with
gap costs, and size padding that embeds an (m, n) instance into an
(n, target_n) one without changing the optimum.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, PreconditionError
from .model import Assignment, Instance


def default_penalty(Qprime) -> float:
    """A coupling weight large enough to dominate any cross-term gain."""
    return 1.0 + float(np.abs(np.asarray(Qprime, dtype=float)).sum())


def qap_penalty_reduction(Qprime, L: float) -> Instance:
    """Embed a QAP cost array into a BAP that forces x == y at the optimum.

    Adds L to every C and D entry and subtracts 2L from each q_ijij, so
    a solution pays L * sum((x_ij - y_ij)^2) on top of its QAP value:
    zero when the two permutations agree, at least 2L otherwise.
    """
    Qprime = np.asarray(Qprime, dtype=float)
    if Qprime.ndim != 4 or len(set(Qprime.shape)) != 1:
        raise DimensionError(f"QAP array must be n x n x n x n, got {Qprime.shape}")
    if L <= 0:
        raise PreconditionError(f"penalty L must be positive, got {L}")
    n = Qprime.shape[0]
    Q = Qprime.copy()
    idx = np.arange(n)
    Q[idx[:, None], idx[None, :], idx[:, None], idx[None, :]] -= 2.0 * L
    C = np.full((n, n), L)
    D = np.full((n, n), L)
    return Instance(Q, C, D, meta={"reduction": "qap", "penalty": L})


def tap_to_bap(A) -> Instance:
    """Axial 3AP cube to BAP: q_ijkl = A[i, j, l] when j == k, else 0."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 3 or len(set(A.shape)) != 1:
        raise DimensionError(f"3AP array must be n x n x n, got {A.shape}")
    n = A.shape[0]
    Q = np.zeros((n, n, n, n))
    for j in range(n):
        Q[:, j, j, :] = A[:, j, :]
    return Instance(Q, np.zeros((n, n)), np.zeros((n, n)), meta={"reduction": "tap"})


def disjoint_matchings_to_bap(
    n: int, E1, E2, alpha: float = 2.0, zero_one: bool = False
) -> Instance:
    """Disjoint-matchings instance on K_{n,n} as a BAP with identity Q.

    Edges are 0-based (i, j) pairs.  Yes-instances have optimum exactly
    1/(alpha+1); every other solution costs at least 1.  With
    ``zero_one`` the 1/(alpha+1) entries become 0 (the 0-1 cost variant,
    which trades the gap for integrality).
    """
    if alpha <= 1:
        raise PreconditionError(f"alpha must exceed 1, got {alpha}")
    e1 = {(int(i), int(j)) for i, j in E1}
    e2 = {(int(i), int(j)) for i, j in E2}
    for name, edges in (("E1", e1), ("E2", e2)):
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionError(f"{name} edge ({i}, {j}) outside 0..{n - 1}")

    marker = 0.0 if zero_one else 1.0 / (alpha + 1.0)
    Q = np.zeros((n, n, n, n))
    idx = np.arange(n)
    Q[idx[:, None], idx[None, :], idx[:, None], idx[None, :]] = 1.0
    C = np.ones((n, n))
    D = np.ones((n, n))
    for i, j in e1:
        C[i, j] = marker if i == 0 else 0.0
    for i, j in e2:
        D[i, j] = 0.0
    return Instance(Q, C, D, meta={"reduction": "disjoint-matchings", "alpha": alpha})


def pad_instance(instance: Instance, target_n: int, L: float | None = None) -> Instance:
    """Grow an (m, n) instance to size parameters (n, target_n).

    The original costs occupy the leading blocks; the fresh diagonal
    blocks cost 0 and the mixed row/column blocks cost L, so any optimum
    keeps original rows on original columns and the optimal value is
    unchanged.
    """
    if target_n < instance.n:
        raise PreconditionError(
            f"target size {target_n} is below the instance's n={instance.n}"
        )
    if L is None:
        L = (
            1.0
            + float(np.abs(instance.Q).sum())
            + float(np.abs(instance.C).sum())
            + float(np.abs(instance.D).sum())
        )
    m, n = instance.m, instance.n

    Q = np.zeros((n, n, target_n, target_n))
    Q[:m, :m, :n, :n] = instance.Q

    C = np.full((n, n), L)
    C[:m, :m] = instance.C
    C[m:, m:] = 0.0

    D = np.full((target_n, target_n), L)
    D[:n, :n] = instance.D
    D[n:, n:] = 0.0
    return Instance(Q, C, D, meta={"padded_from": (m, n), "penalty": L})


def recover_solution(padded_sol: Assignment, m: int, n: int) -> Assignment:
    """Restrict a block-respecting padded solution to the original sizes.

    Raises when the solution assigns an original row outside the original
    column block, which signals that the padding penalty was too small.
    """
    for i in range(m):
        if padded_sol.x_perm[i] >= m:
            raise PreconditionError(
                f"x row {i} assigned to padded column {padded_sol.x_perm[i]}; "
                "penalty too small to separate blocks"
            )
    for k in range(n):
        if padded_sol.y_perm[k] >= n:
            raise PreconditionError(
                f"y row {k} assigned to padded column {padded_sol.y_perm[k]}; "
                "penalty too small to separate blocks"
            )
    return Assignment(padded_sol.x_perm[:m], padded_sol.y_perm[:n])
