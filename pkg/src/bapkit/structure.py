"""Polynomial special cases driven by the structure of the Q array.

Three families are handled here:

* *linearizable* Q: the bilinear term equals a sum of two independent
  linear assignment objectives on every feasible solution.  This holds
  exactly when Q decomposes as q_ijkl = e_ijk + f_ijl + g_ikl + h_jkl;
  deciding it reduces to a linear least-squares feasibility test.
* *constant value property* (CVP): every row matrix P^(ij) of Q gives a
  LAP whose objective is the same for all permutations, which collapses
  the problem into two independent LAPs.
* *rank one* Q in factored form, with a sum-matrix C or D: two LAP
  solves on the coupling factor bracket the optimum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, PreconditionError
from .lap import solve_lap
from .model import Assignment, Instance, ObjectiveValue, evaluate


@dataclass(frozen=True)
class Linearization:
    """Matrices (A, B) with f-bar(x, y) = sum_i a[i,x(i)] + sum_k b[k,y(k)]."""

    A: np.ndarray
    B: np.ndarray


@dataclass(frozen=True)
class SumDecomposition:
    """Witness arrays for q_ijkl = e_ijk + f_ijl + g_ikl + h_jkl."""

    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    H: np.ndarray

    def materialize(self) -> np.ndarray:
        return (
            self.E[:, :, :, None]
            + self.F[:, :, None, :]
            + self.G[:, None, :, :]
            + self.H[None, :, :, :]
        )


@dataclass(frozen=True)
class FactoredQ:
    """Rank-r factored form: q_ijkl = sum_p A[p][i,j] * B[p][k,l]."""

    factors: tuple[tuple[np.ndarray, np.ndarray], ...]

    def __post_init__(self):
        if len(self.factors) < 1:
            raise DimensionError("factored form needs at least one factor pair")
        object.__setattr__(
            self,
            "factors",
            tuple(
                (np.asarray(a, dtype=float), np.asarray(b, dtype=float))
                for a, b in self.factors
            ),
        )

    @property
    def rank(self) -> int:
        return len(self.factors)


def materialize_q(factored: FactoredQ, m: int, n: int) -> np.ndarray:
    """Dense Q from a factored form; raises on factor shape mismatch."""
    q = np.zeros((m, m, n, n))
    for p, (a, b) in enumerate(factored.factors):
        if a.shape != (m, m):
            raise DimensionError(f"factor {p}: A has shape {a.shape}, expected {(m, m)}")
        if b.shape != (n, n):
            raise DimensionError(f"factor {p}: B has shape {b.shape}, expected {(n, n)}")
        q += np.einsum("ij,kl->ijkl", a, b)
    return q


def default_tol(arr: np.ndarray, rel: float = 1e-7) -> float:
    """Scale-aware residual tolerance for exact-in-theory float tests."""
    return rel * (1.0 + float(np.abs(arr).max(initial=0.0)))


def check_linearizable(Q, tol: float | None = None) -> SumDecomposition | None:
    """Decide whether Q admits the four-way sum decomposition.

    Solves the m^2 n^2 equation system in the 2m^2 n + 2mn^2 unknowns
    (E, F, G, H) by dense least squares with column scaling.  The system
    is rank deficient by design; any solution works since downstream
    consumers only use sums of the unknowns.  Returns a decomposition
    when the max absolute residual is within ``tol`` (default
    1e-7 * (1 + max|q|)), otherwise None.
    """
    Q = np.asarray(Q, dtype=float)
    if Q.ndim != 4 or Q.shape[0] != Q.shape[1] or Q.shape[2] != Q.shape[3]:
        raise DimensionError(f"Q must have shape (m, m, n, n), got {Q.shape}")
    m, n = Q.shape[0], Q.shape[2]
    if tol is None:
        tol = default_tol(Q)

    n_rows = m * m * n * n
    sizes = (m * m * n, m * m * n, m * n * n, m * n * n)
    offsets = np.concatenate(([0], np.cumsum(sizes)))
    n_cols = offsets[-1]

    i, j, k, l = np.unravel_index(np.arange(n_rows), (m, m, n, n))
    design = np.zeros((n_rows, n_cols))
    rows = np.arange(n_rows)
    design[rows, offsets[0] + (i * m + j) * n + k] += 1.0  # e_ijk
    design[rows, offsets[1] + (i * m + j) * n + l] += 1.0  # f_ijl
    design[rows, offsets[2] + (i * n + k) * n + l] += 1.0  # g_ikl
    design[rows, offsets[3] + (j * n + k) * n + l] += 1.0  # h_jkl

    scale = np.linalg.norm(design, axis=0)
    sol_scaled, *_ = np.linalg.lstsq(design / scale, Q.ravel(), rcond=None)
    sol = sol_scaled / scale

    residual = float(np.abs(design @ sol - Q.ravel()).max())
    if residual > tol:
        return None
    return SumDecomposition(
        E=sol[offsets[0] : offsets[1]].reshape(m, m, n),
        F=sol[offsets[1] : offsets[2]].reshape(m, m, n),
        G=sol[offsets[2] : offsets[3]].reshape(m, n, n),
        H=sol[offsets[3] : offsets[4]].reshape(m, n, n),
    )


def extract_linearization(dec: SumDecomposition) -> Linearization:
    """Collapse a sum decomposition into the linearization pair (A, B)."""
    a = (dec.E + dec.F).sum(axis=2)
    b = (dec.G + dec.H).sum(axis=0)
    return Linearization(A=a, B=b)


def solve_linearizable(
    instance: Instance, lin: Linearization
) -> tuple[Assignment, ObjectiveValue]:
    """Optimal solution of a linearizable instance: two decoupled LAPs."""
    xp = solve_lap(lin.A + instance.C, "minimize").perm
    yp = solve_lap(lin.B + instance.D, "minimize").perm
    sol = Assignment(xp, yp)
    return sol, evaluate(instance, sol)


def is_sum_matrix(Tmat, tol: float | None = None) -> tuple[np.ndarray, np.ndarray] | None:
    """Split T into t_ij = s_i + t_j if possible (normalized so t[0] = 0).

    A matrix is of this form exactly when its second mixed differences
    vanish, i.e. T_ij - T_i0 - T_0j + T_00 == 0 for all i, j.
    """
    T = np.asarray(Tmat, dtype=float)
    if T.ndim != 2:
        raise DimensionError(f"expected a matrix, got {T.ndim} axes")
    if tol is None:
        tol = default_tol(T)
    residual = T - (T[:, :1] + T[:1, :] - T[0, 0])
    if float(np.abs(residual).max()) > tol:
        return None
    s = T[:, 0].copy()
    t = T[0, :] - T[0, 0]
    return s, t


def cvp_decompose(instance: Instance, tol: float | None = None) -> np.ndarray | None:
    """Collapsed x-side cost matrix W when the y side is value-constant.

    Each row matrix P^(ij) = Q[i, j] must be a sum matrix (the constant
    value certificate for its LAP); the constant alpha_ij is then any
    permutation's value, taken from the diagonal.  Returns W = alpha + C,
    or None when some P^(ij) fails the test.
    """
    m = instance.m
    alpha = np.zeros((m, m))
    for i in range(m):
        for j in range(m):
            if is_sum_matrix(instance.Q[i, j], tol=tol) is None:
                return None
            alpha[i, j] = float(np.trace(instance.Q[i, j]))
    return alpha + instance.C


def solve_cvp(instance: Instance, W) -> tuple[Assignment, ObjectiveValue]:
    """Optimal solution once CVP holds: LAP over W and LAP over D."""
    xp = solve_lap(W, "minimize").perm
    yp = solve_lap(instance.D, "minimize").perm
    sol = Assignment(xp, yp)
    return sol, evaluate(instance, sol)


def rank_one_solve(
    instance: Instance, factored: FactoredQ, tol: float | None = None
) -> tuple[Assignment, ObjectiveValue]:
    """Solve a rank-one instance whose C or D is a sum matrix.

    With q_ijkl = a_ij * b_kl and (say) D a sum matrix, the D term is the
    same constant for every y, and the optimal y must be an extreme of
    sum(b_kl y_kl): try the minimizing and maximizing assignments of B,
    solve the induced x-side LAP for each, and keep the better pair.
    """
    if factored.rank != 1:
        raise PreconditionError(f"rank precondition: factored rank is {factored.rank}, need 1")
    q_tol = default_tol(instance.Q) if tol is None else tol
    rebuilt = materialize_q(factored, instance.m, instance.n)
    gap = float(np.abs(rebuilt - instance.Q).max())
    if gap > q_tol:
        raise PreconditionError(
            f"consistency precondition: factored form deviates from Q by {gap}"
        )
    a1, b1 = factored.factors[0]

    d_split = is_sum_matrix(instance.D, tol=tol)
    if d_split is not None:
        s, t = d_split
        d_const = float(s.sum() + t.sum())
        y_lo = solve_lap(b1, "minimize")
        y_hi = solve_lap(b1, "maximize")
        best = None
        for lap_y in (y_lo, y_hi):
            lap_x = solve_lap(lap_y.value * a1 + instance.C, "minimize")
            candidate = (lap_x.value + d_const, Assignment(lap_x.perm, lap_y.perm))
            if best is None or candidate[0] < best[0]:
                best = candidate
        return best[1], evaluate(instance, best[1])

    c_split = is_sum_matrix(instance.C, tol=tol)
    if c_split is not None:
        s, t = c_split
        c_const = float(s.sum() + t.sum())
        x_lo = solve_lap(a1, "minimize")
        x_hi = solve_lap(a1, "maximize")
        best = None
        for lap_x in (x_lo, x_hi):
            lap_y = solve_lap(lap_x.value * b1 + instance.D, "minimize")
            candidate = (lap_y.value + c_const, Assignment(lap_x.perm, lap_y.perm))
            if best is None or candidate[0] < best[0]:
                best = candidate
        return best[1], evaluate(instance, best[1])

    raise PreconditionError("sum-matrix precondition: neither C nor D is a sum matrix")


def estimate_rank(Q, threshold_ratio: float = 1e-8) -> int:
    """Numeric rank of Q viewed as an m^2 x n^2 matrix (diagnostic only)."""
    Q = np.asarray(Q, dtype=float)
    m, n = Q.shape[0], Q.shape[2]
    sv = np.linalg.svd(Q.reshape(m * m, n * n), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > threshold_ratio * sv[0]))
