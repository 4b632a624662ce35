"""Seeded instance generators for every special class the toolkit handles.

Determinism contract: the same :class:`GeneratorSpec` always produces the
same instance, byte for byte.  Randomness comes from an explicit
splitmix64 stream (documented in the README) rather than a library RNG,
so the fixtures reproduce across platforms and implementations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .model import Instance
from .reductions import (
    default_penalty,
    disjoint_matchings_to_bap,
    qap_penalty_reduction,
    tap_to_bap,
)

PRNG_NAME = "splitmix64-v1"

KINDS = (
    "uniform",
    "diagonal",
    "linearizable",
    "cvp",
    "rank",
    "qap",
    "tap",
    "disjoint-matchings",
)

_MASK = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 sequence; ``seed`` is reduced mod 2^64."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi] via modular reduction."""
        return lo + self.next_u64() % (hi - lo + 1)

    def uniform01(self) -> float:
        return self.next_u64() / 2.0**64

    def int_array(self, shape, lo: int, hi: int) -> np.ndarray:
        flat = [float(self.randint(lo, hi)) for _ in range(int(np.prod(shape)))]
        return np.array(flat).reshape(shape)


@dataclass(frozen=True)
class GeneratorSpec:
    """Deterministic recipe for one instance.

    ``lo``/``hi`` bound the directly drawn cost entries; structured kinds
    draw their building blocks from ``flo``/``fhi`` instead (rank factors
    default to [-9, 9] so both signs of the coupling get exercised).
    """

    kind: str
    m: int
    n: int
    seed: int
    lo: int = 0
    hi: int = 99
    flo: int | None = None
    fhi: int | None = None
    rank: int = 1
    alpha: float = 2.0
    density: float = 0.5
    sum_side: str = "none"  # none | c | d

    def component_range(self) -> tuple[int, int]:
        if self.flo is not None and self.fhi is not None:
            return self.flo, self.fhi
        if self.kind == "rank":
            return -9, 9
        return 0, 24

    def describe(self) -> dict:
        meta = {
            "generator": PRNG_NAME,
            "kind": self.kind,
            "seed": self.seed,
        }
        if self.kind == "rank":
            meta["rank"] = self.rank
            meta["sum_side"] = self.sum_side
        if self.kind == "disjoint-matchings":
            meta["alpha"] = self.alpha
            meta["density"] = self.density
        return meta


def _sum_matrix(rng: SplitMix64, k: int, lo: int, hi: int) -> np.ndarray:
    s = rng.int_array((k,), lo, hi)
    t = rng.int_array((k,), lo, hi)
    return s[:, None] + t[None, :]


def generate(spec: GeneratorSpec) -> Instance:
    """Materialize the instance a spec describes."""
    if spec.kind not in KINDS:
        raise PreconditionError(f"unknown generator kind {spec.kind!r}")
    if spec.m < 1 or spec.n < 1:
        raise PreconditionError("m and n must be at least 1")
    rng = SplitMix64(spec.seed)
    m, n, lo, hi = spec.m, spec.n, spec.lo, spec.hi
    meta = spec.describe()

    if spec.kind == "uniform":
        Q = rng.int_array((m, m, n, n), lo, hi)
        C = rng.int_array((m, m), lo, hi)
        D = rng.int_array((n, n), lo, hi)
        return Instance(Q, C, D, meta=meta)

    if spec.kind == "diagonal":
        if m != n:
            raise PreconditionError("diagonal kind needs m == n")
        Q = np.zeros((m, m, n, n))
        idx = np.arange(m)
        Q[idx[:, None], idx[None, :], idx[:, None], idx[None, :]] = rng.int_array(
            (m, m), lo, hi
        )
        C = rng.int_array((m, m), lo, hi)
        D = rng.int_array((n, n), lo, hi)
        return Instance(Q, C, D, meta=meta)

    if spec.kind == "linearizable":
        clo, chi = spec.component_range()
        E = rng.int_array((m, m, n), clo, chi)
        F = rng.int_array((m, m, n), clo, chi)
        G = rng.int_array((m, n, n), clo, chi)
        H = rng.int_array((m, n, n), clo, chi)
        Q = E[:, :, :, None] + F[:, :, None, :] + G[:, None, :, :] + H[None, :, :, :]
        C = rng.int_array((m, m), lo, hi)
        D = rng.int_array((n, n), lo, hi)
        return Instance(Q, C, D, meta=meta)

    if spec.kind == "cvp":
        clo, chi = spec.component_range()
        E = rng.int_array((m, m, n), clo, chi)
        F = rng.int_array((m, m, n), clo, chi)
        Q = E[:, :, :, None] + F[:, :, None, :]
        C = rng.int_array((m, m), lo, hi)
        D = rng.int_array((n, n), lo, hi)
        return Instance(Q, C, D, meta=meta)

    if spec.kind == "rank":
        if spec.rank < 1:
            raise PreconditionError("rank must be at least 1")
        clo, chi = spec.component_range()
        factors = []
        Q = np.zeros((m, m, n, n))
        for _ in range(spec.rank):
            a = rng.int_array((m, m), clo, chi)
            b = rng.int_array((n, n), clo, chi)
            factors.append((a, b))
            Q += np.einsum("ij,kl->ijkl", a, b)
        if spec.sum_side == "c":
            C = _sum_matrix(rng, m, lo, hi)
        else:
            C = rng.int_array((m, m), lo, hi)
        if spec.sum_side == "d":
            D = _sum_matrix(rng, n, lo, hi)
        else:
            D = rng.int_array((n, n), lo, hi)
        meta["factors"] = [
            {"A": [float(v) for v in a.ravel()], "B": [float(v) for v in b.ravel()]}
            for a, b in factors
        ]
        return Instance(Q, C, D, meta=meta)

    if spec.kind == "qap":
        if m != n:
            raise PreconditionError("qap kind needs m == n")
        Qprime = rng.int_array((n, n, n, n), lo, hi)
        inst = qap_penalty_reduction(Qprime, default_penalty(Qprime))
        meta["qap_source"] = [float(v) for v in Qprime.ravel()]
        meta["penalty"] = inst.meta["penalty"]
        return Instance(inst.Q, inst.C, inst.D, meta=meta)

    if spec.kind == "tap":
        if m != n:
            raise PreconditionError("tap kind needs m == n")
        cube = rng.int_array((n, n, n), lo, hi)
        inst = tap_to_bap(cube)
        meta["tap_source"] = [float(v) for v in cube.ravel()]
        return Instance(inst.Q, inst.C, inst.D, meta=meta)

    # disjoint-matchings
    if m != n:
        raise PreconditionError("disjoint-matchings kind needs m == n")
    e1 = [(i, j) for i in range(n) for j in range(n) if rng.uniform01() < spec.density]
    e2 = [(i, j) for i in range(n) for j in range(n) if rng.uniform01() < spec.density]
    inst = disjoint_matchings_to_bap(n, e1, e2, alpha=spec.alpha)
    meta["E1"] = [list(e) for e in e1]
    meta["E2"] = [list(e) for e in e2]
    return Instance(inst.Q, inst.C, inst.D, meta=meta)
