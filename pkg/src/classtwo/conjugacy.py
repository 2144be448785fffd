"""Conjugacy-class counting.

In a class-two group the class of g = (x, u) is g * [g, G], and [g, G] is
the column space of the adjoint matrix of x, so every coset of the derived
group splits into classes of equal size p^rank.  Summing p^(m - rank) over
all x in F_p^k therefore counts classes exactly.  The scan is vectorized:
adjoints for a whole block of vectors are assembled with one tensor
contraction and reduced by batched Gaussian elimination.

A brute-force orbit partition (conjugating by the generators to closure
through the group operations only) serves as the independent oracle.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from classtwo import modp
from classtwo.structure import GroupElement, Presentation

RANKSUM_BUDGET = 10**8
BRUTE_BUDGET = 2 * 10**6

_CHUNK = 1 << 18


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int, what: str):
        super().__init__(f"{what} needs {required} > budget {budget}")
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class ClassCountResult:
    count: int
    method: str  # RANK_SUM | BRUTE_FORCE
    elapsed: float
    rank_tally: dict[int, int]


def ad_matrix(P: Presentation, v) -> np.ndarray:
    """m x k adjoint of v: column j is the commutator value of (v, e_j)."""
    vec = np.asarray(v, dtype=np.int64) % P.p
    return np.tensordot(vec, P.adjoint_slabs(), axes=(0, 0)) % P.p


def ad_rank(P: Presentation, v) -> int:
    return modp.rank(ad_matrix(P, v), P.p)


def _digits_block(start: int, stop: int, p: int, k: int) -> np.ndarray:
    """Rows = base-p digit vectors of start..stop-1 (last coordinate fastest)."""
    n = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, k), dtype=np.int64)
    for col in range(k - 1, -1, -1):
        out[:, col] = n % p
        n //= p
    return out


def class_count_ranksum(P: Presentation, budget: int = RANKSUM_BUDGET) -> ClassCountResult:
    """Exact class count as sum over F_p^k of p^(m - adjoint rank)."""
    t0 = time.perf_counter()
    p, k, m = P.p, P.k, P.m
    total_vectors = p**k
    if total_vectors > budget:
        raise BudgetExceeded(total_vectors, budget, "rank-sum scan")
    slabs = P.adjoint_slabs().astype(np.int32)  # (k, m, k)
    tally = np.zeros(min(m, k) + 1, dtype=np.int64)
    for start in range(0, total_vectors, _CHUNK):
        stop = min(start + _CHUNK, total_vectors)
        V = _digits_block(start, stop, p, k).astype(np.int32)
        adjoints = np.tensordot(V, slabs, axes=(1, 0)) % p  # (B, m, k)
        ranks = modp.batch_rank(adjoints, p)
        tally += np.bincount(ranks, minlength=tally.size)
    count = sum(int(tally[r]) * p ** (m - r) for r in range(tally.size))
    return ClassCountResult(
        count=count,
        method="RANK_SUM",
        elapsed=time.perf_counter() - t0,
        rank_tally={r: int(tally[r]) for r in range(tally.size) if tally[r]},
    )


def class_count_bruteforce(P: Presentation, budget: int = BRUTE_BUDGET) -> ClassCountResult:
    """Class count by partitioning all elements into conjugation orbits."""
    t0 = time.perf_counter()
    p, k, m = P.p, P.k, P.m
    order = P.order
    if order > budget:
        raise BudgetExceeded(order, budget, "brute-force enumeration")

    gens = [P.generator(i) for i in range(k)]
    gen_invs = [P.inverse(g) for g in gens]

    def index(g: GroupElement) -> int:
        val = 0
        for a in g.x:
            val = val * p + a
        for a in g.u:
            val = val * p + a
        return val

    def element(idx: int) -> GroupElement:
        coords = []
        for _ in range(k + m):
            coords.append(idx % p)
            idx //= p
        coords.reverse()
        return GroupElement(tuple(coords[:k]), tuple(coords[k:]))

    seen = bytearray(order)
    n_classes = 0
    sizes_total = 0
    for start in range(order):
        if seen[start]:
            continue
        n_classes += 1
        orbit = [start]
        seen[start] = 1
        frontier = [start]
        while frontier:
            idx = frontier.pop()
            g = element(idx)
            for gen, gen_inv in zip(gens, gen_invs):
                conj = P.multiply(P.multiply(gen_inv, g), gen)
                ci = index(conj)
                if not seen[ci]:
                    seen[ci] = 1
                    orbit.append(ci)
                    frontier.append(ci)
        sizes_total += len(orbit)
    assert sizes_total == order, "orbit sizes do not partition the group"
    return ClassCountResult(
        count=n_classes,
        method="BRUTE_FORCE",
        elapsed=time.perf_counter() - t0,
        rank_tally={},
    )
