"""Class-two exponent-p groups as alternating bilinear structures.

A group here is determined by a generator rank k, an odd prime p, and a
relation subspace W of the exterior square of F_p^k.  The derived group is
the quotient of the exterior square by W; its dimension m gives the group
order p^(k+m).  Elements are normal-form pairs (x, u) with x in F_p^k and
u in F_p^m, multiplied through a bilinear twist so that the commutator of
generators i < j is exactly the structure-tensor entry c_ij.

Generator indices are 0-based internally; catalog letters a, b, c, ... map
to 0, 1, 2, ...
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from classtwo import modp
from classtwo.ffield import _as_p


def wedge_dim(k: int) -> int:
    return k * (k - 1) // 2


def wedge_pos(i: int, j: int, k: int) -> int:
    """Lexicographic position of the pair (i, j), 0 <= i < j < k."""
    if not 0 <= i < j < k:
        raise ValueError(f"bad wedge pair ({i}, {j}) for k={k}")
    return i * (2 * k - i - 1) // 2 + (j - i - 1)


def wedge_pairs(k: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(k) for j in range(i + 1, k)]


@dataclass(frozen=True, eq=False)
class RelationSubspace:
    """A subspace W of the exterior square, stored as an RREF basis."""

    k: int
    p: int
    basis: np.ndarray  # (dim, K) int64, reduced row echelon form
    pivots: tuple[int, ...]

    @classmethod
    def from_rows(cls, k: int, p: int, rows) -> "RelationSubspace":
        q = _as_p(p)
        K = wedge_dim(k)
        arr = np.array(rows, dtype=np.int64).reshape(-1, K) % q
        if arr.size == 0:
            return cls(k, q, np.zeros((0, K), dtype=np.int64), ())
        R, piv = modp.rref(arr, q)
        R = R[: len(piv)]
        return cls(k, q, R, tuple(piv))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        """Reduce a wedge vector modulo W (supported on non-pivot coords)."""
        v = np.array(vec, dtype=np.int64) % self.p
        for row, pc in zip(self.basis, self.pivots):
            if v[pc]:
                v = (v - v[pc] * row) % self.p
        return v

    def contains(self, vec: np.ndarray) -> bool:
        return not self.reduce(vec).any()


class GroupElement(NamedTuple):
    x: tuple[int, ...]
    u: tuple[int, ...]


@dataclass(frozen=True)
class Diagnostics:
    ok: bool
    failures: tuple[str, ...]


@dataclass(frozen=True, eq=False)
class Presentation:
    """An instantiated class-two exponent-p group of order p^(k+m)."""

    k: int
    m: int
    p: int
    W: RelationSubspace
    c: np.ndarray  # (K, m): image of each wedge coordinate in the quotient
    name: str = ""
    # per-generator adjoint slabs: slab[i][:, j] = commutator value of (i, j)
    _slabs: np.ndarray = field(repr=False, default=None)

    @classmethod
    def from_subspace(cls, k: int, p: int, W: RelationSubspace, name: str = "") -> "Presentation":
        c = quotient_map(W)
        m = c.shape[1]
        slabs = _adjoint_slabs(k, m, p, c)
        return cls(k=k, m=m, p=p, W=W, c=c, name=name, _slabs=slabs)

    @property
    def order(self) -> int:
        return self.p ** (self.k + self.m)

    @property
    def order_exponent(self) -> int:
        return self.k + self.m

    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.k, (0,) * self.m)

    def generator(self, i: int) -> GroupElement:
        x = [0] * self.k
        x[i] = 1
        return GroupElement(tuple(x), (0,) * self.m)

    def element(self, x, u=None) -> GroupElement:
        xs = tuple(int(v) % self.p for v in x)
        us = tuple(int(v) % self.p for v in (u if u is not None else ()))
        us = us + (0,) * (self.m - len(us))
        if len(xs) != self.k or len(us) != self.m:
            raise ValueError("element coordinates have wrong length")
        return GroupElement(xs, us)

    # -- bilinear maps ----------------------------------------------------

    def twist(self, x, y) -> tuple[int, ...]:
        """The collection cocycle: -sum_{i<j} x_j y_i c_ij."""
        p, m = self.p, self.m
        acc = [0] * m
        for pos, (i, j) in enumerate(wedge_pairs(self.k)):
            coeff = -x[j] * y[i]
            if coeff % p:
                row = self.c[pos]
                for s in range(m):
                    acc[s] += coeff * row[s]
        return tuple(v % p for v in acc)

    def commutator_map(self, x, y) -> tuple[int, ...]:
        """sum_{i<j} (x_i y_j - x_j y_i) c_ij, i.e. the commutator of x and y."""
        p, m = self.p, self.m
        acc = [0] * m
        for pos, (i, j) in enumerate(wedge_pairs(self.k)):
            coeff = x[i] * y[j] - x[j] * y[i]
            if coeff % p:
                row = self.c[pos]
                for s in range(m):
                    acc[s] += coeff * row[s]
        return tuple(v % p for v in acc)

    # -- group operations --------------------------------------------------

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        p = self.p
        x = tuple((a + b) % p for a, b in zip(g.x, h.x))
        t = self.twist(g.x, h.x)
        u = tuple((a + b + c) % p for a, b, c in zip(g.u, h.u, t))
        return GroupElement(x, u)

    def inverse(self, g: GroupElement) -> GroupElement:
        p = self.p
        t = self.twist(g.x, g.x)
        return GroupElement(
            tuple((-a) % p for a in g.x),
            tuple((b - a) % p for a, b in zip(g.u, t)),
        )

    def power(self, g: GroupElement, n: int) -> GroupElement:
        if n < 0:
            raise ValueError("negative powers: use inverse() first")
        p = self.p
        half = n * (n - 1) // 2
        t = self.twist(g.x, g.x)
        return GroupElement(
            tuple(n * a % p for a in g.x),
            tuple((n * a + half * b) % p for a, b in zip(g.u, t)),
        )

    def commutator(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return GroupElement((0,) * self.k, self.commutator_map(g.x, h.x))

    def conjugate(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """h^-1 g h, computed through multiply/inverse."""
        return self.multiply(self.multiply(self.inverse(h), g), h)

    # -- validation ---------------------------------------------------------

    def validate(self) -> Diagnostics:
        failures = []
        K = wedge_dim(self.k)
        if self.m != K - self.W.dim:
            failures.append(
                f"commutator rank {self.m} != {K} - dim W = {K - self.W.dim}"
            )
        if self.m and modp.rank(self.c.T, self.p) != self.m:
            failures.append("structure tensor does not span the derived group")
        for row in self.W.basis:
            img = row @ self.c % self.p
            if img.any():
                failures.append("a relation maps to a nonzero derived element")
                break
        return Diagnostics(ok=not failures, failures=tuple(failures))

    def adjoint_slabs(self) -> np.ndarray:
        return self._slabs


def _adjoint_slabs(k: int, m: int, p: int, c: np.ndarray) -> np.ndarray:
    """Tensor T of shape (k, m, k) with T[i][:, j] = commutator value (i, j)."""
    T = np.zeros((k, m, k), dtype=np.int64)
    for pos, (i, j) in enumerate(wedge_pairs(k)):
        T[i, :, j] = c[pos]
        T[j, :, i] = (-c[pos]) % p
    return T


def quotient_map(W: RelationSubspace) -> np.ndarray:
    """Structure tensor of the quotient of the exterior square by W.

    The complement is spanned by the non-pivot wedge coordinates of W's
    RREF basis; entry (pos, s) is the s-th coordinate of wedge coordinate
    pos reduced modulo W.
    """
    K = wedge_dim(W.k)
    free = [c for c in range(K) if c not in W.pivots]
    m = len(free)
    c = np.zeros((K, m), dtype=np.int64)
    for pos in range(K):
        e = np.zeros(K, dtype=np.int64)
        e[pos] = 1
        red = W.reduce(e)
        c[pos] = red[free]
    return c
