"""Automorphism-group orders.

For a class-two exponent-p group the full automorphism group A is
determined by its image B in GL(k, p) acting on the generator quotient:
|A| = |B| * p^(m*k).  B is exactly the group of invertible matrices whose
rows v_0..v_{k-1} satisfy every defining relation through the commutator
structure map: sum_(i<j) w_ij * comm(v_i, v_j) = 0 for each relation w.

Independent routes to |B|:

* backtrack -- depth-first search over candidate rows; constraints activate
  as their support fills in and each new row solves an affine system.
  Subtrees below valid prefixes of equal depth are cosets of the pointwise
  row stabilizer, hence equal in size, so the search recurses into one
  subtree per level and tests the remaining candidates for extendability.
* orbit     -- orbit-stabilizer: BFS of the orbit of W under the induced
  exterior-square action of GL(k, p) generators; |B| = |GL| / orbit size.
* derived   -- enumerate candidate induced actions on the derived group and
  count matrices realizing each; for m = 3 the candidates are pruned by
  invariance of the Pfaffian cubic.  This makes the order-p^9 group
  tractable, where plain row backtracking degenerates.
* recipes   -- explicit generator lists transcribed per entry (recipes.py),
  measured with the Schreier-Sims chain below.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from classtwo import modp
from classtwo.ffield import _as_p, primitive_root
from classtwo.structure import Presentation, RelationSubspace, wedge_pairs

BACKTRACK_BUDGET = 10**8
ORBIT_BUDGET = 10**7
ENUM_LIMIT = 10**5


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, budget: int):
        super().__init__(f"{what} exceeded budget {budget}")
        self.budget = budget


@dataclass(frozen=True)
class StabilizerResult:
    order: int
    method: str  # BACKTRACK | ORBIT | GENERATORS | FREE | DERIVED
    nodes: int
    elapsed: float


def gl_order(k: int, p: int) -> int:
    order = 1
    for i in range(k):
        order *= p**k - p**i
    return order


# ---------------------------------------------------------------------------
# exterior-square action


def wedge_square(M: np.ndarray, p: int) -> np.ndarray:
    """Induced action on the exterior square (row-vector convention).

    Entry ((i,j), (s,t)) is the 2x2 minor of M on rows i, j and columns
    s, t, so that (e_i ^ e_j) . wedge_square(M) = (row_i M) ^ (row_j M).
    """
    M = np.asarray(M, dtype=np.int64) % p
    k = M.shape[0]
    pairs = wedge_pairs(k)
    K = len(pairs)
    W2 = np.empty((K, K), dtype=np.int64)
    for a, (i, j) in enumerate(pairs):
        for b, (s, t) in enumerate(pairs):
            W2[a, b] = (M[i, s] * M[j, t] - M[i, t] * M[j, s]) % p
    return W2


def stabilizes(M: np.ndarray, W: RelationSubspace) -> bool:
    """True iff the exterior square of M maps W into (hence onto) W."""
    img = W.basis @ wedge_square(M, W.p) % W.p
    return all(W.contains(row) for row in img)


# ---------------------------------------------------------------------------
# Schreier-Sims order for matrix groups (right action on row vectors)


def _vec_key(v: np.ndarray, p: int) -> int:
    key = 0
    for a in v.tolist():
        key = key * p + a
    return key


class _Level:
    __slots__ = ("beta", "gens", "orbit")

    def __init__(self, beta: np.ndarray):
        self.beta = beta
        self.gens: list[tuple[np.ndarray, np.ndarray]] = []  # (g, g^-1)
        # orbit key -> (point, transversal, transversal inverse)
        self.orbit: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


class StabilizerChain:
    """Deterministic Schreier-Sims chain; base points are basis vectors."""

    def __init__(self, k: int, p: int):
        self.k = k
        self.p = p
        self.levels: list[_Level] = []
        self.identity = np.eye(k, dtype=np.int64)

    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.orbit)
        return n

    def _sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        r = g
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            key = _vec_key(lv.beta @ r % self.p, self.p)
            entry = lv.orbit.get(key)
            if entry is None:
                return r, i
            r = r @ entry[2] % self.p
        return r, len(self.levels)

    def contains(self, g: np.ndarray) -> bool:
        r, _ = self._sift(np.asarray(g, dtype=np.int64) % self.p)
        return bool((r == self.identity).all())

    def add(self, g: np.ndarray) -> bool:
        """Insert a generator; returns False when it was already present."""
        g = np.asarray(g, dtype=np.int64) % self.p
        r, lvl = self._sift(g)
        if (r == self.identity).all():
            return False
        work = [(lvl, r)]
        while work:
            lvl, h = work.pop()
            if lvl == len(self.levels):
                level = _Level(self._new_base_point(h))
                eye = self.identity
                level.orbit[_vec_key(level.beta, self.p)] = (level.beta, eye, eye)
                self.levels.append(level)
            pair = (h, modp.mat_inv(h, self.p))
            self.levels[lvl].gens.append(pair)
            # h fixes the first lvl base points, so it acts at every level
            # up to its own: close those orbits and sift the new Schreier
            # generators through the deeper part of the chain
            for at_level in range(lvl, -1, -1):
                schreier = self._close_orbit(at_level, pair)
                work.extend(self._sift_batch(schreier, at_level + 1))
        return True

    def _sift_batch(self, mats: list[np.ndarray], start: int) -> list[tuple[int, np.ndarray]]:
        """Sift a stack of group elements at once; returns (level, residue)
        pairs for the ones that do not reduce to the identity."""
        if not mats:
            return []
        p = self.p
        R = np.stack(mats) % p
        out: list[tuple[int, np.ndarray]] = []
        i = start
        while R.shape[0]:
            if i == len(self.levels):
                for r in R:
                    if not (r == self.identity).all():
                        out.append((len(self.levels), r))
                break
            lv = self.levels[i]
            imgs = np.einsum("k,nkj->nj", lv.beta, R) % p
            t_invs = np.empty_like(R)
            alive = np.ones(R.shape[0], dtype=bool)
            for n in range(R.shape[0]):
                entry = lv.orbit.get(_vec_key(imgs[n], p))
                if entry is None:
                    out.append((i, R[n]))
                    alive[n] = False
                else:
                    t_invs[n] = entry[2]
            R = np.matmul(R[alive], t_invs[alive]) % p
            # drop anything already reduced to the identity
            nontrivial = ~(R == self.identity).all(axis=(1, 2))
            R = R[nontrivial]
            i += 1
        return out

    def _new_base_point(self, g: np.ndarray) -> np.ndarray:
        for i in range(self.k):
            if not (g[i] == self.identity[i]).all():
                return self.identity[i].copy()
        raise AssertionError("identity offered as a new generator")

    def _acting_gens(self, lvl: int) -> list[tuple[np.ndarray, np.ndarray]]:
        """Generators stabilizing the first lvl base points: levels >= lvl."""
        return [pair for level in self.levels[lvl:] for pair in level.gens]

    def _close_orbit(self, lvl: int, new_pair) -> list[np.ndarray]:
        """Re-close one level's orbit after a generator arrives.

        Only (old point, new generator) and (new point, any acting
        generator) pairs can yield unseen Schreier generators; all earlier
        pairs were processed when their later member appeared.
        """
        level = self.levels[lvl]
        p = self.p
        s, s_inv = new_pair
        schreier: list[np.ndarray] = []
        frontier: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
        for point, t, t_inv in list(level.orbit.values()):
            img = point @ s % p
            key = _vec_key(img, p)
            known = level.orbit.get(key)
            if known is None:
                entry = (img, t @ s % p, s_inv @ t_inv % p)
                level.orbit[key] = entry
                frontier.append(entry)
            else:
                schreier.append(t @ s @ known[2] % p)
        acting = self._acting_gens(lvl)
        while frontier:
            point, t, t_inv = frontier.pop()
            for g, g_inv in acting:
                img = point @ g % p
                key = _vec_key(img, p)
                known = level.orbit.get(key)
                if known is None:
                    entry = (img, t @ g % p, g_inv @ t_inv % p)
                    level.orbit[key] = entry
                    frontier.append(entry)
                else:
                    schreier.append(t @ g @ known[2] % p)
        return schreier


def schreier_sims_order(gens, p: int, k: int) -> int:
    """Exact order of the matrix group generated by gens inside GL(k, p)."""
    q = _as_p(p)
    chain = StabilizerChain(k, q)
    for g in gens:
        arr = np.asarray(g, dtype=np.int64) % q
        if arr.shape != (k, k):
            raise ValueError(f"generator of shape {arr.shape}, expected ({k},{k})")
        if not modp.is_invertible(arr, q):
            raise ValueError("singular matrix passed as a group generator")
        chain.add(arr)
    return chain.order()


def closure_order(gens, p: int, limit: int = 2 * 10**5) -> int:
    """Naive multiplicative closure size (oracle for schreier_sims_order)."""
    mats = [np.asarray(g, dtype=np.int64) % p for g in gens]
    if not mats:
        return 1
    k = mats[0].shape[0]
    eye = np.eye(k, dtype=np.int64)
    seen = {eye.tobytes()}
    frontier = [eye]
    while frontier:
        m = frontier.pop()
        for g in mats:
            img = m @ g % p
            key = img.tobytes()
            if key not in seen:
                if len(seen) >= limit:
                    raise BudgetExceeded("naive closure", limit)
                seen.add(key)
                frontier.append(img)
    return len(seen)


# ---------------------------------------------------------------------------
# backtrack over matrix rows


def _ad_of(P: Presentation, v: np.ndarray) -> np.ndarray:
    """m x k matrix sending a column y to comm(v, y)."""
    return np.tensordot(np.asarray(v, dtype=np.int64), P.adjoint_slabs(), axes=(0, 0)) % P.p


class _RowSearch:
    """Backtrack over matrix rows constrained by the relation subspace."""

    def __init__(self, P: Presentation, budget: int = BACKTRACK_BUDGET):
        self.P = P
        self.p = P.p
        self.k = P.k
        self.m = P.m
        self.budget = budget
        self.nodes = 0
        self.order = self._greedy_order()
        place = {g: d for d, g in enumerate(self.order)}
        pairs = wedge_pairs(P.k)
        # activation[d] = relation supports completed by the row at depth d
        self.activation: list[list[list[tuple[int, int, int]]]] = [[] for _ in range(P.k)]
        for row in P.W.basis:
            support = [(i, j, int(row[pos])) for pos, (i, j) in enumerate(pairs) if row[pos]]
            depth = max(max(place[i], place[j]) for i, j, _ in support)
            self.activation[depth].append(support)
        self.all_vectors: np.ndarray | None = None
        self._combos: dict[int, np.ndarray] = {}
        # the image row of generator g must keep its adjoint rank (images of
        # an element under automorphisms have conjugate centralizers)
        eye = np.eye(P.k, dtype=np.int64)
        self.gen_rank = [int(modp.rank(_ad_of(P, eye[i]), P.p)) for i in range(P.k)]

    def _combo_table(self, dim: int) -> np.ndarray:
        table = self._combos.get(dim)
        if table is None:
            table = np.array(list(iproduct(range(self.p), repeat=dim)), dtype=np.int64)
            self._combos[dim] = table
        return table

    def _greedy_order(self) -> list[int]:
        """Order rows so relation supports complete as early as possible."""
        pairs = wedge_pairs(self.P.k)
        supports = [
            {frozenset((i, j)) for pos, (i, j) in enumerate(pairs) if row[pos]}
            for row in self.P.W.basis
        ]
        chosen: list[int] = []
        remaining = set(range(self.k))
        while remaining:
            def score(g: int) -> tuple[int, int]:
                used = set(chosen) | {g}
                return (sum(1 for s in supports if all(pr <= used for pr in s)), -g)

            best = max(sorted(remaining), key=score)
            chosen.append(best)
            remaining.discard(best)
        return chosen

    def _system(self, depth: int, rows: dict[int, np.ndarray]):
        """Stacked affine system constraining the row placed at this depth."""
        active = self.activation[depth]
        if not active:
            return None
        g_new = self.order[depth]
        p = self.p
        blocks, rhs = [], []
        for support in active:
            coeff = np.zeros((self.m, self.k), dtype=np.int64)
            const = np.zeros(self.m, dtype=np.int64)
            for i, j, w in support:
                if i == g_new or j == g_new:
                    other = j if i == g_new else i
                    sign = -w if i == g_new else w
                    coeff = (coeff + sign * _ad_of(self.P, rows[other])) % p
                else:
                    const = (const + w * np.asarray(
                        self.P.commutator_map(rows[i], rows[j]), dtype=np.int64
                    )) % p
            blocks.append(coeff)
            rhs.append((-const) % p)
        return np.concatenate(blocks, axis=0), np.concatenate(rhs, axis=0)

    def _candidates(self, depth: int, rows: dict[int, np.ndarray]) -> np.ndarray:
        """Solutions of the depth system that stay independent of prior rows,
        keep the right adjoint rank, and pass the next level's batched
        feasibility check.  Returns an (N, k) array."""
        self._tick()
        system = self._system(depth, rows)
        p, k = self.p, self.k
        g_new = self.order[depth]
        chosen = [rows[g] for g in self.order[:depth]]
        empty = np.empty((0, k), dtype=np.int64)
        if system is None:
            if self.all_vectors is None:
                self.all_vectors = self._combo_table(k)
            sols = self.all_vectors
        else:
            solved = modp.solve_affine(*system, p)
            if solved is None:
                return empty
            x0, null = solved
            if null.shape[0] == 0:
                sols = x0[None, :]
            else:
                sols = (self._combo_table(null.shape[0]) @ null + x0) % p
        if chosen:
            basis, piv = modp.rref(np.array(chosen), p)
            red = sols.copy()
            for row, pc in zip(basis[: len(piv)], piv):
                red = (red - red[:, pc : pc + 1] * row[None, :]) % p
            keep = red.any(axis=1)
        else:
            keep = sols.any(axis=1)
        sols = sols[keep]
        if sols.shape[0] > 1:
            adj = np.tensordot(sols, self.P.adjoint_slabs(), axes=(1, 0)) % p
            sols = sols[modp.batch_rank(adj, p) == self.gen_rank[g_new]]
        elif sols.shape[0] == 1:
            if modp.rank(_ad_of(self.P, sols[0]), p) != self.gen_rank[g_new]:
                return empty
        if sols.shape[0] > 64 and depth + 1 < k:
            sols = sols[self._lookahead_mask(depth, rows, sols)]
        return sols

    def _lookahead_mask(self, depth: int, rows: dict[int, np.ndarray],
                        cands: np.ndarray) -> np.ndarray:
        """Batched feasibility of the next level's system over all candidates.

        The next row's constraint system is affine in the candidate, so its
        coefficient blocks and right-hand sides assemble with one tensor
        contraction per support pair; candidates whose system is already
        inconsistent have empty subtrees and are dropped in bulk.
        """
        active = self.activation[depth + 1]
        if not active:
            return np.ones(cands.shape[0], dtype=bool)
        p = self.p
        g_cur = self.order[depth]
        g_next = self.order[depth + 1]
        N = cands.shape[0]
        cand_ad = np.tensordot(cands, self.P.adjoint_slabs(), axes=(1, 0)) % p
        blocks, rhs = [], []
        for support in active:
            coeff = np.zeros((N, self.m, self.k), dtype=np.int64)
            const = np.zeros((N, self.m), dtype=np.int64)
            for i, j, w in support:
                if i == g_next or j == g_next:
                    other = j if i == g_next else i
                    sign = -w if i == g_next else w
                    if other == g_cur:
                        coeff = (coeff + sign * cand_ad) % p
                    else:
                        coeff = (coeff + sign * _ad_of(self.P, rows[other])) % p
                elif i == g_cur or j == g_cur:
                    other = j if i == g_cur else i
                    sign = w if i == g_cur else -w
                    # w * comm(v_i, v_j) with the candidate in one slot
                    vals = cands @ _ad_of(self.P, rows[other]).T % p
                    const = (const - sign * vals) % p
                else:
                    base = w * np.asarray(
                        self.P.commutator_map(rows[i], rows[j]), dtype=np.int64
                    )
                    const = (const + base) % p
            blocks.append(coeff)
            rhs.append((-const) % p)
        A = np.concatenate(blocks, axis=1)
        b = np.concatenate(rhs, axis=1)
        return modp.batch_solvable(A, b, p)

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded("backtrack nodes", self.budget)

    def count(self) -> int:
        self._level_gens: list[list[np.ndarray]] = [[] for _ in range(self.k)]
        self._level_orbits: list[set | None] = [None] * self.k
        got = self._count_from(0, {})
        if got is None:
            raise AssertionError("identity matrix not reached by row search")
        return got[0]

    def _assemble(self, rows: dict[int, np.ndarray]) -> np.ndarray:
        return np.vstack([rows[i] for i in range(self.k)])

    # -- discovered-element reuse -------------------------------------------
    #
    # Any two members of B with equal row prefixes differ by an element of
    # the pointwise stabilizer of the prefix base rows.  Elements discovered
    # during probes are banked per level; a sibling candidate v is certified
    # valid without a search whenever v * M0^-1 lies in the tracked orbit of
    # the level's base row (M0 being the witness for the first sibling).

    def _bank_element(self, depth: int, X: np.ndarray) -> None:
        self._level_gens[depth].append(X)
        for d in range(depth + 1):
            self._level_orbits[d] = None

    def _orbit_member(self, depth: int, vec: np.ndarray) -> bool:
        orbit = self._level_orbits[depth]
        if orbit is None:
            p = self.p
            base = np.zeros(self.k, dtype=np.int64)
            base[self.order[depth]] = 1
            gens = [g for lvl in range(depth, self.k) for g in self._level_gens[lvl]]
            orbit = {base.tobytes()}
            frontier = [base]
            while frontier:
                pt = frontier.pop()
                for gmat in gens:
                    img = pt @ gmat % p
                    key = img.tobytes()
                    if key not in orbit:
                        orbit.add(key)
                        frontier.append(img)
            self._level_orbits[depth] = orbit
        return vec.tobytes() in orbit

    def _count_from(
        self, depth: int, rows: dict[int, np.ndarray]
    ) -> tuple[int, np.ndarray] | None:
        """(subtree size, witness matrix) below a valid prefix; None if empty.

        Non-empty subtrees at one depth share a single size (cosets of the
        pointwise row stabilizer), so the search recurses into the first
        valid sibling only and certifies or probes the rest.
        """
        if depth == self.k:
            return 1, self._assemble(rows)
        g = self.order[depth]
        sub: int | None = None
        witness: np.ndarray | None = None
        m0_inv: np.ndarray | None = None
        n_valid = 0
        for v in self._candidates(depth, rows):
            self._tick()
            rows[g] = v
            if sub is None:
                got = self._count_from(depth + 1, rows)
                if got is not None:
                    sub, witness = got
                    n_valid += 1
                    m0_inv = modp.mat_inv(witness, self.p)
            else:
                shifted = v @ m0_inv % self.p
                if self._orbit_member(depth, shifted):
                    n_valid += 1
                else:
                    found = self._find_witness(depth + 1, rows)
                    if found is not None:
                        n_valid += 1
                        self._bank_element(depth, found @ m0_inv % self.p)
            del rows[g]
        return None if sub is None else (n_valid * sub, witness)

    def _find_witness(self, depth: int, rows: dict[int, np.ndarray]) -> np.ndarray | None:
        if depth == self.k:
            return self._assemble(rows)
        g = self.order[depth]
        for v in self._candidates(depth, rows):
            self._tick()
            rows[g] = v
            found = self._find_witness(depth + 1, rows)
            del rows[g]
            if found is not None:
                return found
        return None

    def enumerate(self, limit: int = ENUM_LIMIT) -> list[np.ndarray]:
        out: list[np.ndarray] = []
        rows: dict[int, np.ndarray] = {}

        def rec(depth: int) -> None:
            if depth == self.k:
                out.append(np.vstack([rows[i] for i in range(self.k)]))
                if len(out) > limit:
                    raise BudgetExceeded("stabilizer enumeration", limit)
                return
            g = self.order[depth]
            for v in self._candidates(depth, rows):
                self._tick()
                rows[g] = v
                rec(depth + 1)
                del rows[g]

        rec(0)
        return out


def stabilizer_order_backtrack(P: Presentation, budget: int = BACKTRACK_BUDGET) -> StabilizerResult:
    """|B| by constraint-propagating backtrack over candidate matrix rows."""
    t0 = time.perf_counter()
    if P.W.dim == 0:
        return StabilizerResult(gl_order(P.k, P.p), "FREE", 0, time.perf_counter() - t0)
    search = _RowSearch(P, budget)
    order = search.count()
    return StabilizerResult(order, "BACKTRACK", search.nodes, time.perf_counter() - t0)


def stabilizer_elements(P: Presentation, limit: int = ENUM_LIMIT) -> list[np.ndarray]:
    """All of B explicitly (guarded; used by shape checks and closure tests)."""
    if P.W.dim == 0:
        if gl_order(P.k, P.p) > limit:
            raise BudgetExceeded("stabilizer enumeration", limit)
        out = []
        for combo in iproduct(range(P.p), repeat=P.k * P.k):
            M = np.array(combo, dtype=np.int64).reshape(P.k, P.k)
            if modp.is_invertible(M, P.p):
                out.append(M)
        return out
    return _RowSearch(P).enumerate(limit)


# ---------------------------------------------------------------------------
# orbit-stabilizer on the relation subspace


def gl_generators(k: int, p: int) -> list[np.ndarray]:
    """Generators of GL(k, p): primitive scaling, basis cycle, transvection.

    Conjugating the transvection by cycle powers yields every adjacent
    elementary transvection, which generate SL(k, p); the scaling matrix
    supplies the determinants.
    """
    omega = primitive_root(p)
    diag = np.eye(k, dtype=np.int64)
    diag[0, 0] = omega
    if k == 1:
        return [diag]
    cycle = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        cycle[i, (i + 1) % k] = 1
    trans = np.eye(k, dtype=np.int64)
    trans[0, 1] = 1
    return [diag, cycle, trans]


def stabilizer_order_orbit(P: Presentation, budget: int = ORBIT_BUDGET) -> StabilizerResult:
    """|B| = |GL(k, p)| / |orbit of W| under the exterior-square action."""
    t0 = time.perf_counter()
    p, k = P.p, P.k
    if P.W.dim == 0:
        return StabilizerResult(gl_order(k, p), "FREE", 0, time.perf_counter() - t0)
    wedges = [wedge_square(g, p).astype(np.int32) for g in gl_generators(k, p)]
    d, K = P.W.basis.shape
    start = np.ascontiguousarray(P.W.basis, dtype=np.int32)
    visited = {start.tobytes()}
    frontier = start[None, :, :]
    total = 1
    while frontier.size:
        images = [np.einsum("ndk,kj->ndj", frontier, wg) % p for wg in wedges]
        canon, ranks = modp.batch_rref(np.concatenate(images, axis=0), p)
        if int(ranks.min()) != d:
            raise AssertionError("orbit image dropped rank")
        fresh = []
        for i in range(canon.shape[0]):
            key = canon[i].tobytes()
            if key not in visited:
                visited.add(key)
                fresh.append(canon[i])
                total += 1
                if total > budget:
                    raise BudgetExceeded("orbit subspaces", budget)
        frontier = np.array(fresh, dtype=np.int32) if fresh else np.empty((0, d, K), np.int32)
    glk = gl_order(k, p)
    if glk % total:
        raise AssertionError("orbit size does not divide |GL(k,p)|")
    return StabilizerResult(glk // total, "ORBIT", total, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# derived-action split (the route that tames the order-p^9 group)


def structure_forms(P: Presentation) -> np.ndarray:
    """Alternating k x k matrices S_s with comm(x, y)_s = x S_s y^T."""
    S = np.zeros((P.m, P.k, P.k), dtype=np.int64)
    for pos, (i, j) in enumerate(wedge_pairs(P.k)):
        S[:, i, j] = P.c[pos]
        S[:, j, i] = (-P.c[pos]) % P.p
    return S


def _pfaffian_matchings(points: list[int]):
    if not points:
        yield [], 1
        return
    a = points[0]
    for pos in range(1, len(points)):
        b = points[pos]
        rest = points[1:pos] + points[pos + 1 :]
        sign = (-1) ** (pos - 1)
        for sub, subsign in _pfaffian_matchings(rest):
            yield [(a, b)] + sub, sign * subsign


def pfaffian_cubic(P: Presentation) -> dict[tuple[int, int, int], int]:
    """Coefficients of Pf(t0 S0 + t1 S1 + t2 S2) as monomial exponents -> value."""
    S = structure_forms(P)
    p = P.p
    if S.shape[0] != 3 or S.shape[1] != 6:
        raise ValueError("Pfaffian cubic needs m=3 forms on 6 generators")
    coeffs: dict[tuple[int, int, int], int] = {}
    for match, sign in _pfaffian_matchings(list(range(6))):
        forms = [tuple(int(S[s, i, j]) for s in range(3)) for i, j in match]
        for e0, f0 in enumerate(forms[0]):
            if not f0:
                continue
            for e1, f1 in enumerate(forms[1]):
                if not f1:
                    continue
                for e2, f2 in enumerate(forms[2]):
                    if not f2:
                        continue
                    mono = [0, 0, 0]
                    mono[e0] += 1
                    mono[e1] += 1
                    mono[e2] += 1
                    key = tuple(mono)
                    coeffs[key] = (coeffs.get(key, 0) + sign * f0 * f1 * f2) % p
    return {key: val for key, val in coeffs.items() if val}


def _cubic_eval(coeffs: dict, pts: np.ndarray, p: int) -> np.ndarray:
    t = [pts[:, 0] % p, pts[:, 1] % p, pts[:, 2] % p]
    out = np.zeros(pts.shape[0], dtype=np.int64)
    for (a, b, c), coef in coeffs.items():
        term = np.full(pts.shape[0], coef, dtype=np.int64)
        for var, e in zip(t, (a, b, c)):
            for _ in range(e):
                term = term * var % p
        out = (out + term) % p
    return out


def cubic_preserving_maps(P: Presentation) -> list[np.ndarray]:
    """All of GL(3, p) mapping the Pfaffian cubic to a scalar multiple of itself."""
    p = P.p
    coeffs = pfaffian_cubic(P)
    if not coeffs:
        raise ValueError("Pfaffian cubic vanishes; derived split unavailable")
    pts = np.array([v for v in iproduct(range(p), repeat=3) if any(v)], dtype=np.int64)
    vals = _cubic_eval(coeffs, pts, p)
    nz = np.nonzero(vals)[0]
    zr = np.nonzero(vals == 0)[0]
    test_idx = np.concatenate([nz[:8], zr[:8]])
    test_pts = pts[test_idx]
    test_vals = vals[test_idx]
    survivors = []
    total = p**9
    chunk = 1 << 17
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        n = np.arange(start, stop, dtype=np.int64)
        digs = np.empty((stop - start, 9), dtype=np.int64)
        for col in range(8, -1, -1):
            digs[:, col] = n % p
            n //= p
        mats = digs.reshape(-1, 3, 3)
        imgs = np.einsum("bij,nj->bni", mats, test_pts) % p
        iv = _cubic_eval(coeffs, imgs.reshape(-1, 3), p).reshape(-1, test_pts.shape[0])
        ok = np.ones(mats.shape[0], dtype=bool)
        mu: np.ndarray | None = None
        for col in range(test_pts.shape[0]):
            v = int(test_vals[col])
            if v == 0:
                ok &= iv[:, col] == 0
            elif mu is None:
                mu = iv[:, col] * pow(v, -1, p) % p
                ok &= mu != 0
            else:
                ok &= iv[:, col] == mu * v % p
        survivors.extend(mats[ok])
    result = []
    for psi in survivors:
        if not modp.is_invertible(psi, p):
            continue
        img_vals = _cubic_eval(coeffs, pts @ psi.T % p, p)
        ratio = None
        good = True
        for a, b in zip(vals.tolist(), img_vals.tolist()):
            if a == 0:
                if b:
                    good = False
                    break
                continue
            r = b * pow(a, -1, p) % p
            if ratio is None:
                if r == 0:
                    good = False
                    break
                ratio = r
            elif r != ratio:
                good = False
                break
        if good:
            result.append(psi)
    return result


def _derived_row_order(P: Presentation) -> list[int]:
    """Row order that accumulates pinned constraints as fast as possible."""
    nonzero = {
        (i, j) for pos, (i, j) in enumerate(wedge_pairs(P.k)) if P.c[pos].any()
    }
    chosen = [0]
    remaining = set(range(1, P.k))
    while remaining:
        def strength(g: int) -> tuple[int, int]:
            return (
                sum(1 for c in chosen if (min(c, g), max(c, g)) in nonzero),
                -g,
            )

        nxt = max(sorted(remaining), key=strength)
        chosen.append(nxt)
        remaining.discard(nxt)
    return chosen


def _row_rank_table(P: Presentation) -> np.ndarray:
    """Adjoint rank of every vector in F_p^k, indexed by base-p encoding."""
    from classtwo.conjugacy import _digits_block

    p, k = P.p, P.k
    total = p**k
    slabs = P.adjoint_slabs().astype(np.int32)
    out = np.empty(total, dtype=np.int8)
    step = 1 << 18
    for start in range(0, total, step):
        stop = min(start + step, total)
        V = _digits_block(start, stop, p, k).astype(np.int32)
        adj = np.tensordot(V, slabs, axes=(1, 0)) % p
        out[start:stop] = modp.batch_rank(adj, p)
    return out


def _row_profile(P: Presentation, v: np.ndarray, rank_table: np.ndarray,
                 weights: np.ndarray) -> tuple:
    """Invariant fingerprint (adjoint rank, kernel rank histogram) of a row."""
    p = P.p
    A = _ad_of(P, v)
    null = modp.nullspace(A, p)
    r = P.k - null.shape[0]
    if null.shape[0] == 0:
        return (r, ())
    combos = np.array(list(iproduct(range(p), repeat=null.shape[0])), dtype=np.int64)
    kern = combos @ null % p
    hist = np.bincount(rank_table[kern @ weights], minlength=P.m + 1)
    return (r, tuple(int(x) for x in hist))


def first_row_candidates(P: Presentation, row: int) -> np.ndarray:
    """Vectors sharing the reference row's conjugation-invariant profile."""
    from classtwo.conjugacy import _digits_block

    p, k = P.p, P.k
    rank_table = _row_rank_table(P)
    weights = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    e_row = np.eye(k, dtype=np.int64)[row]
    want = _row_profile(P, e_row, rank_table, weights)
    out = []
    total = p**k
    step = 1 << 16
    for start in range(0, total, step):
        stop = min(start + step, total)
        V = _digits_block(start, stop, p, k)
        for v in V[rank_table[start:stop] == want[0]]:
            if _row_profile(P, v, rank_table, weights) == want:
                out.append(v)
    return np.array(out, dtype=np.int64)


class _PinnedSearch:
    """Count matrices M with comm(v_i, v_j) = targets[i,j] for all pairs.

    Every pair is pinned, so each new row beyond the second is typically
    the unique solution of a full-rank linear system; those solves are
    batched across the whole frontier of partial matrices.
    """

    def __init__(self, P: Presentation, order_rows: list[int]):
        self.P = P
        self.p = P.p
        self.k = P.k
        self.m = P.m
        self.order = order_rows
        self.slabs = P.adjoint_slabs()
        self.nodes = 0

    def count(self, psi: np.ndarray, first_cands: np.ndarray) -> int:
        p, k, m = self.p, self.k, self.m
        # pinned commutator targets: comm(v_i, v_j) must equal c_ij . psi^T,
        # where psi^T ranges over GL(m) as psi does (summed over, so complete)
        pairs = wedge_pairs(k)
        target = {}
        for pos, (i, j) in enumerate(pairs):
            target[(i, j)] = self.P.c[pos] @ psi % p
        if first_cands.shape[0] == 0:
            return 0
        # frontier: stack of partially built row sets, shape (N, depth, k)
        frontier = first_cands[:, None, :]
        total = 0
        for depth in range(1, k):
            if frontier.shape[0] == 0:
                return total
            g = self.order[depth]
            N = frontier.shape[0]
            self.nodes += N
            blocks, rhs = [], []
            for d_prev in range(depth):
                prev = self.order[d_prev]
                i, j = min(prev, g), max(prev, g)
                sign = 1 if g == j else -1
                A_prev = np.einsum(
                    "nk,kmj->nmj", frontier[:, d_prev, :], self.slabs
                ) % self.p
                blocks.append(A_prev if sign == 1 else (-A_prev) % p)
                rhs.append(np.broadcast_to(target[(i, j)], (N, m)))
            A = np.concatenate(blocks, axis=1)  # (N, m*depth, k)
            b = np.concatenate(rhs, axis=1)  # (N, m*depth)
            aug = np.concatenate([A, b[:, :, None]], axis=2)
            canon, ranks = modp.batch_rref(aug, p)
            a_rank = modp.batch_rank(A, p)
            consistent = ranks == a_rank
            unique = consistent & (a_rank == k)
            degenerate = consistent & (a_rank < k)
            new_frontier = []
            if unique.any():
                sols = canon[unique][:, :k, k]
                ext = np.concatenate(
                    [frontier[unique], sols[:, None, :].astype(np.int64)], axis=1
                )
                new_frontier.append(ext)
            if degenerate.any():
                # rare: enumerate the affine solution set explicitly
                for idx in np.nonzero(degenerate)[0]:
                    solved = modp.solve_affine(A[idx], b[idx], p)
                    if solved is None:
                        continue
                    x0, null = solved
                    combos = np.array(
                        list(iproduct(range(p), repeat=null.shape[0])), dtype=np.int64
                    )
                    sols = (combos @ null + x0) % p if null.shape[0] else x0[None, :]
                    pref = np.broadcast_to(
                        frontier[idx], (sols.shape[0],) + frontier[idx].shape
                    )
                    new_frontier.append(
                        np.concatenate([pref, sols[:, None, :]], axis=1)
                    )
            frontier = (
                np.concatenate(new_frontier, axis=0)
                if new_frontier
                else np.empty((0, depth + 1, k), dtype=np.int64)
            )
        if frontier.shape[0] == 0:
            return total
        # reassemble rows in natural order and keep the invertible matrices
        perm = np.argsort(np.array(self.order))
        mats = frontier[:, perm, :]
        full = modp.batch_rank(mats, p) == k
        return total + int(full.sum())


def stabilizer_order_derived(P: Presentation, budget: int = BACKTRACK_BUDGET) -> StabilizerResult:
    """|B| summed over candidate induced actions on the derived group."""
    t0 = time.perf_counter()
    p, m = P.p, P.m
    if m == 3 and P.k == 6:
        psis = cubic_preserving_maps(P)
    elif m <= 2:
        psis = [
            np.array(c, dtype=np.int64).reshape(m, m)
            for c in iproduct(range(p), repeat=m * m)
            if modp.is_invertible(np.array(c, dtype=np.int64).reshape(m, m), p)
        ]
    else:
        raise ValueError("derived split implemented for m <= 3 only")
    order_rows = _derived_row_order(P)
    cands = first_row_candidates(P, order_rows[0])
    search = _PinnedSearch(P, order_rows)
    total = 0
    for psi in psis:
        total += search.count(psi, cands)
        if search.nodes > budget:
            raise BudgetExceeded("derived-search nodes", budget)
    return StabilizerResult(total, "DERIVED", search.nodes, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# top level


def aut_order(P: Presentation, stab: StabilizerResult) -> int:
    """|Aut| = |B| * p^(m*k)."""
    return stab.order * P.p ** (P.m * P.k)
