"""Matrix-shape descriptors for induced automorphism groups.

A descriptor is a membership predicate on k x k matrices over GF(p)
mirroring the catalog's displayed forms: either a zero-pattern mask (with
invertibility), or a parameterized family.  Where the parameter space is
small enough the descriptor is also swept exhaustively and the matching
count compared against the computed stabilizer order.

Group 8.6.9 ships two parameterized variants: the displayed third row ends
in -lambda*alpha where the analogous rank-4 family has -lambda*gamma; both
readings are checked and the verdict is reported, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from classtwo import modp
from classtwo.autos import gl_order
from classtwo.catalog import CatalogEntry
from classtwo.ffield import ResolvedParams

SWEEP_BUDGET = 4 * 10**6


@dataclass(frozen=True)
class ShapeReport:
    entry_id: str
    p: int
    checked: int
    all_match: bool
    variant_matches: dict[str, int]
    swept_count: int | None
    count_matches: bool | None


def _mask_member(M: np.ndarray, masks) -> bool:
    for mask in masks:
        ok = True
        for i, row in enumerate(mask):
            for j, ch in enumerate(row):
                if ch == "0" and M[i, j] != 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def _mask_sweep_count(masks, k: int, p: int) -> int | None:
    total = 0
    seen_overlap = len(masks) > 1
    counted = set()
    for mask in masks:
        free = [(i, j) for i in range(k) for j in range(k) if mask[i][j] == "*"]
        if p ** len(free) > SWEEP_BUDGET:
            return None
        combos = np.zeros((p ** len(free), k, k), dtype=np.int64)
        n = np.arange(p ** len(free))
        for idx, (i, j) in enumerate(reversed(free)):
            combos[:, i, j] = n % p
            n = n // p
        ranks = modp.batch_rank(combos, p)
        good = combos[ranks == k]
        if seen_overlap:
            for M in good:
                counted.add(M.tobytes())
        else:
            total += good.shape[0]
    return len(counted) if seen_overlap else total


# -- parameterized families --------------------------------------------------


def _solve_scalar(pairs: list[tuple[int, int]], p: int) -> int | None:
    """Find lam with lam * coeff = value for all (coeff, value) pairs, lam != 0."""
    lam = None
    for coeff, value in pairs:
        coeff %= p
        value %= p
        if coeff == 0:
            if value != 0:
                return None
            continue
        cand = value * pow(coeff, -1, p) % p
        if lam is None:
            lam = cand
        elif lam != cand:
            return None
    if lam is None or lam == 0:
        return None
    return lam


def _member_6_4_3(M: np.ndarray, p: int) -> bool:
    if any(M[i, j] % p for i in (2, 3) for j in (0, 1)):
        return False
    a, b, g, d = int(M[0, 0]), int(M[0, 1]), int(M[1, 0]), int(M[1, 1])
    if (a * d - b * g) % p == 0:
        return False
    lam = _solve_scalar(
        [(d, M[2, 2]), (-g, M[2, 3]), (-b, M[3, 2]), (a, M[3, 3])], p
    )
    return lam is not None


def _count_6_4_3(p: int, prm) -> int:
    count = 0
    for a, b, g, d in iproduct(range(p), repeat=4):
        if (a * d - b * g) % p == 0:
            continue
        count += (p - 1) * p**4
    return count


def _member_7_4_4(M: np.ndarray, p: int) -> bool:
    for i, j in ((1, 0), (2, 0), (3, 0), (3, 1), (3, 2)):
        if M[i, j] % p:
            return False
    lam = int(M[0, 0]) % p
    if lam == 0:
        return False
    a, b, g, d = int(M[1, 1]), int(M[1, 2]), int(M[2, 1]), int(M[2, 2])
    det = (a * d - b * g) % p
    if det == 0:
        return False
    return M[3, 3] % p == pow(lam, -1, p) * det % p


def _count_7_4_4(p: int, prm) -> int:
    count = 0
    for a, b, g, d in iproduct(range(p), repeat=4):
        if (a * d - b * g) % p:
            count += (p - 1) * p**5
    return count


def _member_8_4_3(M: np.ndarray, p: int) -> bool:
    if any(M[i, j] % p for i in (0, 1) for j in (2, 3)):
        return False
    a, b, g, d = int(M[0, 0]), int(M[0, 1]), int(M[1, 0]), int(M[1, 1])
    if (a * d - b * g) % p == 0:
        return False
    lam = _solve_scalar(
        [(-d, M[2, 2]), (g, M[2, 3]), (b, M[3, 2]), (-a, M[3, 3])], p
    )
    return lam is not None


def _count_8_4_3(p: int, prm) -> int:
    return _count_6_4_3(p, prm)


def _member_8_6_9(variant: str):
    def member(M: np.ndarray, p: int) -> bool:
        zero_at = (
            [(i, j) for i in (0, 1) for j in (4, 5)]
            + [(i, j) for i in (2, 3) for j in (0, 1, 4, 5)]
            + [(i, j) for i in (4, 5) for j in (0, 1, 2, 3)]
        )
        if any(M[i, j] % p for i, j in zero_at):
            return False
        a, b = int(M[0, 0]), int(M[0, 1])
        g, d = int(M[1, 0]), int(M[1, 1])
        e, z = int(M[0, 2]), int(M[0, 3])
        h, t = int(M[1, 2]), int(M[1, 3])
        rho, sig = int(M[4, 4]), int(M[4, 5])
        tau, phi = int(M[5, 4]), int(M[5, 5])
        det1 = (a * d - b * g) % p
        det2 = (rho * phi - sig * tau) % p
        if det1 == 0 or det1 != det2:
            return False
        if (a * h + b * t - g * e - d * z) % p:
            return False
        second = -a if variant == "alpha" else -g
        lam = _solve_scalar(
            [(d, M[2, 2]), (second, M[2, 3]), (-b, M[3, 2]), (a, M[3, 3])], p
        )
        return lam is not None

    return member


def _count_8_6_9(variant: str):
    def count(p: int, prm) -> int:
        gl2 = [
            (a, b, g, d)
            for a, b, g, d in iproduct(range(p), repeat=4)
            if (a * d - b * g) % p
        ]
        by_det: dict[int, int] = {}
        for a, b, g, d in gl2:
            key = (a * d - b * g) % p
            by_det[key] = by_det.get(key, 0) + 1
        total = 0
        for a, b, g, d in gl2:
            det1 = (a * d - b * g) % p
            n_cross = 0
            for e, z, h, t in iproduct(range(p), repeat=4):
                if (a * h + b * t - g * e - d * z) % p == 0:
                    n_cross += 1
            n_mid = 0
            for lam in range(1, p):
                second = (-lam * a) % p if variant == "alpha" else (-lam * g) % p
                mid = np.array(
                    [[lam * d % p, second], [(-lam * b) % p, lam * a % p]],
                    dtype=np.int64,
                )
                if (mid[0, 0] * mid[1, 1] - mid[0, 1] * mid[1, 0]) % p:
                    n_mid += 1
            total += n_cross * n_mid * by_det[det1]
        return total

    return count


_PARAM_SHAPES: dict[str, dict] = {
    "6.4.3": {"default": (_member_6_4_3, _count_6_4_3)},
    "7.4.4": {"default": (_member_7_4_4, _count_7_4_4)},
    "8.4.3": {"default": (_member_8_4_3, _count_8_4_3)},
    "8.6.9": {
        "gamma": (_member_8_6_9("gamma"), _count_8_6_9("gamma")),
        "alpha": (_member_8_6_9("alpha"), _count_8_6_9("alpha")),
    },
}


def has_shape(entry: CatalogEntry) -> bool:
    return entry.shape is not None


def shape_check(
    entry: CatalogEntry,
    p: int,
    elements: list[np.ndarray],
    expected_order: int,
    params: ResolvedParams | None = None,
) -> ShapeReport:
    """Check every enumerated stabilizer element against the descriptor and,
    when affordable, count the descriptor's full sweep."""
    k = entry.k
    if entry.shape == "full":
        swept = gl_order(k, p)
        return ShapeReport(
            entry.id, p, len(elements), True, {"full": len(elements)},
            swept, swept == expected_order,
        )
    if entry.shape == "mask":
        matches = sum(1 for M in elements if _mask_member(M, entry.masks))
        swept = _mask_sweep_count(entry.masks, k, p)
        return ShapeReport(
            entry.id, p, len(elements), matches == len(elements),
            {"mask": matches}, swept,
            None if swept is None else swept == expected_order,
        )
    if entry.shape == "param":
        variants = _PARAM_SHAPES[entry.id]
        variant_matches = {}
        best = 0
        swept = None
        count_ok = None
        for name, (member, counter) in variants.items():
            got = sum(1 for M in elements if member(M, p))
            variant_matches[name] = got
            if got > best:
                best = got
            if got == len(elements) and counter is not None:
                swept = counter(p, params)
                count_ok = swept == expected_order
        return ShapeReport(
            entry.id, p, len(elements), best == len(elements),
            variant_matches, swept, count_ok,
        )
    raise ValueError(f"{entry.id} carries no shape descriptor")
