"""Explicit generator lists for the induced matrix groups B of selected
catalog entries.

Each recipe returns the transcribed generating matrices with the symbolic
parameters resolved at the given prime (primitive root, cubic parameters,
discriminant roots).  Family parameters are swept over every stated value;
generating sets are therefore large but exact, and the Schreier-Sims chain
skips members that are already generated.

Recipes produce invertible matrices only; whether each matrix stabilizes
the relation subspace, and whether the generated group reaches the full
stabilizer order, are verified by callers and reported as findings.
"""

from __future__ import annotations

from itertools import product as iproduct

import numpy as np

from classtwo import modp
from classtwo.ffield import ResolvedParams, _as_p, resolve_params


class RecipeUnavailable(KeyError):
    """The entry has no transcribed generator recipe."""


class ParameterDomainError(RuntimeError):
    """A recipe denominator vanished or a produced matrix was singular."""


def _frac(num: int, den: int, p: int) -> int:
    den %= p
    if den == 0:
        raise ParameterDomainError(f"denominator vanished mod {p}")
    return num % p * pow(den, -1, p) % p


def _mat(rows, p: int) -> np.ndarray:
    return np.array(rows, dtype=np.int64) % p


def _elementary(k: int, i: int, j: int) -> np.ndarray:
    M = np.eye(k, dtype=np.int64)
    M[i, j] = 1
    return M


def _units(p: int) -> range:
    return range(1, p)


# -- order p^5, five-relation four-generator group --------------------------


def _recipe_5_4_1(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    w = prm.omega
    return [
        _mat([[w, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], p),
        _mat([[-1, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], p),
        _mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, w, 0], [0, 0, 0, 1]], p),
        _mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 1], [0, 0, -1, 0]], p),
        _elementary(4, 0, 2),
        _elementary(4, 0, 3),
        _elementary(4, 1, 2),
        _elementary(4, 1, 3),
    ]


def _recipe_6_4_3(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    w = prm.omega
    return [
        _mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, w, 0], [0, 0, 0, w]], p),
        _mat([[w, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, w]], p),
        _mat([[-1, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, -1]], p),
        _elementary(4, 0, 2),
        _elementary(4, 0, 3),
        _elementary(4, 1, 2),
        _elementary(4, 1, 3),
    ]


def _twisted_rows(first, second, w: int, p: int, flip: bool) -> np.ndarray:
    """Rows 3 and 4 determined by rows 1 and 2 in the omega-twisted families."""
    a, b, g, d = first
    e, z, h, t = second
    r3 = [-w * t, w * h, z, -e]
    r4 = [w * d, -w * g, -b, a]
    if flip:
        r3 = [-x for x in r3]
        r4 = [-x for x in r4]
    return _mat([list(first), list(second), r3, r4], p)


def _recipe_6_4_4(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    w = prm.omega
    out = [
        _mat([[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, -1], [0, 0, 0, 1]], p),
        _mat([[1, 0, 0, 0], [0, 1, 0, 1], [-w, 0, 1, 0], [0, 0, 0, 1]], p),
        _mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]], p),
    ]
    for z, h in iproduct(range(p), repeat=2):
        if z == 0 and h == 0:
            continue
        out.append(
            _mat([[1, 0, 0, 0], [0, z, h, 0], [0, w * h, z, 0], [0, 0, 0, 1]], p)
        )
    # matrices of the first kind with a general first row; the second row is
    # (0,1,0,0) unless the first and fourth entries both vanish
    for first in iproduct(range(p), repeat=4):
        if not any(first):
            continue
        second = (0, 1, 0, 0) if (first[0] or first[3]) else (1, 0, 0, 0)
        M = _twisted_rows(first, second, w, p, flip=False)
        if modp.is_invertible(M, p):
            out.append(M)
    return out


def recipe_6_4_4_single_hypothesis(p: int, prm: ResolvedParams) -> np.ndarray:
    """The reportedly sufficient single general-row matrix (checked, not assumed)."""
    return _twisted_rows((0, 1, 0, 0), (1, 0, 0, 0), prm.omega, p, flip=False)


def _recipe_7_5_6(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    w = prm.omega
    w_inv = pow(w, -1, p)
    out = []
    for a, b, g, d in iproduct(range(p), repeat=4):
        for lam in _units(p):
            out.append(
                _mat(
                    [
                        [w, a, b, 0, g],
                        [0, w * lam, 0, 0, 0],
                        [0, 0, lam, 0, 0],
                        [0, w_inv * g, -w_inv * a, 1, d],
                        [0, 0, 0, 0, w * w * lam],
                    ],
                    p,
                )
            )
            out.append(
                _mat(
                    [
                        [-1, a, b, 1, g],
                        [0, lam, 0, 0, 2 * lam],
                        [0, 0, 0, 0, lam],
                        [-1, d, b - d, 0, d - a],
                        [0, -lam, lam, 0, -lam],
                    ],
                    p,
                )
            )
    return out


def _recipe_8_4_4(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    w = prm.omega
    out = []
    for e, z, h, t in iproduct(range(p), repeat=4):
        if z == 0 and h == 0:
            continue
        for flip in (False, True):
            M = _twisted_rows((1, 0, 0, 0), (e, z, h, t), w, p, flip)
            if modp.is_invertible(M, p):
                out.append(M)
    for first in iproduct(range(p), repeat=4):
        if not any(first):
            continue
        second = (0, 1, 0, 0) if (first[0] or first[3]) else (1, 0, 0, 0)
        for flip in (False, True):
            M = _twisted_rows(first, second, w, p, flip)
            if modp.is_invertible(M, p):
                out.append(M)
    return out


def _recipe_8_5_7(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    m, u = prm.m_plus, prm.u_plus
    out = []
    for a, g, d in iproduct(range(p), repeat=3):
        for b in _units(p):
            out.append(
                _mat(
                    [
                        [1, 0, 0, 0, 0],
                        [a, b, 0, g, d],
                        [-g, 0, b, m * a + d, -a],
                        [0, 0, 0, 1, 0],
                        [0, 0, 0, 0, 1],
                    ],
                    p,
                )
            )
    out.append(
        _mat(
            [
                [1, 0, 0, 0, 0],
                [0, _frac(u - 9, 2 * m * m, p), _frac(3, m, p), 0, 0],
                [0, 1, _frac(u + 9, 2 * m * m, p), 0, 0],
                [_frac(-(u + 3) * m, 2 * u, p), 0, 0,
                 _frac(u * u - 2 * u + 9, 4 * u, p), _frac(m * m, u, p)],
                [_frac(-(u + 1) * m * m, 2 * u, p), 0, 0,
                 _frac((u * u + 3) * m, 4 * u, p),
                 _frac(-(u * u + 2 * u + 9), 4 * u, p)],
            ],
            p,
        )
    )
    for a, b, g in iproduct(range(p), repeat=3):
        if a == 0 and b == 0 and g == 0:
            continue
        out.append(
            _mat(
                [
                    [a, 0, 0, b, g],
                    [0, 1, 0, 0, 0],
                    [0, 0, 1, 0, 0],
                    [g, 0, 0, a, -b - m * g],
                    [b + m * g, 0, 0, -g, a - m * b - m * m * g],
                ],
                p,
            )
        )
    return out


def _recipe_8_5_8(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    w = prm.omega
    out = []
    for xi in _units(p):
        xi_inv = pow(xi, -1, p)
        for lam, mu, nu in iproduct(range(p), repeat=3):
            out.append(
                _mat(
                    [
                        [1, 0, 0, 0, 2 * mu * xi],
                        [lam, xi_inv, mu, 0, nu],
                        [0, 0, 1, 0, -2 * lam * xi],
                        [mu, 0, w * lam, xi_inv,
                         -w * lam * lam * xi + mu * mu * xi],
                        [0, 0, 0, 0, xi],
                    ],
                    p,
                )
            )
    for xi in _units(p):
        for a, b in iproduct(range(p), repeat=2):
            if a == 0 and b == 0:
                continue
            norm = (a * a - w * b * b) % p
            out.append(
                xi
                * _mat(
                    [
                        [a, 0, w * b, 0, 0],
                        [0, norm, 0, 0, 0],
                        [b, 0, a, 0, 0],
                        [0, 0, 0, norm, 0],
                        [0, 0, 0, 0, 1],
                    ],
                    p,
                )
                % p
            )
            out.append(
                xi
                * _mat(
                    [
                        [a, 0, w * b, 0, 0],
                        [0, -norm, 0, 0, 0],
                        [-b, 0, -a, 0, 0],
                        [0, 0, 0, norm, 0],
                        [0, 0, 0, 0, 1],
                    ],
                    p,
                )
                % p
            )
    return out


def _recipe_8_5_9(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    out = []
    for lam in _units(p):
        for a in _units(p):
            for b in range(p):
                rows = [
                    [a * a, _frac(a * b, 2, p), 0, _frac(b * b, 4, p), 0],
                    [0, a, 0, b, 0],
                    [_frac(-3 * a * a * b, 2, p), _frac(-3 * a * b * b, 8, p),
                     pow(a, 3, p), _frac(-pow(b, 3, p), 8, p), 0],
                    [0, 0, 0, 1, 0],
                    [_frac(3 * a * a * b * b, 8, p), _frac(a * pow(b, 3, p), 16, p),
                     _frac(-pow(a, 3, p) * b, 2, p), _frac(pow(b, 4, p), 64, p),
                     pow(a, 4, p)],
                ]
                out.append(lam * _mat(rows, p) % p)
    if p == 3:
        out.append(
            _mat(
                [
                    [1, 0, 1, 0, 1],
                    [0, 1, 0, 0, 2],
                    [0, 0, 1, 0, 2],
                    [0, 2, 2, 1, 1],
                    [0, 0, 0, 0, 1],
                ],
                p,
            )
        )
    else:
        out.append(
            _mat(
                [
                    [_frac(-1, 3, p), 0, 0, _frac(3, 2, p), _frac(2, 27, p)],
                    [0, 1, _frac(2, 9, p), 3, _frac(-4, 27, p)],
                    [0, _frac(1, 2, p), _frac(1, 9, p), _frac(-3, 2, p), _frac(2, 27, p)],
                    [1, 1, _frac(-2, 9, p), _frac(3, 2, p), _frac(2, 27, p)],
                    [_frac(1, 4, p), _frac(-1, 4, p), _frac(1, 18, p),
                     _frac(3, 8, p), _frac(1, 54, p)],
                ],
                p,
            )
        )
    return out


def _recipe_8_5_10(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    out = []
    for lam in _units(p):
        for s in iproduct(range(p), repeat=6):
            out.append(
                _mat(
                    [
                        [lam, 0, 0, 0, 0],
                        [s[0], 1, 0, s[1], s[2]],
                        [s[3], 0, 1, s[4], s[5]],
                        [0, 0, 0, lam, 0],
                        [0, 0, 0, 0, lam],
                    ],
                    p,
                )
            )
    for lam in _units(p):
        out.append(
            _mat(
                [
                    [lam, 0, 0, 0, 0],
                    [0, lam, 0, 0, 0],
                    [0, 0, 1, 0, 0],
                    [0, 0, 0, lam * lam, 0],
                    [0, 0, 0, 0, 1],
                ],
                p,
            )
        )
    out.append(
        _mat(
            [
                [1, 0, 0, -2, 0],
                [0, -1, 1, 0, 0],
                [0, -1, 0, 0, 0],
                [1, 0, 0, -1, -1],
                [0, 0, 0, -1, 0],
            ],
            p,
        )
    )
    return out


def _recipe_8_5_12(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    out = []
    for lam in _units(p):
        for a in _units(p):
            for b in _units(p):
                out.append(
                    lam
                    * _mat(
                        [
                            [a, 0, 0, 0, 0],
                            [0, b, 0, 0, 0],
                            [0, 0, pow(a, -1, p) * b, 0, 0],
                            [0, 0, 0, a * a, 0],
                            [0, 0, 0, 0, 1],
                        ],
                        p,
                    )
                    % p
                )
    for g, s1, s2, s3 in iproduct(range(p), repeat=4):
        out.append(
            _mat(
                [
                    [1, 0, s1, 0, 2 * g],
                    [0, 1, g, 0, s2],
                    [0, 0, 1, 0, 0],
                    [g, 0, s3, 1, g * g],
                    [0, 0, 0, 0, 1],
                ],
                p,
            )
        )
    return out


def _recipe_8_5_14(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    w = prm.omega
    out = []
    for lam in _units(p):
        for a, b in iproduct(range(p), repeat=2):
            if a == 0 and b == 0:
                continue
            top = [lam * (a * a + w * b * b), 0, 0, 2 * w * lam * a * b, 2 * lam * a * b]
            out.append(
                _mat(
                    [
                        top,
                        [0, a, b, 0, 0],
                        [0, w * b, a, 0, 0],
                        [lam * a * b, 0, 0, lam * a * a, lam * b * b],
                        [w * lam * a * b, 0, 0, w * w * lam * b * b, lam * a * a],
                    ],
                    p,
                )
            )
            out.append(
                _mat(
                    [
                        top,
                        [0, a, b, 0, 0],
                        [0, -w * b, -a, 0, 0],
                        [-lam * a * b, 0, 0, -lam * a * a, -lam * b * b],
                        [-w * lam * a * b, 0, 0, -w * w * lam * b * b, -lam * a * a],
                    ],
                    p,
                )
            )
    for a, b in iproduct(range(p), repeat=2):
        out.append(
            _mat(
                [
                    [1, w * a, b, 0, 0],
                    [0, 1, 0, 0, 0],
                    [0, 0, 1, 0, 0],
                    [0, 0, a, 1, 0],
                    [0, w * b, 0, 0, 1],
                ],
                p,
            )
        )
    return out


def _recipe_8_5_18(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    out = []
    for a, b, g, d in iproduct(_units(p), repeat=4):
        diag = np.diag(np.array([a, b, b, g, d], dtype=np.int64))
        for e, z, h in iproduct(range(p), repeat=3):
            uni = _mat(
                [
                    [1, 0, 0, 0, 0],
                    [e, 1, 0, 0, z],
                    [0, 0, 1, h, -z],
                    [0, 0, 0, 1, 0],
                    [0, 0, 0, 0, 1],
                ],
                p,
            )
            out.append(diag @ uni % p)
    out.append(
        _mat(
            [
                [1, 0, 0, 0, 0],
                [0, 1, 1, 0, 0],
                [0, 0, -1, 0, 0],
                [0, 0, 0, 0, 1],
                [0, 0, 0, 1, 0],
            ],
            p,
        )
    )
    out.append(
        _mat(
            [
                [0, 0, 0, 1, 0],
                [0, 0, 1, 0, 0],
                [0, 1, 0, 0, 0],
                [1, 0, 0, 0, 0],
                [0, 0, 0, 0, 1],
            ],
            p,
        )
    )
    return out


def _recipe_8_6_6(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    w = prm.omega
    w_inv = pow(w, -1, p)
    out = []
    for a, b, g, d in iproduct(range(p), repeat=4):
        for lam in _units(p):
            for s in iproduct(range(p), repeat=5):
                for s6 in _units(p):
                    out.append(
                        _mat(
                            [
                                [w, a, b, 0, g, s[0]],
                                [0, w * lam, 0, 0, 0, s[1]],
                                [0, 0, lam, 0, 0, s[2]],
                                [0, w_inv * g, -w_inv * a, 1, d, s[3]],
                                [0, 0, 0, 0, w * w * lam, s[4]],
                                [0, 0, 0, 0, 0, s6],
                            ],
                            p,
                        )
                    )
                    out.append(
                        _mat(
                            [
                                [-1, a, b, 1, g, s[0]],
                                [0, lam, 0, 0, 2 * lam, s[1]],
                                [0, 0, 0, 0, lam, s[2]],
                                [-1, d, b - d, 0, d - a, s[3]],
                                [0, -lam, lam, 0, -lam, s[4]],
                                [0, 0, 0, 0, 0, s6],
                            ],
                            p,
                        )
                    )
    return out


def _recipe_8_6_8(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    out = []
    gl2 = [
        np.array(c, dtype=np.int64).reshape(2, 2)
        for c in iproduct(range(p), repeat=4)
    ]
    gl2 = [M for M in gl2 if (M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]) % p]
    by_det: dict[int, list[np.ndarray]] = {}
    for M in gl2:
        by_det.setdefault(int((M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]) % p), []).append(M)
    for A2 in gl2:
        det = int((A2[0, 0] * A2[1, 1] - A2[0, 1] * A2[1, 0]) % p)
        for B2 in by_det[det]:
            for C2 in by_det[det]:
                M = np.zeros((6, 6), dtype=np.int64)
                M[0:2, 0:2] = A2
                M[2:4, 2:4] = B2
                M[4:6, 4:6] = C2
                out.append(M)
    out.append(
        _mat(
            [
                [0, 0, 1, 0, 0, 0],
                [0, 0, 0, 1, 0, 0],
                [1, 0, 0, 0, 0, 0],
                [0, 1, 0, 0, 0, 0],
                [0, 0, 0, 0, 1, 0],
                [0, 0, 0, 0, 0, 1],
            ],
            p,
        )
    )
    out.append(
        _mat(
            [
                [0, 0, 1, 0, 0, 0],
                [0, 0, 0, 1, 0, 0],
                [0, 0, 0, 0, -1, 0],
                [0, 0, 0, 0, 0, 1],
                [-1, 0, 0, 0, 0, 0],
                [0, 1, 0, 0, 0, 0],
            ],
            p,
        )
    )
    return out


def recipe_8_6_13_families(p: int) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """The two 8.6.13 families separately (the K rows carry an asymmetric
    factor in the source; stabilization is verified and reported, not assumed)."""
    K = []
    for lam in _units(p):
        for a, b, g, d in iproduct(range(p), repeat=4):
            if (a * d - b * g) % p == 0:
                continue
            lam2 = lam * lam
            K.append(
                _mat(
                    [
                        [a, b, 0, 0, 0, 0],
                        [g, d, 0, 0, 0, 0],
                        [0, 0, lam2 * d, -lam2 * g, 0, 0],
                        [0, 0, -lam2 * b, lam2 * a, 0, 0],
                        [0, 0, (lam - lam2) * d, (2 * lam + lam2) * g, lam * d, lam * g],
                        [0, 0, (lam + 2 * lam2) * b, 2 * (lam - lam2) * a, lam * b, lam * a],
                    ],
                    p,
                )
            )
    L = []
    half = pow(2, -1, p)
    for a, b, g, d, e, z, h in iproduct(range(p), repeat=7):
        L.append(
            _mat(
                [
                    [1, 0, 0, 0, 0, 0],
                    [0, 1, 0, 0, 0, 0],
                    [a, -2 * b * b + 2 * b + e - z + g * d, b + 1, g, b, half * g],
                    [-b * b + 2 * b + e - z + half * g * d,
                     half * d - half * h, d, 2 * b + 1, d, b],
                    [-a - half * g, e, -b, -g, 1 - b, -half * g],
                    [z, h, -2 * d, -4 * b, -2 * d, 1 - 2 * b],
                ],
                p,
            )
        )
    return K, L


def _recipe_8_6_13(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    K, L = recipe_8_6_13_families(p)
    return K + L


def _recipe_8_6_14(p: int, prm: ResolvedParams) -> list[np.ndarray]:
    m, u = prm.m_minus, prm.u_minus
    out = []
    for lam in _units(p):
        out.append(np.diag(np.array([1, lam, lam, 1, lam, 1], dtype=np.int64)))
    for a, b, g in iproduct(range(p), repeat=3):
        out.append(
            _mat(
                [
                    [1, 0, 0, 0, 0, 0],
                    [-m * g - b, 1, 0, -g, 0, -a],
                    [a, 0, 1, b, 0, g],
                    [0, 0, 0, 1, 0, 0],
                    [-g, 0, 0, m * b - a, 1, -b],
                    [0, 0, 0, 0, 0, 1],
                ],
                p,
            )
        )
    out.append(
        _mat(
            [
                [1, 0, 0, 0, 0, 0],
                [0, _frac(9 - u, 2 * u, p), _frac(m * m, u, p), 0,
                 _frac(m * (u - 3), u, p), 0],
                [0, _frac(-3 * m, u, p), _frac(-(9 + u), 2 * u, p), 0,
                 _frac(2 * m * m, u, p), 0],
                [_frac(m * (3 - u), 2 * u, p), 0, 0, _frac(9 - u, 2 * u, p), 0,
                 _frac(-m * m, u, p)],
                [0, 0, 0, 0, 1, 0],
                [_frac(m * m, u, p), 0, 0, _frac(3 * m, u, p), 0,
                 _frac(-(9 + u), 2 * u, p)],
            ],
            p,
        )
    )
    out.extend(recipe_8_6_14_B_family(p, m))
    return out


def recipe_8_6_14_B_family(p: int, m: int) -> list[np.ndarray]:
    """One B matrix per nonzero first row; the third row follows the stated
    rule and the remaining rows are determined."""
    out = []
    for first in iproduct(range(p), repeat=6):
        if not any(first):
            continue
        a, b, g, d, e, z = first
        if a or d or z:
            third = (0, (d * d + m * z * d - a * z) % p,
                     (-a * a + m * d * a + d * z) % p, 0, (z * z - a * d) % p, 0)
        else:
            third = ((g * g + m * e * g - b * e) % p, 0, 0,
                     (g * e + b * b) % p, 0, (e * e + m * b * e + b * g) % p)
        M = _assemble_8_6_14_B(first, third, m, p)
        if M is not None:
            out.append(M)
    return out


def _assemble_8_6_14_B(first, third, m: int, p: int) -> np.ndarray | None:
    a, b, g, d, e, z = first
    t1, t2, t3, t4, t5, t6 = third
    nu, xi, lam, mu, sig, rho = (-t1) % p, t2, t3, (-t4) % p, t5, (-t6) % p
    rows = [
        list(first),
        [mu + m * rho, lam, m * xi + sig, rho, -xi, nu],
        list(third),
        [z, e, -b, a - m * d, -g - m * e, d],
        [rho, -sig, xi, nu - m * mu, lam + m * sig, mu],
        [d + m * z, -g, -m * b - e, z, b, a],
    ]
    M = _mat(rows, p)
    return M if modp.is_invertible(M, p) else None


def recipe_8_6_14_single_hypothesis(p: int, m: int) -> np.ndarray:
    """The reportedly sufficient single extra matrix (checked, not assumed)."""
    return _mat(
        [
            [0, 1, 0, 0, 0, 0],
            [-1, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, -1, 0, 0, 0],
            [0, 0, 0, m, 0, -1],
            [0, 0, -m, 0, 1, 0],
        ],
        p,
    )


_RECIPES = {
    "5.4.1": _recipe_5_4_1,
    "6.4.3": _recipe_6_4_3,
    "6.4.4": _recipe_6_4_4,
    "7.5.6": _recipe_7_5_6,
    "8.4.4": _recipe_8_4_4,
    "8.5.7": _recipe_8_5_7,
    "8.5.8": _recipe_8_5_8,
    "8.5.9": _recipe_8_5_9,
    "8.5.10": _recipe_8_5_10,
    "8.5.12": _recipe_8_5_12,
    "8.5.14": _recipe_8_5_14,
    "8.5.18": _recipe_8_5_18,
    "8.6.6": _recipe_8_6_6,
    "8.6.8": _recipe_8_6_8,
    "8.6.13": _recipe_8_6_13,
    "8.6.14": _recipe_8_6_14,
}

# sweep sizes grow fast in p; checks above these bounds are skipped, not run
RECIPE_MAX_PRIME = {"8.6.6": 3, "8.6.8": 3}


def has_recipe(entry_id: str) -> bool:
    return entry_id in _RECIPES


def recipe_ids() -> list[str]:
    return sorted(_RECIPES)


def recipe_generators(
    entry_id: str, p: int, params: ResolvedParams | None = None
) -> list[np.ndarray]:
    """Transcribed generating matrices for the entry's matrix group B."""
    q = _as_p(p)
    if entry_id not in _RECIPES:
        raise RecipeUnavailable(entry_id)
    prm = params if params is not None else resolve_params(q)
    mats = _RECIPES[entry_id](q, prm)
    for M in mats:
        if not modp.is_invertible(M, q):
            raise ParameterDomainError(
                f"recipe {entry_id} produced a singular matrix at p={q}"
            )
    return mats
