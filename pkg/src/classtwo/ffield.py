"""Arithmetic in GF(p) for odd primes: primitive roots, square roots,
irreducible-cubic parameters, and the two curve counts E and V_p.

All searches are exhaustive scans; the primes handled by this package stay
in the hundreds, so nothing cleverer is warranted.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class NotASquare(ValueError):
    """Requested a modular square root of a quadratic non-residue."""


class NotFound(RuntimeError):
    """An exhaustive parameter scan came up empty (internal error)."""


class DiscriminantNotSquare(RuntimeError):
    """Cubic discriminant failed to be a nonzero square (internal error)."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_below(limit: int) -> list[int]:
    if limit <= 2:
        return []
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    return [i for i in range(limit) if sieve[i]]


@dataclass(frozen=True)
class PrimeModulus:
    """An odd prime modulus; validated on construction."""

    p: int

    def __post_init__(self) -> None:
        if self.p == 2:
            raise ValueError("p = 2 is not supported (odd primes only)")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __int__(self) -> int:
        return self.p


def _as_p(p: "PrimeModulus | int") -> int:
    q = int(p)
    if isinstance(p, PrimeModulus):
        return q
    if q == 2 or not is_prime(q):
        raise ValueError(f"{q} is not an odd prime")
    return q


def multiplicative_order(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ValueError("0 has no multiplicative order")
    x, n = a, 1
    while x != 1:
        x = x * a % p
        n += 1
    return n


def primitive_root(p: "PrimeModulus | int") -> int:
    """Smallest g in [2, p) generating the multiplicative group of GF(p)."""
    q = _as_p(p)
    if q == 3:
        return 2
    for g in range(2, q):
        if multiplicative_order(g, q) == q - 1:
            return g
    raise NotFound(f"no primitive root below {q}")  # unreachable for prime q


def is_square(a: int, p: "PrimeModulus | int") -> bool:
    q = _as_p(p)
    a %= q
    if a == 0:
        return True
    return pow(a, (q - 1) // 2, q) == 1


def sqrt_mod(a: int, p: "PrimeModulus | int") -> int:
    """Smaller square root of a mod p; raises NotASquare on non-residues."""
    q = _as_p(p)
    a %= q
    for t in range((q + 1) // 2 + 1):
        if t * t % q == a:
            return t
    raise NotASquare(f"{a} is not a square mod {q}")


class CubicFamily(Enum):
    PLUS = "plus"  # x^3 + m x - 1
    MINUS = "minus"  # x^3 - m x + 1


def _cubic_has_root(m: int, p: int, family: CubicFamily) -> bool:
    if family is CubicFamily.PLUS:
        return any((x * x * x + m * x - 1) % p == 0 for x in range(p))
    return any((x * x * x - m * x + 1) % p == 0 for x in range(p))


def find_cubic_param(p: "PrimeModulus | int", family: CubicFamily) -> int:
    """Smallest m making the family's cubic irreducible (rootless) over GF(p)."""
    q = _as_p(p)
    for m in range(q):
        if not _cubic_has_root(m, q, family):
            return m
    raise NotFound(f"no irreducible cubic parameter mod {q} for {family}")


def elliptic_point_count(p: "PrimeModulus | int") -> int:
    """Points on y^2 = x^3 - x over GF(p), including the point at infinity."""
    q = _as_p(p)
    count = 1
    for x in range(q):
        rhs = (x * x * x - x) % q
        if rhs == 0:
            count += 1
        elif pow(rhs, (q - 1) // 2, q) == 1:
            count += 2
    return count


def quartic_curve_solutions(p: "PrimeModulus | int") -> int:
    """Number of (x, y) in GF(p)^2 with x^4 + 6x^2 - 3 = 0 and y^2 = x^3 - x."""
    q = _as_p(p)
    count = 0
    for x in range(q):
        if (pow(x, 4, q) + 6 * x * x - 3) % q != 0:
            continue
        rhs = (x * x * x - x) % q
        if rhs == 0:
            count += 1
        elif pow(rhs, (q - 1) // 2, q) == 1:
            count += 2
    return count


@dataclass(frozen=True)
class CurveStats:
    p: int
    E: int
    V: int


def curve_stats(p: "PrimeModulus | int") -> CurveStats:
    q = _as_p(p)
    return CurveStats(q, elliptic_point_count(q), quartic_curve_solutions(q))


@dataclass(frozen=True)
class ResolvedParams:
    """Concrete values for the symbolic presentation parameters at a prime.

    omega is the smallest primitive root; m_plus / m_minus make
    x^3 + m x - 1 resp. x^3 - m x + 1 irreducible; u_plus / u_minus are the
    (smaller) square roots of the corresponding cubic discriminants.
    """

    p: int
    omega: int
    m_plus: int
    m_minus: int
    u_plus: int
    u_minus: int


def resolve_params(p: "PrimeModulus | int") -> ResolvedParams:
    q = _as_p(p)
    omega = primitive_root(q)
    m_plus = find_cubic_param(q, CubicFamily.PLUS)
    m_minus = find_cubic_param(q, CubicFamily.MINUS)
    disc_plus = (-4 * pow(m_plus, 3, q) - 27) % q
    disc_minus = (4 * pow(m_minus, 3, q) - 27) % q
    # over GF(p) an irreducible cubic always has a nonzero square discriminant
    for disc in (disc_plus, disc_minus):
        if disc == 0 or not is_square(disc, q):
            raise DiscriminantNotSquare(f"discriminant {disc} mod {q}")
    return ResolvedParams(
        p=q,
        omega=omega,
        m_plus=m_plus,
        m_minus=m_minus,
        u_plus=sqrt_mod(disc_plus, q),
        u_minus=sqrt_mod(disc_minus, q),
    )
