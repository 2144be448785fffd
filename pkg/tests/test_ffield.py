import pytest

from classtwo import ffield
from classtwo.ffield import (
    CubicFamily,
    NotASquare,
    PrimeModulus,
    elliptic_point_count,
    find_cubic_param,
    is_square,
    primes_below,
    primitive_root,
    quartic_curve_solutions,
    resolve_params,
    sqrt_mod,
)

ODD_PRIMES_200 = [p for p in primes_below(200) if p > 2]


def brute_order(a: int, p: int) -> int:
    """Oracle: multiplicative order by repeated multiplication."""
    x, n = a % p, 1
    while x != 1:
        x = x * a % p
        n += 1
    return n


def brute_elliptic(p: int) -> int:
    """Oracle: double loop over all (x, y) pairs plus infinity."""
    return 1 + sum(
        1 for x in range(p) for y in range(p) if (y * y - x * x * x + x) % p == 0
    )


def brute_quartic(p: int) -> int:
    return sum(
        1
        for x in range(p)
        for y in range(p)
        if (x**4 + 6 * x * x - 3) % p == 0 and (y * y - x**3 + x) % p == 0
    )


def test_prime_modulus_validation():
    PrimeModulus(3)
    PrimeModulus(97)
    with pytest.raises(ValueError):
        PrimeModulus(2)
    with pytest.raises(ValueError):
        PrimeModulus(9)


@pytest.mark.parametrize("p,expected", [(3, 2), (5, 2), (7, 3)])
def test_primitive_root_small(p, expected):
    assert primitive_root(p) == expected


def test_primitive_root_is_minimal_generator():
    for p in ODD_PRIMES_200:
        g = primitive_root(p)
        assert brute_order(g, p) == p - 1
        assert all(brute_order(a, p) < p - 1 for a in range(2, g))


def test_primitive_root_against_factored_order():
    for p in ODD_PRIMES_200:
        g = primitive_root(p)
        n = p - 1
        q = 2
        while q * q <= n:
            if n % q == 0:
                assert pow(g, (p - 1) // q, p) != 1
                while n % q == 0:
                    n //= q
            q += 1
        if n > 1:
            assert pow(g, (p - 1) // n, p) != 1


def test_is_square_small():
    assert is_square(0, 5)
    assert is_square(1, 5)
    assert not is_square(2, 5)
    squares_mod5 = {x * x % 5 for x in range(5)}
    for a in range(5):
        assert is_square(a, 5) == (a in squares_mod5)


@pytest.mark.parametrize("a,p,expected", [(0, 7, 0), (4, 7, 2), (2, 7, 3)])
def test_sqrt_mod_examples(a, p, expected):
    assert sqrt_mod(a, p) == expected


def test_sqrt_mod_rejects_nonresidue():
    with pytest.raises(NotASquare):
        sqrt_mod(3, 7)


def test_sqrt_mod_returns_smaller_root():
    for p in [7, 11, 13, 31]:
        for a in range(p):
            if is_square(a, p):
                t = sqrt_mod(a, p)
                assert t * t % p == a
                assert t <= (p - t) % p


@pytest.mark.parametrize(
    "p,family,expected",
    [(3, CubicFamily.PLUS, 2), (5, CubicFamily.PLUS, 1), (3, CubicFamily.MINUS, 1)],
)
def test_cubic_param_examples(p, family, expected):
    # oracle: scan for the smallest rootless parameter directly
    def has_root(m):
        if family is CubicFamily.PLUS:
            return any((x**3 + m * x - 1) % p == 0 for x in range(p))
        return any((x**3 - m * x + 1) % p == 0 for x in range(p))

    smallest = next(m for m in range(p) if not has_root(m))
    assert smallest == expected
    assert find_cubic_param(p, family) == expected


def test_cubic_params_rootless_with_square_discriminant():
    for p in ODD_PRIMES_200:
        mp = find_cubic_param(p, CubicFamily.PLUS)
        mm = find_cubic_param(p, CubicFamily.MINUS)
        assert mp != 0 and mm != 0
        assert all((x**3 + mp * x - 1) % p for x in range(p))
        assert all((x**3 - mm * x + 1) % p for x in range(p))
        for disc in ((-4 * mp**3 - 27) % p, (4 * mm**3 - 27) % p):
            assert disc != 0
            assert is_square(disc, p)


@pytest.mark.parametrize("p,expected", [(3, 4), (5, 8), (7, 8)])
def test_elliptic_count_small(p, expected):
    assert brute_elliptic(p) == expected
    assert elliptic_point_count(p) == expected


def test_elliptic_count_matches_bruteforce():
    for p in [11, 13, 17, 19, 23, 29, 31, 37]:
        assert elliptic_point_count(p) == brute_elliptic(p)


def test_elliptic_count_full_two_torsion():
    # the curve has rational points of order two at x = 0, 1, -1
    for p in ODD_PRIMES_200:
        assert elliptic_point_count(p) % 4 == 0


@pytest.mark.parametrize("p,expected", [(5, 0), (7, 0), (11, 2)])
def test_quartic_solutions_small(p, expected):
    # the p=11 value is nonzero: x=8 solves the quartic and 8^3-8 is a square
    assert brute_quartic(p) == expected
    assert quartic_curve_solutions(p) == expected


def test_quartic_matches_bruteforce():
    for p in [13, 37, 61, 73, 97]:
        assert quartic_curve_solutions(p) == brute_quartic(p)


def test_quartic_vanishes_when_three_is_a_nonresidue():
    # roots of the quartic need sqrt(48), so V_p = 0 whenever 3 is a
    # non-residue, i.e. p = 5, 7 mod 12; for p = 11 mod 12 the count can be
    # positive (11 itself) without affecting any congruence-case formula
    for p in primes_below(500):
        if p > 3 and p % 12 in (5, 7):
            assert quartic_curve_solutions(p) == 0


@pytest.mark.parametrize(
    "p,omega,m_plus", [(3, 2, 2), (5, 2, 1), (7, 3, None)]
)
def test_resolve_params_examples(p, omega, m_plus):
    params = resolve_params(p)
    assert params.omega == omega
    if m_plus is not None:
        assert params.m_plus == m_plus
    assert params.u_plus**2 % p == (-4 * params.m_plus**3 - 27) % p
    assert params.u_minus**2 % p == (4 * params.m_minus**3 - 27) % p
    assert params.u_plus != 0 and params.u_minus != 0


def test_resolve_params_many_primes():
    for p in [q for q in primes_below(100) if q > 2]:
        params = resolve_params(p)
        assert brute_order(params.omega, p) == p - 1


def test_is_prime_and_sieve_agree():
    sieve = set(primes_below(500))
    for n in range(500):
        assert ffield.is_prime(n) == (n in sieve)
