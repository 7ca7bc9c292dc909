import math

import pytest
from hypothesis import given, settings, strategies as st

from localforms.arith import (
    divisors,
    fundamental_divisors,
    is_discriminant,
    is_fundamental,
    kronecker,
    pell_brute_force,
    pell_fundamental,
)

ODD_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43]


@given(st.integers(-200, 200), st.sampled_from(ODD_PRIMES))
def test_kronecker_euler_criterion(a, p):
    # (a/p) = a^((p-1)/2) mod p for odd primes
    expected = pow(a % p, (p - 1) // 2, p)
    got = kronecker(a, p) % p
    assert got == expected


@given(st.integers(-60, 60), st.integers(-60, 60), st.integers(-60, 60))
def test_kronecker_multiplicative_top(a, b, n):
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


@given(st.integers(-60, 60), st.integers(-60, 60), st.integers(-60, 60))
def test_kronecker_multiplicative_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_kronecker_special_values():
    assert kronecker(0, 1) == 1
    assert kronecker(1, 0) == 1
    assert kronecker(2, 0) == 0
    assert kronecker(-1, 0) == 1
    # (a/2): 0 for even a, +1 for a = +-1 mod 8, -1 for a = +-3 mod 8
    assert [kronecker(a, 2) for a in range(8)] == [0, 1, 0, -1, 0, -1, 0, 1]


def test_discriminant_predicates():
    assert is_discriminant(5) and is_discriminant(8) and is_discriminant(12)
    assert not is_discriminant(7) and not is_discriminant(10)
    assert is_fundamental(5) and is_fundamental(8) and is_fundamental(-4)
    assert is_fundamental(12)  # 4*3 with 3 = 3 mod 4 squarefree
    assert not is_fundamental(20) and not is_fundamental(9)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


@pytest.mark.parametrize("D,expected", [
    (5, [1, 5]),
    (8, [1, 8]),
    (40, [1, 5, 8, 40]),
    (12, [1, 12]),
])
def test_fundamental_divisors_known(D, expected):
    assert fundamental_divisors(D) == expected


@pytest.mark.parametrize("D", [d for d in range(5, 120)
                               if d % 4 in (0, 1) and math.isqrt(d) ** 2 != d])
def test_fundamental_divisors_structure(D, ):
    for d in fundamental_divisors(D):
        assert D % d == 0
        assert d == 1 or is_fundamental(d)
        co = D // d
        assert co == 1 or is_discriminant(co)


@pytest.mark.parametrize("D", [d for d in range(5, 200)
                               if d % 4 in (0, 1) and math.isqrt(d) ** 2 != d])
def test_pell_fundamental_is_minimal(D):
    sol = pell_fundamental(D)
    assert sol.t * sol.t - D * sol.r * sol.r == 4
    cap = 10_000
    brute = pell_brute_force(D, min(sol.r, cap))
    if sol.r <= cap:
        assert brute == (sol.t, sol.r)
    else:
        # minimality below the scan cap: no smaller solution exists there
        assert brute is None


def test_pell_known_values():
    assert (pell_fundamental(5).t, pell_fundamental(5).r) == (3, 1)
    assert (pell_fundamental(8).t, pell_fundamental(8).r) == (6, 2)
    assert (pell_fundamental(13).t, pell_fundamental(13).r) == (11, 3)
