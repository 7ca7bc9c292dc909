"""Integer arithmetic substrate.

Kronecker symbols, discriminant predicates, fundamental-divisor splittings,
and minimal solutions of the Pell equation t^2 - D r^2 = 4.  Everything here
is exact arbitrary-precision integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def is_discriminant(n: int) -> bool:
    """True iff n is congruent to 0 or 1 mod 4."""
    return n % 4 in (0, 1)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        while n % p == 0:
            n //= p
        p += 1 if p == 2 else 2
    return True


def is_fundamental(d: int) -> bool:
    """True iff d is a fundamental discriminant (field discriminant), d=1 included."""
    if d == 1:
        return True
    if d == 0:
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


@dataclass(frozen=True)
class Discriminant:
    """A validated discriminant value, D = 0 or 1 mod 4."""

    value: int

    def __post_init__(self):
        if self.value % 4 not in (0, 1):
            raise ValueError(f"{self.value} is not 0 or 1 mod 4")

    @property
    def is_square(self) -> bool:
        return is_square(self.value)

    @property
    def is_fundamental(self) -> bool:
        return is_fundamental(self.value)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class PellSolution:
    """Minimal positive (t, r) with t^2 - D r^2 = 4."""

    t: int
    r: int
    D: int

    def __post_init__(self):
        if self.t * self.t - self.D * self.r * self.r != 4:
            raise ValueError("not a solution of t^2 - D r^2 = 4")
        if self.t <= 0 or self.r <= 0:
            raise ValueError("t and r must be positive")


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), fully extended to all integers n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor out twos of n; (a/2) depends on a mod 8
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 == 1 and a % 8 in (3, 5):
            result = -result
    a %= n
    # Jacobi symbol on the odd part by quadratic reciprocity
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def divisors(n: int) -> list[int]:
    """Positive divisors of |n|, sorted."""
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def fundamental_divisors(D: int) -> list[int]:
    """Positive fundamental discriminants d | D with D/d a discriminant.

    Always contains 1.  Rejects D = 0.
    """
    if D == 0:
        raise ValueError("D must be nonzero")
    out = []
    for d in divisors(D):
        if is_fundamental(d) and is_discriminant(D // d):
            out.append(d)
    return out


# --- indefinite form reduction at the integer-triple level -------------------
#
# The reduction operator rho maps [a,b,c] to [c,b',*] with b' = -b mod 2|c|
# pushed into the standard window.  The accompanying SL2(Z) step matrix is
# (0,-1;1,m) with m = (b+b')/(2c).  qforms builds on these helpers; Pell
# solutions fall out of the cycle of the principal form.


def is_reduced(a: int, b: int, c: int, D: int) -> bool:
    """Reduced indefinite form: |sqrt(D)-2|a|| < b < sqrt(D), exactly."""
    if b <= 0 or b * b >= D:
        return False
    t = 2 * abs(a) - b
    if t > 0 and t * t >= D:
        return False
    # sqrt(D) < 2|a| + b
    return D < (2 * abs(a) + b) ** 2


def reduction_step(a: int, b: int, c: int, D: int) -> tuple[int, int, int, int]:
    """One rho step.  Returns (a', b', c', m) with step matrix (0,-1;1,m)."""
    if c == 0:
        raise ValueError("rho undefined for c = 0 (square discriminant edge)")
    s = math.isqrt(D)
    ac = abs(c)
    bp = (-b) % (2 * ac)
    if ac > s:
        if bp > ac:
            bp -= 2 * ac
    else:
        # push b' into (s - 2|c|, s]
        bp += ((s - bp) // (2 * ac)) * (2 * ac)
    m = (b + bp) // (2 * c)
    return c, bp, (bp * bp - D) // (4 * c), m


def _mat_mul(A, B):
    return (
        A[0] * B[0] + A[1] * B[2],
        A[0] * B[1] + A[1] * B[3],
        A[2] * B[0] + A[3] * B[2],
        A[2] * B[1] + A[3] * B[3],
    )


def principal_cycle_matrix(D: int) -> tuple[int, int, int, int]:
    """Automorph of the principal form of discriminant D as a matrix tuple.

    Reduces the principal form, walks its rho cycle once, and conjugates the
    cycle matrix back.  D must be positive and non-square.
    """
    if D <= 0 or is_square(D):
        raise ValueError("D must be positive and non-square")
    b0 = D % 2
    a, b, c = 1, b0, (b0 * b0 - D) // 4
    U = (1, 0, 0, 1)
    # reduce (terminates in O(log) steps)
    guard = 0
    while not is_reduced(a, b, c, D):
        a, b, c, m = reduction_step(a, b, c, D)
        U = _mat_mul(U, (0, -1, 1, m))
        guard += 1
        if guard > 10_000:
            raise RuntimeError("reduction did not terminate")
    start = (a, b, c)
    M = (1, 0, 0, 1)
    while True:
        a, b, c, m = reduction_step(a, b, c, D)
        M = _mat_mul(M, (0, -1, 1, m))
        if (a, b, c) == start:
            break
    # conjugate back to the principal form: A = U M U^{-1}
    det = U[0] * U[3] - U[1] * U[2]
    Uinv = (U[3] * det, -U[1] * det, -U[2] * det, U[0] * det)
    return _mat_mul(_mat_mul(U, M), Uinv)


def pell_fundamental(D: int) -> PellSolution:
    """Minimal (t, r) with t^2 - D r^2 = 4, via the principal reduction cycle."""
    A = principal_cycle_matrix(D)
    t = abs(A[0] + A[3])
    r = abs(A[2])
    if t == 0 or r == 0:
        raise RuntimeError(f"degenerate cycle matrix for D={D}: {A}")
    return PellSolution(t=t, r=r, D=D)


def pell_brute_force(D: int, rmax: int) -> tuple[int, int] | None:
    """Smallest (t, r) with r <= rmax and t^2 - D r^2 = 4, by direct scan."""
    for r in range(1, rmax + 1):
        t2 = D * r * r + 4
        t = math.isqrt(t2)
        if t * t == t2:
            return t, r
    return None
