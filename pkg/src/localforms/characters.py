"""Extended genus characters chi_d on quadratic forms.

chi_d([a,b,c]) is the Kronecker symbol (d/n) for any integer n represented
by the form and coprime to d, and 0 when gcd(a,b,c,d) > 1.  The value does
not depend on the witness n, and descends to classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import fundamental_divisors, is_fundamental, kronecker
from .qforms import QForm


@dataclass(frozen=True)
class GenusCharacter:
    d: int
    D: int

    def __post_init__(self):
        if self.d == 0:
            return  # chi_0 branch, see genus_char
        if not is_fundamental(self.d):
            raise ValueError(f"d={self.d} is not a fundamental discriminant")
        if self.d not in fundamental_divisors(self.D):
            raise ValueError(f"d={self.d} does not split D={self.D}")

    def __call__(self, Q: QForm) -> int:
        return genus_char(self, Q)


def _spiral(X: int):
    """(x, y) pairs ordered by max-norm ring, deterministically."""
    yield 1, 0
    yield 0, 1
    for n in range(1, X + 1):
        for x in range(-n, n + 1):
            for y in range(-n, n + 1):
                if max(abs(x), abs(y)) == n:
                    yield x, y


def represent_coprime(Q: QForm, d: int, budget: int = 60) -> tuple[int, int, int]:
    """First nonzero n = Q(x,y) with gcd(n, d) = 1, spiral search order.

    Returns (n, x, y).  The existence is guaranteed for gcd(a,b,c,d)=1; the
    budget is a diagnostic safety valve only.
    """
    for x, y in _spiral(budget):
        n = Q.a * x * x + Q.b * x * y + Q.c * y * y
        if n != 0 and math.gcd(n, d) == 1:
            return n, x, y
    raise RuntimeError(f"no represented value coprime to {d} within budget for {Q}")


def genus_char(chi: GenusCharacter, Q: QForm) -> int:
    """chi_d(Q) in {-1, 0, 1}."""
    if Q.disc != chi.D:
        raise ValueError(f"form {Q} has discriminant {Q.disc}, expected {chi.D}")
    d = chi.d
    if d == 0:
        # chi_0 vanishes unless Q is primitive and represents +-1
        if Q.content != 1:
            return 0
        return 1 if _represents_unit(Q) else 0
    if math.gcd(Q.content, d) > 1:
        return 0
    if d == 1:
        return 1
    n, _, _ = represent_coprime(Q, d)
    return kronecker(d, n)


def _represents_unit(Q: QForm, budget: int = 60) -> bool:
    for x, y in _spiral(budget):
        if abs(Q.a * x * x + Q.b * x * y + Q.c * y * y) == 1:
            return True
    return False
