"""Integral binary quadratic forms and their hyperbolic geometry.

Forms [a,b,c] of positive non-square discriminant, the SL2(Z) action,
reduction cycles and class enumeration, automorphs, Heegner geodesics,
sign functions, and the truncation enumerators used by every lattice sum.

Points in the upper half plane come in two flavours: ExactPoint carries
Gaussian-rational coordinates for exact identity tests, while any complex
number with positive imaginary part works for numerics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import arith


class OnNetError(ValueError):
    """Raised when a point lies (numerically) on the net of Heegner geodesics."""


@dataclass(frozen=True)
class QForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return math.gcd(math.gcd(self.a, self.b), self.c)

    def coeffs(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __neg__(self) -> "QForm":
        return QForm(-self.a, -self.b, -self.c)

    def __str__(self) -> str:
        return f"[{self.a},{self.b},{self.c}]"


@dataclass(frozen=True)
class GroupElement:
    """Element of SL2(Z), entries (p q; r s)."""

    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        if self.p * self.s - self.q * self.r != 1:
            raise ValueError("determinant must be 1")

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.p * other.p + self.q * other.r,
            self.p * other.q + self.q * other.s,
            self.r * other.p + self.s * other.r,
            self.r * other.q + self.s * other.s,
        )

    def inverse(self) -> "GroupElement":
        return GroupElement(self.s, -self.q, -self.r, self.p)


IDENTITY = GroupElement(1, 0, 0, 1)
S = GroupElement(0, -1, 1, 0)
T = GroupElement(1, 1, 0, 1)


@dataclass(frozen=True)
class ExactPoint:
    """Upper-half-plane point with rational coordinates u + iv, v > 0."""

    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "v", Fraction(self.v))
        if self.v <= 0:
            raise ValueError("v must be positive")

    def __complex__(self) -> complex:
        return complex(self.u) + 1j * complex(self.v)


def _uv(tau):
    """Split a point into (u, v); exact for ExactPoint, floats otherwise."""
    if isinstance(tau, ExactPoint):
        return tau.u, tau.v
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("point must lie in the upper half plane")
    return tau.real, tau.imag


def mobius(g: GroupElement, tau):
    """Fractional linear action g.tau; exact on ExactPoint."""
    if isinstance(tau, ExactPoint):
        u, v = tau.u, tau.v
        den = (g.r * u + g.s) ** 2 + (g.r * v) ** 2
        nu = (g.p * u + g.q) * (g.r * u + g.s) + g.p * g.r * v * v
        return ExactPoint(nu / den, v / den)
    tau = complex(tau)
    return (g.p * tau + g.q) / (g.r * tau + g.s)


def act(Q: QForm, g: GroupElement) -> QForm:
    """(Q o g)(x, y) = Q(px+qy, rx+sy); preserves the discriminant."""
    a, b, c = Q.coeffs()
    a2 = a * g.p * g.p + b * g.p * g.r + c * g.r * g.r
    b2 = 2 * a * g.p * g.q + b * (g.p * g.s + g.q * g.r) + 2 * c * g.r * g.s
    c2 = a * g.q * g.q + b * g.q * g.s + c * g.s * g.s
    return QForm(a2, b2, c2)


def sign(Q: QForm) -> int:
    """sgn(a) if a != 0, else sgn(c).  Rejects the zero form."""
    if Q.a != 0:
        return 1 if Q.a > 0 else -1
    if Q.c != 0:
        return 1 if Q.c > 0 else -1
    if Q.b != 0:
        # [0,b,0] has square discriminant b^2; sign by convention of c-branch
        raise ValueError("sign undefined for [0,b,0]")
    raise ValueError("zero form has no sign")


def value(Q: QForm, tau):
    """Q(tau, 1) = a tau^2 + b tau + c; exact on ExactPoint (returns pair)."""
    if isinstance(tau, ExactPoint):
        u, v = tau.u, tau.v
        re = Q.a * (u * u - v * v) + Q.b * u + Q.c
        im = v * (2 * Q.a * u + Q.b)
        return re, im
    tau = complex(tau)
    return (Q.a * tau + Q.b) * tau + Q.c


def qtau(Q: QForm, tau):
    """Q_tau = (a|tau|^2 + b u + c)/v; exact rational on ExactPoint."""
    u, v = _uv(tau)
    return (Q.a * (u * u + v * v) + Q.b * u + Q.c) / v


def roots(Q: QForm) -> tuple[float, float]:
    """The two real zeros of Q(x,1), ascending; needs positive non-square disc."""
    D = Q.disc
    if D <= 0 or arith.is_square(D):
        raise ValueError("roots need positive non-square discriminant")
    sq = math.sqrt(D)
    w1 = (-Q.b - sq) / (2 * Q.a)
    w2 = (-Q.b + sq) / (2 * Q.a)
    return (w1, w2) if w1 < w2 else (w2, w1)


def geodesic_center_radius(Q: QForm) -> tuple[float, float]:
    """Center and radius of the semicircle S_Q (a != 0)."""
    D = Q.disc
    if Q.a == 0:
        raise ValueError("geodesic of an a=0 form is a vertical line")
    return -Q.b / (2 * Q.a), math.sqrt(D) / (2 * abs(Q.a))


def indicator(Q: QForm, tau, tol_net: float = 1e-12) -> int:
    """1_Q(tau): 1 iff tau lies in the bounded component A_Q cut out by S_Q.

    Equivalent to sign(Q) * sgn(Q_tau) < 0.  Raises OnNetError if tau is on
    (or numerically too close to) the geodesic S_Q.
    """
    qt = qtau(Q, tau)
    if isinstance(tau, ExactPoint):
        if qt == 0:
            raise OnNetError(f"{tau} lies on the geodesic of {Q}")
        return 1 if sign(Q) * qt < 0 else 0
    scale = 1.0 + abs(Q.a) * (abs(tau) ** 2) + abs(Q.b * tau.real) + abs(Q.c)
    if abs(qt) <= tol_net * scale / tau.imag:
        raise OnNetError(f"{tau} is within tolerance of the geodesic of {Q}")
    return 1 if sign(Q) * qt < 0 else 0


# --- reduction, cycles, classes ---------------------------------------------


def rho(Q: QForm) -> tuple[QForm, GroupElement]:
    """One reduction step Q -> Q o g with g = (0,-1;1,m)."""
    a, b, c, m = arith.reduction_step(Q.a, Q.b, Q.c, Q.disc)
    return QForm(a, b, c), GroupElement(0, -1, 1, m)


def is_reduced(Q: QForm) -> bool:
    return arith.is_reduced(Q.a, Q.b, Q.c, Q.disc)


def reduce_form(Q: QForm) -> tuple[QForm, GroupElement]:
    """Reduced form R and g in SL2(Z) with Q o g = R."""
    g = IDENTITY
    guard = 0
    while not is_reduced(Q):
        Q, step = rho(Q)
        g = g @ step
        guard += 1
        if guard > 10_000:
            raise RuntimeError("reduction did not terminate")
    return Q, g


def reduction_cycle(Q: QForm) -> list[QForm]:
    """The full rho cycle of the class of Q (a list of reduced forms)."""
    R, _ = reduce_form(Q)
    cycle = [R]
    cur = R
    while True:
        cur, _ = rho(cur)
        if cur == R:
            return cycle
        cycle.append(cur)


def canonical_representative(Q: QForm) -> QForm:
    """Deterministic class representative: lex-least (|a|, a, b, c) in the cycle."""
    return min(reduction_cycle(Q), key=lambda f: (abs(f.a), f.a, f.b, f.c))


def equivalent(Q1: QForm, Q2: QForm) -> bool:
    if Q1.disc != Q2.disc:
        return False
    return canonical_representative(Q1) == canonical_representative(Q2)


def reduced_forms(D: int) -> list[QForm]:
    """All reduced forms of discriminant D (positive non-square), sorted."""
    if D <= 0 or arith.is_square(D) or D % 4 not in (0, 1):
        raise ValueError("need a positive non-square discriminant")
    s = math.isqrt(D)
    out = []
    for b in range(1, s + 1):
        if (D - b * b) % 4 != 0 or b * b >= D:
            continue
        m = (b * b - D) // 4  # = a*c < 0
        for a in arith.divisors(m):
            for aa in (a, -a):
                c = m // aa
                if arith.is_reduced(aa, b, c, D):
                    out.append(QForm(aa, b, c))
    return sorted(out, key=lambda f: (f.a, f.b, f.c))


def class_representatives(D: int) -> list[QForm]:
    """One canonical representative per class in Q(D)/Gamma, sorted.

    Includes imprimitive classes when D has square factors.
    """
    reps = {canonical_representative(Q) for Q in reduced_forms(D)}
    return sorted(reps, key=lambda f: (abs(f.a), f.a, f.b, f.c))


def class_number(D: int) -> int:
    return len(class_representatives(D))


def automorph(Q: QForm) -> GroupElement:
    """Generator of the stabilizer of Q modulo +-1.

    Built from the minimal Pell solution of the discriminant of the primitive
    part; imprimitive forms share the stabilizer of their primitive part.
    """
    D = Q.disc
    if D <= 0 or arith.is_square(D):
        raise ValueError("automorph needs positive non-square discriminant")
    g = Q.content
    a, b, c = Q.a // g, Q.b // g, Q.c // g
    D1 = D // (g * g)
    sol = arith.pell_fundamental(D1)
    t, r = sol.t, sol.r
    return GroupElement((t + b * r) // 2, c * r, -a * r, (t - b * r) // 2)


# --- truncation enumerators --------------------------------------------------


def enumerate_shell(D: int, tau: complex, R: float) -> list[QForm]:
    """All forms of discriminant D with |Q_tau| <= R, sorted.

    Uses |Q(tau,1)|^2 = v^2 (Q_tau^2 + D) to bound |a| and |2au+b|.
    """
    tau = complex(tau)
    u, v = tau.real, tau.imag
    if v <= 0:
        raise ValueError("tau must lie in the upper half plane")
    B = math.sqrt(R * R + D)
    amax = (R + B) / (2 * v)
    out = []
    for a in range(-math.floor(amax), math.floor(amax) + 1):
        if a == 0:
            continue
        blo = math.ceil(-2 * a * u - B)
        bhi = math.floor(-2 * a * u + B)
        # fix parity: b^2 = D mod 4 needs b = D mod 2
        for b in range(blo, bhi + 1):
            if (b - D) % 2 != 0:
                continue
            if (b * b - D) % (4 * a) != 0:
                continue
            c = (b * b - D) // (4 * a)
            Q = QForm(a, b, c)
            if abs(qtau(Q, tau)) <= R:
                out.append(Q)
    return sorted(out, key=lambda f: (f.a, f.b, f.c))


def enclosing_forms(D: int, tau, tol_net: float = 1e-12) -> list[QForm]:
    """The finite list of forms Q of discriminant D with 1_Q(tau) = 1, sorted.

    tau inside the semicircle of radius sqrt(D)/(2|a|) forces |a| < sqrt(D)/(2v)
    and |2au + b| < sqrt(D).
    """
    u, v = _uv(tau)
    sq = math.sqrt(D)
    amax = sq / (2 * float(v))
    out = []
    for a in range(-math.floor(amax), math.floor(amax) + 1):
        if a == 0:
            continue
        blo = math.ceil(float(-2 * a * u) - sq)
        bhi = math.floor(float(-2 * a * u) + sq)
        for b in range(blo, bhi + 1):
            if (b - D) % 2 != 0 or (b * b - D) % (4 * a) != 0:
                continue
            c = (b * b - D) // (4 * a)
            Q = QForm(a, b, c)
            if indicator(Q, tau, tol_net=tol_net):
                out.append(Q)
    return sorted(out, key=lambda f: (f.a, f.b, f.c))


def parson_boundary_forms(Q0: QForm) -> list[QForm]:
    """All forms equivalent to Q0 with a*c < 0 (the rational period support).

    Finite: ac < 0 with b^2 - 4ac = D forces b^2 < D and |a c| <= D/4.
    """
    D = Q0.disc
    if D <= 0 or arith.is_square(D):
        raise ValueError("need positive non-square discriminant")
    rep = canonical_representative(Q0)
    s = math.isqrt(D)
    out = []
    for b in range(-s, s + 1):
        if (b - D) % 2 != 0:
            continue
        m = (b * b - D) // 4  # < 0; equals a*c
        for a in arith.divisors(m):
            for aa in (a, -a):
                c = m // aa
                Q = QForm(aa, b, c)
                if canonical_representative(Q) == rep:
                    out.append(Q)
    return sorted(out, key=lambda f: (f.a, f.b, f.c))


# --- fundamental domain ------------------------------------------------------


def reduce_to_fundamental_domain(tau: complex, max_iter: int = 200):
    """Map tau into the standard fundamental domain of SL2(Z).

    Returns (tau_red, g) with g.tau = tau_red.
    """
    tau = complex(tau)
    g = IDENTITY
    for _ in range(max_iter):
        n = round(tau.real)
        if n != 0:
            tau = tau - n
            g = GroupElement(1, -n, 0, 1) @ g
        if abs(tau) < 1 - 1e-15:
            tau = -1 / tau
            g = S @ g
        else:
            return tau, g
    return tau, g
