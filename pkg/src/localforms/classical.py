"""Exact q-series engine and classical modular functions.

Truncated Laurent expansions in q = e^{2 pi i tau} with Fraction coefficients:
Eisenstein series E_k, the discriminant Delta, the modular invariant j and its
normalized derivative j', the weakly holomorphic basis j_m (q^{-m} + O(q)),
the completed E_2^*, and the generating kernel j'(tau)/(j(w) - j(tau)).

Evaluation at low-imaginary-part points goes through fundamental-domain
reduction, using Gamma-invariance (weight 0) or (c tau + d)^k transport.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qforms import GroupElement, reduce_to_fundamental_domain


@dataclass(frozen=True)
class QSeries:
    """sum_{n=lead}^{prec-1} coeffs[n-lead] q^n; exponents >= prec unknown."""

    lead: int
    coeffs: tuple
    prec: int

    def __post_init__(self):
        if len(self.coeffs) != self.prec - self.lead:
            raise ValueError("coefficient count inconsistent with lead/prec")

    def __getitem__(self, n: int) -> Fraction:
        if n >= self.prec:
            raise IndexError(f"coefficient of q^{n} beyond truncation {self.prec}")
        if n < self.lead:
            return Fraction(0)
        return self.coeffs[n - self.lead]

    def _trimmed(self) -> "QSeries":
        lead, coeffs = self.lead, list(self.coeffs)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            lead += 1
        if not coeffs:
            return QSeries(self.prec, (), self.prec)
        return QSeries(lead, tuple(coeffs), self.prec)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = qs_const(other, self.prec)
        prec = min(self.prec, other.prec)
        lead = min(self.lead, other.lead)
        coeffs = [self[n] + other[n] for n in range(lead, prec)]
        return QSeries(lead, tuple(coeffs), prec)

    def __neg__(self):
        return QSeries(self.lead, tuple(-c for c in self.coeffs), self.prec)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = qs_const(other, self.prec)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            c = Fraction(other)
            return QSeries(self.lead, tuple(c * x for x in self.coeffs), self.prec)
        a, b = self._trimmed(), other._trimmed()
        lead = a.lead + b.lead
        # truncation budgets combine through the lowest term of the other factor
        prec = min(a.prec + b.lead, b.prec + a.lead)
        out = [Fraction(0)] * (prec - lead)
        for i, ca in enumerate(a.coeffs):
            if ca == 0:
                continue
            for j, cb in enumerate(b.coeffs):
                n = a.lead + b.lead + i + j
                if n >= prec:
                    break
                out[n - lead] += ca * cb
        return QSeries(lead, tuple(out), prec)

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; needs a nonzero lowest coefficient."""
        a = self._trimmed()
        if not a.coeffs or a.coeffs[0] == 0:
            raise ZeroDivisionError("series with vanishing lowest term")
        n_terms = a.prec - a.lead
        c0 = a.coeffs[0]
        inv = [Fraction(1) / c0]
        for n in range(1, n_terms):
            s = Fraction(0)
            for i in range(1, n + 1):
                if i < len(a.coeffs):
                    s += a.coeffs[i] * inv[n - i]
            inv.append(-s / c0)
        lead = -a.lead
        return QSeries(lead, tuple(inv), lead + n_terms)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.inverse()
        return self * (Fraction(1) / Fraction(other))

    def derivative(self) -> "QSeries":
        """q d/dq, i.e. (2 pi i)^{-1} d/d tau on the corresponding function."""
        coeffs = tuple(
            Fraction(n) * c for n, c in zip(range(self.lead, self.prec), self.coeffs)
        )
        return QSeries(self.lead, coeffs, self.prec)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        # plain square-and-multiply; precision tracked by __mul__
        base = self
        result = qs_const(1, self.prec)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result


def qs_const(c, prec: int) -> QSeries:
    c = Fraction(c)
    if c == 0:
        return QSeries(prec, (), prec)
    return QSeries(0, (c,) + (Fraction(0),) * (prec - 1), prec)


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (B_1 = -1/2), exact."""
    if n == 0:
        return Fraction(1)
    # sum_{j=0}^{n} C(n+1, j) B_j = 0
    s = Fraction(0)
    for j in range(n):
        s += math.comb(n + 1, j) * bernoulli(j)
    return -s / (n + 1)


def _sigma(n: int, k: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=None)
def eisenstein_qexp(k: int, M: int = 40) -> QSeries:
    """E_k = 1 - (2k / B_k) sum_{n>=1} sigma_{k-1}(n) q^n, exact."""
    if k < 2 or k % 2:
        raise ValueError("k must be even and >= 2")
    factor = Fraction(-2 * k, 1) / bernoulli(k)
    coeffs = [Fraction(1)] + [factor * _sigma(n, k - 1) for n in range(1, M)]
    return QSeries(0, tuple(coeffs), M)


@lru_cache(maxsize=None)
def delta_qexp(M: int = 40) -> QSeries:
    """Delta = (E4^3 - E6^2)/1728 = q prod (1-q^n)^24; both routes asserted equal."""
    e4, e6 = eisenstein_qexp(4, M + 1), eisenstein_qexp(6, M + 1)
    delta = (e4 * e4 * e4 - e6 * e6) / 1728
    prod = qs_const(1, M)
    for n in range(1, M):
        one_minus = QSeries(0, tuple([Fraction(1)] + [Fraction(0)] * (n - 1) + [Fraction(-1)] + [Fraction(0)] * (M - n - 1)), M)
        prod = prod * (one_minus ** 24)
    shifted = QSeries(1, prod.coeffs[: M - 1], M)
    for n in range(1, min(delta.prec, M)):
        if delta[n] != shifted[n]:
            raise AssertionError(f"discriminant q-expansion mismatch at q^{n}")
    return QSeries(1, tuple(delta[n] for n in range(1, M)), M)


@lru_cache(maxsize=None)
def j_qexp(M: int = 40) -> QSeries:
    """j = E4^3 / Delta = q^{-1} + 744 + 196884 q + ..."""
    e4 = eisenstein_qexp(4, M + 2)
    return (e4 * e4 * e4) / delta_qexp(M + 2)


@lru_cache(maxsize=None)
def jprime_qexp(M: int = 40) -> QSeries:
    """j' = q dj/dq = -E4^2 E6 / Delta; both expressions asserted equal."""
    der = j_qexp(M + 1).derivative()
    e4, e6 = eisenstein_qexp(4, M + 2), eisenstein_qexp(6, M + 2)
    quot = -(e4 * e4 * e6) / delta_qexp(M + 2)
    for n in range(der.lead, min(der.prec, quot.prec, M)):
        if der[n] != quot[n]:
            raise AssertionError(f"j' route mismatch at q^{n}")
    return QSeries(der.lead, tuple(der[n] for n in range(der.lead, M)), M)


@lru_cache(maxsize=None)
def faber_jm(m: int, M: int = 40) -> QSeries:
    """The unique weight-0 weakly holomorphic j_m = q^{-m} + O(q).

    Built by subtracting multiples of powers of j_1 = j - 744 to clear all
    exponents -m < e <= 0.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if M < m + 2:
        M = m + 2
    if m == 0:
        return qs_const(1, M)
    j1 = j_qexp(M + m) - 744
    cur = j1 ** m
    # kill exponents e = -m+1 .. 0 from below
    powers = {0: qs_const(1, M + m)}
    p = qs_const(1, M + m)
    for e in range(1, m):
        p = p * j1
        powers[e] = p
    for e in range(m - 1, -1, -1):
        cur = cur - cur[-e] * powers[e]
    return QSeries(-m, tuple(cur[n] for n in range(-m, M)), M)


# --- evaluation ---------------------------------------------------------------


def eval_qseries(f: QSeries, tau: complex, v_floor: float = 0.5):
    """(value, err_estimate) of the truncated series at tau.

    The tail is estimated geometrically from the growth of the last five
    coefficients; the v_floor guards against meaningless extrapolation.
    """
    tau = complex(tau)
    if tau.imag < v_floor:
        raise ValueError(f"Im(tau) = {tau.imag} below evaluation floor {v_floor}")
    q = cmath.exp(2j * cmath.pi * tau)
    total = 0j
    for n in range(f.lead, f.prec):
        total += complex(f[n]) * q**n
    tail = len(f.coeffs) >= 5 and [abs(c) for c in f.coeffs[-5:]] or None
    err = 0.0
    if tail and tail[-1] > 0:
        ratios = [tail[i + 1] / tail[i] for i in range(4) if tail[i] > 0]
        growth = max(ratios) if ratios else 1.0
        r = growth * abs(q)
        if r < 1:
            err = tail[-1] * abs(q) ** f.prec * r / (1 - r)
        else:
            err = float("inf")
    return total, err


def _weight0_eval(series: QSeries, tau: complex):
    """Evaluate a weight-0 invariant series anywhere via domain reduction."""
    tau_red, _ = reduce_to_fundamental_domain(tau)
    return eval_qseries(series, tau_red)


def j_eval(tau: complex, M: int = 40):
    return _weight0_eval(j_qexp(M), tau)


def jm_eval(m: int, tau: complex, M: int = 40):
    return _weight0_eval(faber_jm(m, M), tau)


def jprime_eval(tau: complex, M: int = 40):
    """j'(tau), transported from the fundamental domain with weight 2."""
    tau_red, g = reduce_to_fundamental_domain(tau)
    val, err = eval_qseries(jprime_qexp(M), tau_red)
    # f(tau) = (r tau + s)^{-2} f(g tau) for f of weight 2
    factor = (g.r * complex(tau) + g.s) ** -2
    return factor * val, abs(factor) * err


def e2star(tau: complex, M: int = 40):
    """E_2^*(tau) = E_2(tau) - 3/(pi v); weight-2 modular completion."""
    tau_red, g = reduce_to_fundamental_domain(tau)
    e2, err = eval_qseries(eisenstein_qexp(2, M), tau_red)
    star = e2 - 3.0 / (math.pi * tau_red.imag)
    factor = (g.r * complex(tau) + g.s) ** -2
    return factor * star, abs(factor) * err


def ek_eval(k: int, tau: complex, M: int = 40):
    """E_k(tau) for even k >= 4 via reduction and weight-k transport."""
    tau_red, g = reduce_to_fundamental_domain(tau)
    val, err = eval_qseries(eisenstein_qexp(k, M), tau_red)
    factor = (g.r * complex(tau) + g.s) ** (-k)
    return factor * val, abs(factor) * err


def akn_kernel(w: complex, tau: complex, M: int = 40):
    """j'(tau) / (j(w) - j(tau)) for Im(tau) > Im(w); generating kernel of j_m."""
    w, tau = complex(w), complex(tau)
    if tau.imag <= w.imag:
        raise ValueError("need Im(tau) > Im(w)")
    jp, e1 = jprime_eval(tau, M)
    jw, e2 = j_eval(w, M)
    jt, e3 = j_eval(tau, M)
    den = jw - jt
    if abs(den) < 1e-9 * (abs(jw) + abs(jt) + 1):
        raise ZeroDivisionError("pole: j(w) = j(tau)")
    val = jp / den
    err = e1 / abs(den) + abs(val) * (e2 + e3) / abs(den)
    return val, err
