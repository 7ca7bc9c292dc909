"""Special-function kernels in elementary closed form.

The incomplete-beta kernel psi_k, and Whittaker functions at the half-integer
orders that arise from even integral weights.  M_{0,nu} and W_{0,nu} reduce to
modified Bessel functions of order n + 1/2, hence to exp and powers; the
shifted-index M_{mu,nu} needed by Maass-Poincare seeds is summed as a Kummer
series (all terms positive, numerically stable).

All kernels are real and accept numpy arrays where noted.
"""

from __future__ import annotations

import math

import numpy as np


def _check_half_int(nu) -> int:
    """Validate nu = n + 1/2, n >= 0 integer; returns n."""
    two = 2 * nu
    n = round(two)
    if abs(two - n) > 1e-12 or n % 2 == 0 or n < 1:
        raise ValueError(f"order must be a positive half-integer, got {nu}")
    return (n - 1) // 2


def psi(k: int, y):
    """psi_k(y) = 1/2 * integral_0^y t^(k-3/2) (1-t)^(-1/2) dt on [0, 1].

    Closed recurrence from integration by parts:
        I_2(y) = arcsin(sqrt(y)) - sqrt(y(1-y)),
        I_k(y) = ((2k-3) I_{k-1}(y) - 2 y^(k-3/2) sqrt(1-y)) / (2k-2),
    and psi_k = I_k / 2.  Monotone increasing, psi_k(0)=0.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    y = np.asarray(y, dtype=float)
    if np.any(y < 0) or np.any(y > 1):
        raise ValueError("argument must lie in [0, 1]")
    # the recurrence cancels its own leading order as y -> 0, so small
    # arguments go through the (positive-term) binomial series instead
    out = np.where(y > 0.5, _psi_recurrence(k, np.clip(y, 0.5, 1.0)),
                   _psi_series(k, np.minimum(y, 0.5)))
    return float(out) if out.ndim == 0 else out


def _psi_recurrence(k: int, y):
    root = np.sqrt(y * (1.0 - y))
    I = np.arcsin(np.sqrt(y)) - root
    for j in range(3, k + 1):
        I = ((2 * j - 3) * I - 2 * y ** (j - 1.5) * np.sqrt(1.0 - y)) / (2 * j - 2)
    return 0.5 * I


def _psi_series(k: int, y):
    # expand (1-t)^{-1/2} binomially and integrate termwise
    total = np.zeros_like(y)
    coeff = 1.0
    for n in range(200):
        total = total + coeff * y ** (k - 0.5 + n) / (k - 0.5 + n)
        coeff *= (2 * n + 1) / (2 * n + 2)
        if coeff * 0.5**n < 1e-18:
            break
    return 0.5 * total


def _bessel_i_half(n: int, x):
    """I_{n+1/2}(x) scaled by e^{-x}, via the sinh/cosh recurrence."""
    x = np.asarray(x, dtype=float)
    # e^{-x} sinh/cosh, stable for large x
    em = np.exp(-2.0 * x)
    pref = np.sqrt(2.0 / (np.pi * x))
    i_minus = pref * 0.5 * (1.0 + em)   # e^{-x} cosh(x) -> I_{-1/2} scaled
    i_plus = pref * 0.5 * (1.0 - em)    # e^{-x} sinh(x) -> I_{1/2} scaled
    if n == 0:
        return i_plus
    for m in range(n):
        # I_{nu+1} = I_{nu-1} - (2 nu / x) I_nu with nu = m + 1/2
        i_minus, i_plus = i_plus, i_minus - ((2 * m + 1) / x) * i_plus
    return i_plus


def whittaker_M0_scaled(nu, y):
    """M_{0,nu}(y) * e^{-y/2} for half-integer nu; overflow-free.

    The Bessel recurrence loses digits when the argument is small relative to
    the order; such points fall back to the (positive-term) Kummer series.
    """
    n = _check_half_int(nu)
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise ValueError("argument must be positive")
    out = 4.0**nu * math.gamma(1.0 + nu) * np.sqrt(y) * _bessel_i_half(n, y / 2.0)
    small = y < 20.0 * n
    if np.any(small):
        ys = np.atleast_1d(y)[np.atleast_1d(small)]
        series = np.exp(-ys) * ys ** (nu + 0.5) * kummer_M(nu + 0.5, 2.0 * nu + 1.0, ys)
        if out.ndim == 0:
            out = series[0]
        else:
            out[small] = series
    return float(out) if np.ndim(out) == 0 else out


def whittaker_M0(nu, y):
    """M-Whittaker M_{0,nu}(y), half-integer nu.  M_{0,1/2}(y) = 2 sinh(y/2)."""
    y_arr = np.asarray(y, dtype=float)
    out = whittaker_M0_scaled(nu, y_arr) * np.exp(y_arr / 2.0)
    return float(out) if np.ndim(out) == 0 else out


def whittaker_W0(nu, y):
    """W-Whittaker W_{0,nu}(y), half-integer nu.  W_{0,1/2}(y) = e^{-y/2}.

    W_{0,n+1/2}(y) = e^{-y/2} * sum_{j<=n} (n+j)! / (j!(n-j)!) y^{-j}.
    """
    n = _check_half_int(nu)
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise ValueError("argument must be positive")
    acc = np.zeros_like(y)
    for j in range(n + 1):
        acc = acc + (
            math.factorial(n + j)
            / (math.factorial(j) * math.factorial(n - j))
            * y ** (-float(j))
        )
    out = np.exp(-y / 2.0) * acc
    return float(out) if out.ndim == 0 else out


def kummer_M(a: float, b: float, z, max_terms: int = 10_000):
    """Confluent hypergeometric M(a, b, z) for z >= 0, by direct series.

    For a, b > 0 and z >= 0 every term is positive, so the summation is
    cancellation-free; terms are added until they fall below 1e-18 relative.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValueError("series route needs z >= 0")
    total = np.ones_like(z)
    term = np.ones_like(z)
    for n in range(max_terms):
        term = term * ((a + n) / ((b + n) * (n + 1))) * z
        total = total + term
        if np.all(term <= 1e-18 * total) and n > np.max(z, initial=0.0):
            break
    else:
        raise RuntimeError("Kummer series did not converge")
    return total


def whittaker_M(mu, nu, y):
    """M_{mu,nu}(y) for y > 0 with a = nu - mu + 1/2 > 0, via the Kummer series.

    Covers the shifted first indices produced by iterated lowering of
    Poincare-series seeds; coincides with whittaker_M0 at mu = 0.
    """
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise ValueError("argument must be positive")
    a = nu - mu + 0.5
    b = 2.0 * nu + 1.0
    if a <= 0 or b <= 0:
        raise ValueError("need nu - mu + 1/2 > 0 and 2 nu + 1 > 0")
    out = np.exp(-y / 2.0) * y ** (nu + 0.5) * kummer_M(a, b, y)
    return float(out) if out.ndim == 0 else out
