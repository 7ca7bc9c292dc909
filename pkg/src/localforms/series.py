"""Lattice sums over quadratic forms and Poincare series over the modular group.

Evaluators for:
  * the cusp-form lattice sum sum_Q Q(tau,1)^{-kappa} and Parson's signed
    variant with its rational period function,
  * the hyperbolic Eisenstein series E (sign of the form), its indicator
    correction (finite sum over enclosing forms), and the completed series
    E_hat (sign of Q_tau), in two termwise-identical routes,
  * the locally harmonic lattice sum built from the incomplete-beta kernel,
  * Poincare series: exponential type, Niebur, negative-weight Maass type,
    and Petersson's two-variable kernel,
  * Fourier-expansion routes for weight 2 (cycle integrals of the j_m basis)
    and weights >= 4 (cycle integrals of Niebur series),
  * the closed-form constant chain tying the completed series to cycle
    integrals of the Petersson kernel, and the full identity check,
  * the exact rational boundary function of the indicator correction.

Truncation: every infinite sum is enumerated in shells of |Q_tau| <= R with
R-doubling (forms), or over coprime bottom rows plus translation offsets
(group sums).  All enumerations are sorted, so results are deterministic.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as npoly

from . import classical, qforms
from .characters import GenusCharacter, genus_char
from .cycles import cycle_integral
from .qforms import OnNetError, QForm
from .special import psi, whittaker_M, whittaker_M0


@dataclass(frozen=True)
class EvalBudget:
    R: float = 200.0          # initial shell radius in |Q_tau|
    R_max: float = 6400.0     # doubling cap
    rowmax: int = 30          # bottom-row bound for group sums
    nmax: int = 40            # translate / second-entry bound
    M: int = 8                # Fourier truncation order
    tol: float = 1e-9         # relative stopping tolerance
    quad_N: int = 64          # quadrature nodes for cycle integrals


@dataclass(frozen=True)
class EvalResult:
    value: complex
    err_estimate: float
    terms: int
    budget_used: EvalBudget


@dataclass(frozen=True)
class EisParams:
    k: int
    D: int
    d: int = 1
    s: complex = 0.0

    def __post_init__(self):
        if self.k < 2 or self.k % 2:
            raise ValueError("weight must be even and >= 2")
        from .arith import fundamental_divisors

        if self.d not in fundamental_divisors(self.D):
            raise ValueError(f"d={self.d} is not a fundamental divisor of {self.D}")


# --- shell machinery ----------------------------------------------------------


def _shell_arrays(D: int, u: float, v: float, R: float):
    """Coefficient arrays (a, b, c, Q_tau) of all forms with |Q_tau| <= R."""
    B = math.sqrt(R * R + D)
    amax = int((R + B) / (2 * v))
    out_a, out_b, out_c, out_q = [], [], [], []
    for a in range(-amax, amax + 1):
        if a == 0:
            continue
        blo = math.ceil(-2 * a * u - B)
        bhi = math.floor(-2 * a * u + B)
        b = np.arange(blo, bhi + 1, dtype=np.int64)
        b = b[(b - D) % 2 == 0]
        b = b[(b * b - D) % (4 * a) == 0]
        if len(b) == 0:
            continue
        c = (b * b - D) // (4 * a)
        qt = (a * (u * u + v * v) + b * u + c) / v
        keep = np.abs(qt) <= R
        if keep.any():
            out_a.append(np.full(int(keep.sum()), a, dtype=np.int64))
            out_b.append(b[keep])
            out_c.append(c[keep])
            out_q.append(qt[keep])
    if not out_a:
        z = np.zeros(0, dtype=np.int64)
        return z, z, z, np.zeros(0)
    return (np.concatenate(out_a), np.concatenate(out_b),
            np.concatenate(out_c), np.concatenate(out_q))


def _check_off_net(a, b, c, qt, u: float, v: float, tol_net: float = 1e-12):
    if len(qt) == 0:
        return
    scale = (1.0 + np.abs(a) * (u * u + v * v) + np.abs(b * u) + np.abs(c)) / v
    bad = np.abs(qt) <= tol_net * scale
    if bad.any():
        i = int(np.argmax(bad))
        raise OnNetError(
            f"point lies on the geodesic of [{a[i]},{b[i]},{c[i]}]"
        )


def _shell_evaluate(D: int, tau: complex, term_fn, budget: EvalBudget) -> EvalResult:
    """Sum term_fn(a, b, c, qt) over shells with R-doubling until stable."""
    tau = complex(tau)
    u, v = tau.real, tau.imag
    R = budget.R
    a, b, c, qt = _shell_arrays(D, u, v, R)
    _check_off_net(a, b, c, qt, u, v)
    total = complex(np.sum(term_fn(a, b, c, qt))) if len(a) else 0j
    terms = len(a)
    err = float("inf")
    while R < budget.R_max:
        R2 = 2 * R
        a, b, c, qt = _shell_arrays(D, u, v, R2)
        new = np.abs(qt) > R
        a2, b2, c2, q2 = a[new], b[new], c[new], qt[new]
        delta = complex(np.sum(term_fn(a2, b2, c2, q2))) if len(a2) else 0j
        total += delta
        terms += len(a2)
        err = 2 * abs(delta)
        R = R2
        if abs(delta) <= budget.tol * max(1.0, abs(total)):
            break
    return EvalResult(total, err, terms, replace(budget, R=R))


def _chi_values(D: int, d: int, a, b, c) -> np.ndarray:
    if d == 1:
        return np.ones(len(a))
    chi = GenusCharacter(d, D)
    return np.array(
        [genus_char(chi, QForm(int(x), int(y), int(z))) for x, y, z in zip(a, b, c)],
        dtype=float,
    )


# --- cusp-form lattice sums ---------------------------------------------------


def zagier_f(kappa: int, D: int, tau: complex, budget: EvalBudget = EvalBudget()) -> EvalResult:
    """sum over all forms of discriminant D of Q(tau,1)^(-kappa); weight 2 kappa."""
    if kappa < 2:
        raise ValueError("kappa must be >= 2")
    if kappa == 2:
        raise ValueError("kappa = 2 is only conditionally convergent; refused")
    tau = complex(tau)

    def term(a, b, c, qt):
        qv = (a * tau + b) * tau + c
        return qv ** (-kappa)

    return _shell_evaluate(D, tau, term, budget)


def parson_f(kappa: int, Q0: QForm, tau: complex, budget: EvalBudget = EvalBudget()) -> EvalResult:
    """sum over the class of Q0 of sgn(Q) Q(tau,1)^(-kappa)."""
    if kappa < 2:
        raise ValueError("kappa must be >= 2")
    D = Q0.disc
    rep = qforms.canonical_representative(Q0)
    tau = complex(tau)

    def term(a, b, c, qt):
        keep = np.array(
            [qforms.canonical_representative(QForm(int(x), int(y), int(z))) == rep
             for x, y, z in zip(a, b, c)]
        )
        if not keep.any():
            return np.zeros(0, dtype=complex)
        a, b, c = a[keep], b[keep], c[keep]
        qv = (a * tau + b) * tau + c
        return np.sign(a) * qv ** (-kappa)

    return _shell_evaluate(D, tau, term, budget)


def parson_period(kappa: int, Q0: QForm, tau: complex) -> complex:
    """Rational period function: 2 sum over boundary forms (ac < 0) in the class."""
    tau = complex(tau)
    total = 0j
    for Q in qforms.parson_boundary_forms(Q0):
        qv = (Q.a * tau + Q.b) * tau + Q.c
        total += qforms.sign(Q) * qv ** (-kappa)
    return 2 * total


# --- hyperbolic Eisenstein series ---------------------------------------------


def _eis_terms(p: EisParams, tau: complex, mode: str):
    """Vectorized termwise summand; mode 'form' uses sgn(Q), 'point' uses sgn(Q_tau)."""
    k, s, v = p.k, p.s, tau.imag
    half = k // 2
    chi_D, chi_d = p.D, p.d

    def term(a, b, c, qt):
        chi = _chi_values(chi_D, chi_d, a, b, c)
        qv = (a * tau + b) * tau + c
        sgn = np.sign(a) if mode == "form" else np.sign(qt)
        num = chi * sgn ** half if half % 2 else chi
        den = qv ** half
        if s != 0:
            den = den * np.abs(qv) ** s
            num = num * v ** s
        return num / den

    return term


def eis_E(p: EisParams, tau: complex, budget: EvalBudget = EvalBudget()) -> EvalResult:
    """Hyperbolic Eisenstein series with the sign of the form (Hecke trick in s)."""
    tau = complex(tau)
    sr = complex(p.s).real
    if sr <= 1 - p.k / 2:
        raise ValueError(f"Re(s) = {sr} outside the convergence region for k = {p.k}")
    return _shell_evaluate(p.D, tau, _eis_terms(p, tau, "form"), budget)


def eis_tilde(p: EisParams, tau) -> complex:
    """Finite indicator-weighted sum over the forms enclosing tau."""
    tau_c = complex(tau)
    forms = qforms.enclosing_forms(p.D, tau)
    total = 0j
    half = p.k // 2
    for Q in forms:
        chi = _chi_values(p.D, p.d, [Q.a], [Q.b], [Q.c])[0]
        qv = (Q.a * tau_c + Q.b) * tau_c + Q.c
        sgn = qforms.sign(Q) ** half
        term = chi * sgn / qv**half
        if p.s != 0:
            term *= tau_c.imag ** p.s / abs(qv) ** p.s
        total += term
    return total


def eis_hat(p: EisParams, tau: complex, budget: EvalBudget = EvalBudget(),
            route: str = "direct") -> EvalResult:
    """Completed series: sign of Q_tau termwise, or E - 2 * (indicator sum).

    Both routes agree termwise exactly, hence to floating accuracy on equal
    shells; the identity route exists as an independent cross-check.
    """
    tau = complex(tau)
    if route == "direct":
        return _shell_evaluate(p.D, tau, _eis_terms(p, tau, "point"), budget)
    if route == "identity":
        base = eis_E(p, tau, budget)
        corr = eis_tilde(p, tau)
        return EvalResult(base.value - 2 * corr, base.err_estimate, base.terms,
                          base.budget_used)
    raise ValueError(f"unknown route {route!r}")


# --- locally harmonic lattice sum ---------------------------------------------


def lhmf_F(kappa: int, D: int, tau: complex, budget: EvalBudget = EvalBudget(),
           Q0: QForm | None = None) -> EvalResult:
    """The incomplete-beta lattice sum of weight 2 - 2 kappa.

    (-1)^kappa D^(1/2-kappa) / (binom(2 kappa - 2, kappa - 1) pi) *
    sum_Q sgn(Q_tau) Q(tau,1)^(kappa-1) psi_kappa(D / (Q_tau^2 + D)).

    Restricting to the class of Q0 gives the single-class variant.
    """
    if kappa < 2:
        raise ValueError("kappa must be >= 2")
    tau = complex(tau)
    pref = (-1) ** kappa * D ** (0.5 - kappa) / (math.comb(2 * kappa - 2, kappa - 1) * math.pi)
    rep = qforms.canonical_representative(Q0) if Q0 is not None else None

    def term(a, b, c, qt):
        if rep is not None:
            keep = np.array(
                [qforms.canonical_representative(QForm(int(x), int(y), int(z))) == rep
                 for x, y, z in zip(a, b, c)]
            )
            if not keep.any():
                return np.zeros(0, dtype=complex)
            a, b, c, qt = a[keep], b[keep], c[keep], qt[keep]
        qv = (a * tau + b) * tau + c
        y = D / (qt * qt + D)
        return np.sign(qt) * qv ** (kappa - 1) * psi(kappa, y)

    res = _shell_evaluate(D, tau, term, budget)
    return EvalResult(pref * res.value, abs(pref) * res.err_estimate, res.terms,
                      res.budget_used)


# --- group-sum machinery ------------------------------------------------------


def _coset_rows(cmax: int, dmax: int):
    """Representatives of translation-cosets: bottom rows (c, d), c >= 0.

    The identity coset is (0, 1); for c >= 1 every coprime d with |d| <= dmax
    labels a distinct coset.  Tops completed via the extended Euclid algorithm.
    Returns integer arrays (a, b, c, d), identity first, sorted.
    """
    rows = [(1, 0, 0, 1)]
    for c in range(1, cmax + 1):
        for d in range(-dmax, dmax + 1):
            if math.gcd(c, d) != 1:
                continue
            # a d - b c = 1
            a = pow(d % c, -1, c) if c > 1 else 0
            b = (a * d - 1) // c
            rows.append((a, b, c, d))
    arr = np.array(rows, dtype=np.int64)
    return arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3]


def _coset_images(w, cmax: int, dmax: int):
    """(gamma w, c w + d) arrays over the translation-coset representatives."""
    a, b, c, d = _coset_rows(cmax, dmax)
    w = complex(w)
    den = c * w + d
    return (a * w + b) / den, den


def _niebur_values(m: int, w, s: float, budget: EvalBudget) -> np.ndarray:
    """Niebur series values on an array of points (weight 0, seed invariant)."""
    if m == 0:
        raise ValueError("m must be nonzero")
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    pref = math.gamma(s) / math.gamma(2 * s)
    a, b, c, d = _coset_rows(budget.rowmax, budget.nmax)
    total = np.zeros(w.shape, dtype=complex)
    for ai, bi, ci, di in zip(a, b, c, d):
        gz = (ai * w + bi) / (ci * w + di)
        y = gz.imag
        total += whittaker_M0(s - 0.5, 4 * math.pi * abs(m) * y) * np.exp(
            2j * math.pi * m * gz.real
        )
    return pref * total


def niebur_G(m: int, w: complex, s: float, budget: EvalBudget = EvalBudget()) -> EvalResult:
    """Weight-0 Niebur Poincare series G_m(w, s); eigenvalue s(1-s)."""
    base = _niebur_values(m, w, s, budget)[0]
    bigger = replace(budget, rowmax=budget.rowmax + 8, nmax=budget.nmax + 8)
    refined = _niebur_values(m, w, s, bigger)[0]
    a, _, c, d = _coset_rows(budget.rowmax, budget.nmax)
    return EvalResult(refined, abs(refined - base), len(a), budget)


def _phi_seed(kappa: int, m: int, tau_arr: np.ndarray) -> np.ndarray:
    """Seed of the negative-weight Maass Poincare series.

    (-sgn(m))^{1-kappa} (4 pi |m| v)^{-kappa/2} / Gamma(2-kappa)
        * M_{sgn(m) kappa/2, (1-kappa)/2}(4 pi |m| v) * e^{2 pi i m u}.
    """
    v = tau_arr.imag
    u = tau_arr.real
    x = 4 * math.pi * abs(m) * v
    mu = math.copysign(1, m) * kappa / 2
    nu = (1 - kappa) / 2
    pref = (-np.sign(m)) ** (1 - kappa) * x ** (-kappa / 2) / math.gamma(2 - kappa)
    return pref * whittaker_M(mu, nu, x) * np.exp(2j * math.pi * m * u)


def _phi_values(kappa: int, m: int, w, budget: EvalBudget) -> np.ndarray:
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    a, b, c, d = _coset_rows(budget.rowmax, budget.nmax)
    total = np.zeros(w.shape, dtype=complex)
    for ai, bi, ci, di in zip(a, b, c, d):
        den = ci * w + di
        gz = (ai * w + bi) / den
        total += den ** (-kappa) * _phi_seed(kappa, m, gz)
    return total


def maass_poincare_Phi(kappa: int, m: int, w: complex,
                       budget: EvalBudget = EvalBudget()) -> EvalResult:
    """Harmonic Maass Poincare series of negative even weight kappa."""
    if kappa >= 0 or kappa % 2:
        raise ValueError("kappa must be a negative even integer")
    if m == 0:
        raise ValueError("m must be nonzero")
    base = _phi_values(kappa, m, w, budget)[0]
    bigger = replace(budget, rowmax=budget.rowmax + 8, nmax=budget.nmax + 8)
    refined = _phi_values(kappa, m, w, bigger)[0]
    a, _, _, _ = _coset_rows(budget.rowmax, budget.nmax)
    return EvalResult(refined, abs(refined - base), len(a), budget)


def exp_poincare_P(kappa: int, m: int, tau: complex,
                   budget: EvalBudget = EvalBudget()) -> EvalResult:
    """Poincare series of exponential type, weight kappa > 2."""
    if kappa <= 2 or kappa % 2:
        raise ValueError("kappa must be even and > 2")
    gz, den = _coset_images(tau, budget.rowmax, budget.nmax)
    terms = den ** (-kappa) * np.exp(2j * math.pi * m * gz)
    total = complex(np.sum(terms))
    last = np.abs(terms[-2 * budget.nmax:]).sum()
    return EvalResult(total, float(last), len(gz), budget)


# --- Petersson's two-variable kernel ------------------------------------------


def _coprime_rows(rowmax: int):
    """All coprime bottom rows (c, d) with |c|, |d| <= rowmax, modulo sign."""
    rows = [(1, 0, 0, 1)]
    for c in range(1, rowmax + 1):
        for d in range(-rowmax, rowmax + 1):
            if math.gcd(c, d) != 1:
                continue
            a = pow(d % c, -1, c) if c > 1 else 0
            b = (a * d - 1) // c
            rows.append((a, b, c, d))
    arr = np.array(rows, dtype=np.int64)
    return arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3]


@lru_cache(maxsize=None)
def _cot_sum_coeffs(jmax: int):
    """Coefficients of p_j with sum_{n in Z} (z+n)^{-j} = pi^j p_j(cot(pi z)).

    p_1(c) = c, and p_{j+1} = p_j'(c) (1 + c^2) / j, exact rationals.
    """
    polys = [[Fraction(0), Fraction(1)]]
    for j in range(1, jmax):
        dp = [i * ci for i, ci in enumerate(polys[-1])][1:]
        nxt = [Fraction(0)] * (len(dp) + 2)
        for i, ci in enumerate(dp):
            nxt[i] += ci / j
            nxt[i + 2] += ci / j
        polys.append(nxt)
    return tuple(np.array([float(ci) for ci in p]) for p in polys)


def _cot_pi(z: np.ndarray) -> np.ndarray:
    """cot(pi z) for complex arrays, overflow-free for large |Im z|."""
    zz = np.where(z.imag < 0, -z, z)
    E = np.exp(2j * np.pi * zz)            # |E| <= 1
    c = 1j * (E + 1) / (E - 1)
    return np.where(z.imag < 0, -c, c)


def _translate_sum(g0: np.ndarray, w: complex, k: int) -> np.ndarray:
    """sum_{n in Z} 1/((g0 + n - w)(g0 + n - conj w)^{k-1}), exactly.

    Partial fractions in n reduce the lattice sum to cotangent-derivative
    sums S_j(z) = sum_n (z+n)^{-j}; no translate truncation error remains.
    """
    m = k - 1
    coeffs = _cot_sum_coeffs(m)
    delta = 2j * w.imag                    # (g0 - conj w) - (g0 - w)
    cy = _cot_pi(g0 - w.conjugate())
    total = delta ** (-m) * np.pi * _cot_pi(g0 - w)
    for j in range(1, m + 1):
        total = total - delta ** (j - m - 1) * np.pi ** j * npoly.polyval(cy, coeffs[j - 1])
    return total


def _petersson_at_nodes(k: int, z1: complex, w, budget: EvalBudget) -> np.ndarray:
    """Petersson kernel values P_k(z1, w) on an array of second arguments."""
    a, b, c, d = _coprime_rows(budget.rowmax)
    z1 = complex(z1)
    den = c * z1 + d
    g0 = (a * z1 + b) / den
    Jk = den ** (-float(k))
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    out = np.zeros(w.shape, dtype=complex)
    closest = float("inf")
    for i, wi in enumerate(w):
        x = g0 - wi
        closest = min(closest, float(np.hypot(x.real - np.round(x.real), x.imag).min()))
        # factor 2: gamma and -gamma contribute equally for even k
        out[i] = 2 * wi.imag ** (k - 1) * np.sum(Jk * _translate_sum(g0, wi, k))
    if closest < 1e-3:
        warnings.warn(f"kernel argument within {closest:.1e} of a pole", stacklevel=2)
    return out


def _petersson_z1_nodes(k: int, z, z2: complex, budget: EvalBudget) -> np.ndarray:
    """Petersson kernel values P_k(z, z2) on an array of first arguments."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    z2 = complex(z2)
    a, b, c, d = _coprime_rows(budget.rowmax)
    out = np.zeros(z.shape, dtype=complex)
    pref = 2 * z2.imag ** (k - 1)
    for i, zi in enumerate(z):
        den = c * zi + d
        g0 = (a * zi + b) / den
        out[i] = pref * np.sum(den ** (-float(k)) * _translate_sum(g0, z2, k))
    return out


def petersson_P(k: int, z1: complex, z2: complex,
                budget: EvalBudget = EvalBudget()) -> EvalResult:
    """Petersson kernel: weight k in z1, weight 2-k in z2; poles on the orbit."""
    if k < 4 or k % 2:
        raise ValueError("k must be even and >= 4")
    base = _petersson_at_nodes(k, z1, z2, budget)[0]
    bigger = replace(budget, rowmax=budget.rowmax + budget.rowmax // 4 + 6)
    refined = _petersson_at_nodes(k, z1, z2, bigger)[0]
    a, _, _, _ = _coprime_rows(budget.rowmax)
    return EvalResult(refined, abs(refined - base), len(a), budget)


def bk_generating_check(k: int, tau: complex, w: complex, M: int = 6,
                        budget: EvalBudget = EvalBudget()) -> dict:
    """Generating identity: sum_{m>=1} Phi_{2-k,-m}(w) q^m = (i/2pi)(2i)^{k-1} P_k(tau, w)/2.

    The half compensates conventions: petersson_P counts gamma and -gamma
    separately, while the generating identity pairs them.  Requires
    Im(tau) > max(Im(w), 1/Im(w)).  Returns partial-sum discrepancies for
    each truncation order up to M.
    """
    tau, w = complex(tau), complex(w)
    if tau.imag <= max(w.imag, 1 / w.imag):
        raise ValueError("need Im(tau) > max(Im(w), 1/Im(w))")
    q = cmath.exp(2j * math.pi * tau)
    rhs = (1j / (4 * math.pi)) * (2j) ** (k - 1) * petersson_P(k, tau, w, budget).value
    partial = 0j
    rows = []
    for m in range(1, M + 1):
        partial += maass_poincare_Phi(2 - k, -m, w, budget).value * q**m
        rows.append({
            "M": m,
            "lhs": partial,
            "abs_err": abs(partial - rhs),
            "rel_err": abs(partial - rhs) / max(abs(rhs), 1e-300),
        })
    return {"rhs": rhs, "partials": rows, "final_rel_err": rows[-1]["rel_err"]}


# --- Fourier-expansion routes -------------------------------------------------


def _class_data(D: int, d: int):
    reps = qforms.class_representatives(D)
    if d == 1:
        return [(Q, 1) for Q in reps]
    chi = GenusCharacter(d, D)
    return [(Q, genus_char(chi, Q)) for Q in reps]


def eis2_fourier(D: int, d: int, tau: complex, M: int = 8,
                 N_quad: int = 64) -> EvalResult:
    """Weight-2 continuation via cycle integrals of the j_m basis.

    (-2/sqrt(D)) sum_Q chi_d(Q) [ sum_{m=0}^{M} C_0(j_m, Q) q^m - E2*(tau) C_0(1, Q) ].
    The completion term is subtracted once per class.  The sqrt(D) (rather
    than D) normalization matches the k >= 4 prefactor pattern at k = 2 and
    the analytically continued direct sum.
    """
    tau = complex(tau)
    if tau.imag < 0.8:
        raise ValueError("q-series route needs Im(tau) >= 0.8")
    q = cmath.exp(2j * math.pi * tau)
    e2s, e2s_err = classical.e2star(tau)
    total = 0j
    err = e2s_err
    terms = 0
    for Q, chi in _class_data(D, d):
        if chi == 0:
            continue
        c0_const, q_err = cycle_integral(lambda z: np.ones_like(z), 0, Q, N_quad)
        err += abs(chi) * q_err
        inner = (1 - e2s) * c0_const  # m = 0 term (j_0 = 1) minus completion
        for m in range(1, M + 1):
            cm, cm_err = cycle_integral(
                lambda z, m=m: np.array([classical.jm_eval(m, zi)[0] for zi in z]),
                0, Q, N_quad,
            )
            inner += cm * q**m
            err += abs(chi) * (cm_err + 1e-6) * abs(q) ** m
            terms += 1
        total += chi * inner
    tail = abs(q) ** (M + 1) / (1 - abs(q))
    pref = -2 / math.sqrt(D)
    value = pref * total
    return EvalResult(value, abs(pref) * err + tail, terms, EvalBudget(M=M, quad_N=N_quad))


def eisk_fourier(k: int, D: int, d: int, tau: complex, M: int = 3,
                 N_quad: int = 64, budget: EvalBudget = EvalBudget()) -> EvalResult:
    """Fourier expansion for even k >= 4 via cycle integrals of Niebur series."""
    if k < 4 or k % 2:
        raise ValueError("k must be even and >= 4")
    tau = complex(tau)
    q = cmath.exp(2j * math.pi * tau)
    # D-exponent k/4 (not (k+2)/4) is forced by agreement with the direct sum
    pref = (-1) ** (k // 2) * 2 * math.pi ** (k / 2) / (
        D ** (k / 4) * math.gamma(k / 4) ** 2
    )
    total = 0j
    err = 0.0
    terms = 0
    for m in range(1, M + 1):
        coeff = 0j
        for Q, chi in _class_data(D, d):
            if chi == 0:
                continue
            cm, cm_err = cycle_integral(
                lambda z, m=m: _niebur_values(-m, z, k / 2, budget),
                0, Q, N_quad,
            )
            coeff += chi * cm
            err += abs(chi) * cm_err * m ** (k / 2 - 1) * abs(q) ** m
            terms += 1
        total += m ** (k / 2 - 1) * coeff * q**m
    value = pref * total
    tail = abs(pref) * (M + 1) ** (k / 2 - 1) * abs(q) ** (M + 1) / (1 - abs(q))
    return EvalResult(value, abs(pref) * err + tail, terms, budget)


def eis2_hat(D: int, d: int, tau, M: int = 8, N_quad: int = 64) -> EvalResult:
    """Completed weight-2 series at s = 0: Fourier route minus twice the indicator sum."""
    base = eis2_fourier(D, d, complex(tau), M, N_quad)
    corr = eis_tilde(EisParams(2, D, d, 0.0), tau)
    return EvalResult(base.value - 2 * corr, base.err_estimate, base.terms,
                      base.budget_used)


def hecke_trick_extrapolation(D: int, d: int, tau: complex, svals=(0.4, 0.2, 0.1),
                              R: float = 400.0) -> dict:
    """Weight-2 diagnostic: shell sums at s > 0 extrapolated to s = 0 (Lagrange).

    Single fixed shell radius; the conditional convergence at small s limits
    the attainable accuracy, so this is a cross-check, not the authority.
    """
    vals = []
    budget = EvalBudget(R=R, R_max=R)
    for s in svals:
        res = eis_E(EisParams(2, D, d, s), tau, budget)
        vals.append(res.value)
    extrap = 0j
    for i, si in enumerate(svals):
        li = 1.0
        for j, sj in enumerate(svals):
            if j != i:
                li *= (0.0 - sj) / (si - sj)
        extrap += li * vals[i]
    return {"svals": list(svals), "values": vals, "extrapolated": extrap}


# --- the main identity --------------------------------------------------------


def theorem_constant(k: int, D: int):
    """(C1, C2, C) of the cycle-integral representation; k = 2 mod 4, k >= 6.

    C = Gamma(k/2) C1 C2 / (2^(k/2-1) D^(k/4) Gamma(k/4)^2); the combination
    C * D^(k/4) * pi is an exact rational, exposed by theorem_constant_exact.
    The Gamma(k/2) (not Gamma(k)) is forced by two-route agreement together
    with the generating identity tying the negative-weight series to the
    two-variable kernel.
    """
    c_rat = theorem_constant_exact(k)
    C1 = 1
    for j in range((k - 4) // 2 + 1):
        C1 *= k + 2 * j
    C2 = Fraction(1)
    for ell in range(-k // 2 + 2, 0, 2):  # odd ell from -k/2+2 to -1
        C2 /= (1 + ell) * (-ell) - (k // 2) * (1 - k // 2)
    C = float(c_rat) / (math.pi * D ** (k / 4))
    return C1, C2, C


def theorem_constant_exact(k: int) -> Fraction:
    """C(k) * D^{k/4} * pi as an exact rational (independent of D)."""
    if k % 4 != 2 or k < 6:
        raise ValueError("k must be >= 6 with k = 2 mod 4")
    C1 = 1
    for j in range((k - 4) // 2 + 1):
        C1 *= k + 2 * j
    C2 = Fraction(1)
    for ell in range(-k // 2 + 2, 0, 2):
        C2 /= (1 + ell) * (-ell) - (k // 2) * (1 - k // 2)
    # Gamma(k/4)^2 = pi * ((2t)! / (4^t t!))^2 with t = (k - 2) / 4
    t = (k - 2) // 4
    gamma_sq_over_pi = Fraction(math.factorial(2 * t), 4**t * math.factorial(t)) ** 2
    return Fraction(math.factorial(k // 2 - 1)) * C1 * C2 / (
        Fraction(2) ** (k // 2 - 1) * gamma_sq_over_pi
    )


def main_identity_check(k: int, D: int, d: int, tau: complex,
                        budget: EvalBudget = EvalBudget(), N_quad: int = 64) -> dict:
    """Completed series at s=0 vs. the cycle-integral representation, k > 2.

    The right side is evaluated at the fundamental-domain representative of
    tau and transported back with weight k (both sides are modular), so the
    kernel's generating region is respected regardless of where tau lies.
    """
    tau = complex(tau)
    lhs = eis_hat(EisParams(k, D, d, 0.0), tau, budget, route="direct")
    tau_red, g = qforms.reduce_to_fundamental_domain(tau)
    above_net = len(qforms.enclosing_forms(D, tau_red)) == 0
    _, _, C = theorem_constant(k, D)
    rhs_red = 0j
    err = 0.0
    for Q, chi in _class_data(D, d):
        if chi == 0:
            continue
        ci, ci_err = cycle_integral(
            lambda w: _petersson_at_nodes(k, tau_red, w, budget),
            2 - k, Q, N_quad,
        )
        rhs_red += chi * ci
        err += abs(chi) * ci_err
    factor = (g.r * tau + g.s) ** (-k)
    rhs = factor * C * rhs_red
    abs_err = abs(lhs.value - rhs)
    return {
        "lhs": lhs.value,
        "rhs": rhs,
        "abs_err": abs_err,
        "rel_err": abs_err / max(abs(lhs.value), abs(rhs), 1e-300),
        "lhs_err_estimate": lhs.err_estimate,
        "rhs_err_estimate": abs(factor) * abs(C) * err,
        "tau_transport": tau_red,
        "above_net": above_net,
    }


# --- rational boundary function -----------------------------------------------


def quantum_limit(kappa: int, D: int, x) -> Fraction:
    """Exact rational boundary value of the indicator sum (d = 1, weight kappa).

    -2 * sum over forms with x strictly between their roots and Q(x,1) > 0 of
    Q(x,1)^(-kappa/2), with kappa/2 odd.  x rational; the sum is finite.
    """
    if kappa % 4 != 2 or kappa < 2:
        raise ValueError("kappa must be 2 mod 4")
    x = Fraction(x)
    p, qden = x.numerator, x.denominator
    power = kappa // 2
    amax = (D * qden * qden) // 4
    total = Fraction(0)
    sq = math.isqrt(D * qden * qden)  # floor(q sqrt(D))
    for a in range(-amax, amax + 1):
        if a == 0:
            continue
        # |2 a p + b q| < q sqrt(D): x strictly between the roots
        lo = math.ceil((-2 * a * p - sq - 1) / qden)
        hi = math.floor((-2 * a * p + sq + 1) / qden)
        for b in range(lo, hi + 1):
            if (b - D) % 2 or (b * b - D) % (4 * a):
                continue
            if (2 * a * p + b * qden) ** 2 >= D * qden * qden:
                continue
            c = (b * b - D) // (4 * a)
            n = a * p * p + b * p * qden + c * qden * qden  # q^2 Q(x, 1)
            if a * n < 0 and n > 0:
                total += Fraction(qden * qden, n) ** power
    return -2 * total
