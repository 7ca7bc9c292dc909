import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from localforms.qforms import QForm, class_representatives
from localforms.series import (
    EisParams,
    EvalBudget,
    _translate_sum,
    eis2_fourier,
    eis2_hat,
    eis_E,
    eis_hat,
    eis_tilde,
    eisk_fourier,
    exp_poincare_P,
    hecke_trick_extrapolation,
    lhmf_F,
    maass_poincare_Phi,
    niebur_G,
    parson_f,
    parson_period,
    petersson_P,
    quantum_limit,
    theorem_constant,
    theorem_constant_exact,
    zagier_f,
)

SMALL = EvalBudget(R=100.0, R_max=400.0)


def test_translate_sum_vs_truncation():
    # sum over n of 1 / ((g0 + n - w)(g0 + n - wbar)^(k-1)) in closed form
    g0, w, k = 0.37 + 0.21j, 0.1 + 0.8j, 6
    direct = sum(
        1 / ((g0 + n - w) * (g0 + n - w.conjugate()) ** (k - 1))
        for n in range(-4000, 4001)
    )
    closed = complex(_translate_sum(np.array([g0]), w, k)[0])
    assert abs(closed - direct) < 1e-10 * abs(closed)


def test_zagier_weight_transformation():
    # f is modular of weight 2 kappa: f(-1/tau) = tau^(2 kappa) f(tau);
    # shells transport equivariantly, so truncations transform exactly
    kappa, D = 6, 5
    tau = 0.23 + 1.12j
    a = zagier_f(kappa, D, -1 / tau, SMALL).value
    b = zagier_f(kappa, D, tau, SMALL).value
    assert abs(a - tau ** (2 * kappa) * b) < 1e-9 * abs(a)


def test_zagier_vanishes_without_cusp_forms():
    # kappa = 3 gives a weight-6 cusp form on the full group: identically 0
    for D in (5, 12):
        val = zagier_f(3, D, 0.3 + 1.4j, SMALL).value
        assert abs(val) < 1e-12


def test_zagier_proportional_to_delta():
    # kappa = 6 gives a weight-12 cusp form; the space is one-dimensional
    from localforms.classical import delta_qexp, eval_qseries

    tau1, tau2 = 0.13 + 1.05j, -0.27 + 0.85j
    a1 = zagier_f(6, 5, tau1, SMALL).value
    a2 = zagier_f(6, 5, tau2, SMALL).value
    d = delta_qexp(30)
    d1, _ = eval_qseries(d, tau1)
    d2, _ = eval_qseries(d, tau2)
    assert abs(a1 / a2 - d1 / d2) < 1e-5 * abs(d1 / d2)


def test_parson_period_polynomial_support():
    # rational period function vanishes identically for the principal class
    # of disc 5 in weight 4 by the +-symmetry of its boundary forms
    val = parson_period(2, QForm(1, 1, -1), 0.37 + 0.4j)
    assert abs(val) < 1e-12


def test_eis_tilde_finite_and_periodic():
    p = EisParams(6, 5, 1, 0.0)
    tau = 0.21 + 0.4j
    assert abs(eis_tilde(p, tau) - eis_tilde(p, tau + 1)) < 1e-12
    # far above the net the local sum is empty
    assert eis_tilde(p, 0.3 + 5j) == 0


def test_route_agreement():
    p = EisParams(6, 5, 1, 0.0)
    tau = 0.17 + 0.8j
    a = eis_hat(p, tau, SMALL, route="direct").value
    b = eis_hat(p, tau, SMALL, route="identity").value
    assert abs(a - b) <= 1e-12 * max(abs(a), 1e-6)


def test_theorem_constant_exact_values():
    assert theorem_constant_exact(6) == 16
    assert theorem_constant_exact(10) == 256
    _, _, C = theorem_constant(6, 5)
    assert abs(C - 16 / (math.pi * 5 ** 1.5)) < 1e-15


def test_quantum_limit_exact_values():
    # frozen values, independently confirmed against the v -> 0 limit of the
    # indicator sum (see the quantum verification suite)
    assert quantum_limit(6, 5, Fraction(1, 2)) == Fraction(-48128, 125)
    x = Fraction(1, 3)
    val = quantum_limit(6, 5, x)
    assert quantum_limit(6, 5, x + 7) == val
    assert quantum_limit(6, 5, x - 2) == val


def test_eis2_fourier_vs_hecke_trick():
    D, d, tau = 5, 1, 1.9j
    four = eis2_fourier(D, d, tau, M=8).value
    ht = hecke_trick_extrapolation(D, d, tau, R=400.0)["extrapolated"]
    assert abs(four - ht) < 1e-2


def test_eisk_fourier_vs_direct():
    tau = 1.7j
    a = eisk_fourier(6, 5, 1, tau, M=3, budget=EvalBudget(rowmax=40)).value
    b = eis_E(EisParams(6, 5, 1), tau, EvalBudget(R=200.0)).value
    assert abs(a - b) < 1e-3 * abs(b)


def test_petersson_weight_in_first_variable():
    # P_k(gamma z1, z2) = (r z1 + s)^k P_k(z1, z2) for gamma = S
    k = 6
    z1, z2 = 0.3 + 1.3j, 0.1 + 0.9j
    budget = EvalBudget(rowmax=80)
    a = petersson_P(k, -1 / z1, z2, budget).value
    b = petersson_P(k, z1, z2, budget).value
    assert abs(a - z1**k * b) < 1e-5 * max(abs(a), abs(b))


def test_petersson_periodic_in_second_variable():
    k = 6
    z1, z2 = 0.3 + 1.3j, 0.1 + 0.9j
    budget = EvalBudget(rowmax=80)
    a = petersson_P(k, z1, z2 + 1, budget).value
    b = petersson_P(k, z1, z2, budget).value
    assert abs(a - b) < 1e-9 * max(abs(a), 1e-12)


def test_exp_poincare_is_delta_like():
    # weight 12, m=1: proportional to the discriminant cusp form
    from localforms.classical import delta_qexp, eval_qseries

    tau1, tau2 = 0.13 + 1.1j, -0.21 + 0.9j
    budget = EvalBudget(rowmax=60, nmax=60)
    p1 = exp_poincare_P(12, 1, tau1, budget).value
    p2 = exp_poincare_P(12, 1, tau2, budget).value
    d = delta_qexp(30)
    d1, _ = eval_qseries(d, tau1)
    d2, _ = eval_qseries(d, tau2)
    assert abs(p1 / p2 - d1 / d2) < 1e-6 * abs(d1 / d2)


def test_niebur_seed_scale():
    # far in the cusp the identity coset dominates; the series approaches its
    # seed Gamma(s)/Gamma(2s) M_{0,s-1/2}(4 pi |m| v) e(mu)
    from localforms.special import whittaker_M0

    s, m = 3.0, 1
    w = 0.2 + 3.5j
    seed = (math.gamma(s) / math.gamma(2 * s)
            * whittaker_M0(s - 0.5, 4 * math.pi * w.imag)
            * cmath.exp(2j * math.pi * m * w.real))
    got = niebur_G(m, w, s, EvalBudget(rowmax=40, nmax=40)).value
    assert abs(got - seed) < 1e-3 * abs(seed)


def test_lhmf_vanishes_when_no_cusp_forms():
    # weight 2 - 2*3 = -4 target space pairs against weight-6 cusp forms on
    # the full group; there are none, so the lattice sum vanishes
    for tau in (0.5 + 0.9j, 0.2 + 1.3j, 0.3 + 3j):
        res = lhmf_F(3, 5, tau, EvalBudget(R=200.0))
        assert abs(res.value) < 1e-12


def test_lhmf_nonzero_at_weight_minus_ten():
    res = lhmf_F(6, 5, 0.2 + 1.3j, EvalBudget(R=200.0))
    assert abs(res.value) > 1e-12


def test_maass_poincare_negative_weight_periodicity():
    budget = EvalBudget(rowmax=30, nmax=30)
    w = 0.3 + 1.1j
    a = maass_poincare_Phi(-4, -1, w, budget).value
    b = maass_poincare_Phi(-4, -1, w + 1, budget).value
    assert abs(a - b) < 1e-6 * max(abs(a), 1e-9)


def test_eis2_hat_periodic():
    tau = 0.27 + 1.3j
    a = eis2_hat(5, 1, tau).value
    b = eis2_hat(5, 1, tau + 1).value
    assert abs(a - b) < 1e-9


def test_param_validation():
    with pytest.raises(ValueError):
        EisParams(5, 5)          # odd weight
    with pytest.raises(ValueError):
        EisParams(6, 5, 8)       # 8 does not divide 5
    with pytest.raises(ValueError):
        zagier_f(2, 5, 1j)       # conditionally convergent edge refused
    with pytest.raises(ValueError):
        quantum_limit(4, 5, Fraction(1, 2))  # kappa = 0 mod 4 unsupported