import math

import mpmath
import numpy as np
import pytest
from scipy import special as sp

from localforms.special import (
    kummer_M,
    psi,
    whittaker_M,
    whittaker_M0,
    whittaker_M0_scaled,
    whittaker_W0,
)


@pytest.mark.parametrize("k", range(2, 13))
def test_psi_vs_incomplete_beta(k):
    # psi_k(y) = 1/2 * B(y; k - 1/2, 1/2)
    y = np.linspace(0.0, 1.0, 100)
    a, b = k - 0.5, 0.5
    oracle = 0.5 * sp.betainc(a, b, y) * sp.beta(a, b)
    got = psi(k, y)
    assert np.max(np.abs(got - oracle)) < 1e-10


def test_psi_endpoints_and_monotone():
    y = np.linspace(0, 1, 400)
    for k in (2, 3, 6):
        vals = psi(k, y)
        assert vals[0] == 0.0
        assert np.all(np.diff(vals) >= -1e-15)
        assert abs(vals[-1] - 0.5 * sp.beta(k - 0.5, 0.5)) < 1e-12


def test_psi_small_argument_accuracy():
    # leading behavior psi_k(y) ~ y^(k-1/2) / (2k - 1); the evaluation must
    # not lose it to cancellation
    for k in (6, 10, 12):
        for y in (1e-4, 1e-3, 1e-2):
            lead = y ** (k - 0.5) / (2 * k - 1)
            # next series term is ~ 0.5 y (k-1/2)/(k+1/2) relative
            assert abs(psi(k, y) - lead) < y * lead


@pytest.mark.parametrize("n", [0, 1, 2, 4])
def test_whittaker_M0_vs_mpmath(n):
    nu = n + 0.5
    for y in (0.05, 0.7, 3.0, 25.0, 120.0):
        oracle = float(mpmath.whitm(0, nu, y))
        assert abs(whittaker_M0(nu, y) - oracle) < 1e-9 * max(abs(oracle), 1)


@pytest.mark.parametrize("n", [0, 1, 2, 4])
def test_whittaker_W0_vs_mpmath(n):
    nu = n + 0.5
    for y in (0.05, 0.7, 3.0, 25.0, 120.0):
        oracle = float(mpmath.whitw(0, nu, y))
        assert abs(whittaker_W0(nu, y) - oracle) < 1e-9 * max(abs(oracle), 1)


def test_whittaker_scaled_no_overflow():
    y = np.array([500.0, 2000.0, 5000.0])
    out = whittaker_M0_scaled(2.5, y)
    assert np.all(np.isfinite(out))


def test_whittaker_M_shifted_vs_mpmath():
    for mu, nu in ((1.5, 2.5), (-1.5, 2.5), (0.5, 1.5), (-2.0, 2.5)):
        for y in (0.3, 2.0, 9.0):
            oracle = float(mpmath.whitm(mu, nu, y))
            got = whittaker_M(mu, nu, y)
            assert abs(got - oracle) < 1e-9 * max(abs(oracle), 1)


def test_whittaker_M_reduces_to_M0():
    for nu in (0.5, 1.5, 3.5):
        for y in (0.2, 1.7, 8.0):
            assert abs(whittaker_M(0.0, nu, y) - whittaker_M0(nu, y)) < 1e-10 * max(
                whittaker_M0(nu, y), 1)


def test_kummer_vs_mpmath():
    for a, b in ((0.5, 2.0), (2.5, 6.0), (1.0, 1.0)):
        for z in (0.1, 1.0, 10.0, 40.0):
            oracle = float(mpmath.hyp1f1(a, b, z))
            got = float(kummer_M(a, b, z))
            assert abs(got - oracle) < 1e-10 * abs(oracle)


def test_psi_domain_errors():
    with pytest.raises(ValueError):
        psi(2, -0.1)
    with pytest.raises(ValueError):
        psi(2, 1.1)
    with pytest.raises(ValueError):
        psi(1, 0.5)
