import cmath
import math

import pytest

from localforms.operators import (
    Stencil,
    lowering_fd,
    laplacian_fd,
    local_behavior_report,
    raising_fd,
    slash,
    xi_fd,
)
from localforms.qforms import GroupElement, QForm
from localforms.cycles import geodesic_apex


def test_lowering_kills_holomorphic():
    f = lambda t: cmath.exp(2j * math.pi * t)
    assert abs(lowering_fd(f, 0.3 + 0.9j)) < 1e-8


def test_xi_on_explicit_function():
    # f(tau) = v: f_u = 0, f_v = 1, so xi_2 f = i v^2 conj(i) = v^2
    f = lambda t: t.imag
    tau = 0.4 + 1.3j
    assert abs(xi_fd(f, 2, tau) - tau.imag ** 2) < 1e-9


def test_laplacian_eigenfunction():
    # Delta_0 v^s = s(1-s) v^s
    s = 0.7
    f = lambda t: t.imag ** s
    tau = 0.1 + 1.7j
    got = laplacian_fd(f, 0, tau)
    want = s * (1 - s) * f(tau)
    assert abs(got - want) < 1e-8


def test_raising_on_power():
    # R_k v^s = i(0 - i s v^(s-1)) + k v^(s-1) = (s + k) v^(s-1)
    s, k = 1.3, 4
    f = lambda t: t.imag ** s
    tau = 0.2 + 1.1j
    got = raising_fd(f, k, tau)
    want = (s + k) * tau.imag ** (s - 1)
    assert abs(got - want) < 1e-8


def test_lowering_on_power():
    # L v^s = -i v^2 (i s v^(s-1)) = s v^(s+1)
    s = 0.6
    f = lambda t: t.imag ** s
    tau = 0.3 + 0.8j
    assert abs(lowering_fd(f, tau) - s * tau.imag ** (s + 1)) < 1e-8


def test_slash_action():
    g = GroupElement(0, -1, 1, 0)
    f = lambda t: t.imag ** 2
    k = 6
    tau = 0.3 + 1.2j
    out = slash(f, k, g)(tau)
    assert abs(out - tau ** (-k) * f(-1 / tau)) < 1e-12


def test_local_behavior_on_discontinuous_function():
    Q = QForm(1, 1, -1)
    p = geodesic_apex(Q)

    def f(t):
        # +1 above the apex height, -1 below, plus a smooth part
        return (1.0 if t.imag > p.imag else -1.0) + 0.5 * t.imag

    rep = local_behavior_report(f, Q)
    assert abs(rep["limit_above"] - (1 + 0.5 * p.imag)) < 1e-9
    assert abs(rep["limit_below"] - (-1 + 0.5 * p.imag)) < 1e-9
    assert abs(rep["jump"] - 2) < 1e-9
    assert abs(rep["average"] - 0.5 * p.imag) < 1e-9


def test_richardson_improves_accuracy():
    # Delta_0 v^5 = -20 v^5
    f = lambda t: t.imag ** 5
    tau = 0.2 + 1.4j
    exact = -20 * tau.imag ** 5
    coarse = abs(laplacian_fd(f, 0, tau, Stencil(h=1e-2, richardson=False)) - exact)
    fine = abs(laplacian_fd(f, 0, tau, Stencil(h=1e-2, richardson=True)) - exact)
    assert fine < coarse
