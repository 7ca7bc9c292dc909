import math

import numpy as np
import pytest

from localforms.arith import pell_fundamental
from localforms.cycles import (
    CyclePath,
    cycle_integral,
    cycle_path,
    geodesic_apex,
    geodesic_period,
)
from localforms.qforms import GroupElement, QForm, act, automorph, class_representatives, qtau


def _eps(D):
    sol = pell_fundamental(D)
    return (sol.t + sol.r * math.sqrt(D)) / 2


@pytest.mark.parametrize("D", [5, 8, 13, 21])
def test_geodesic_period_is_pell_log(D):
    for Q in class_representatives(D):
        assert abs(geodesic_period(Q) - 2 * math.log(_eps(D))) < 1e-12


def test_path_lies_on_geodesic():
    Q = QForm(1, 1, -1)
    path = cycle_path(Q, N=32)
    pts = path.points()
    # a|z|^2 + b u + c = 0 along the geodesic of Q
    resid = Q.a * np.abs(pts) ** 2 + Q.b * pts.real + Q.c
    assert np.max(np.abs(resid)) < 1e-10
    # the arc endpoints are identified by the automorph of Q
    g = automorph(Q)
    for theta in (path.theta_start, path.theta_end):
        z = path.center + path.radius * complex(math.cos(theta), math.sin(theta))
        img = (g.p * z + g.q) / (g.r * z + g.s)
        assert abs(Q.a * abs(img) ** 2 + Q.b * img.real + Q.c) < 1e-9


def test_apex_on_net():
    for D in (5, 8, 13):
        for Q in class_representatives(D):
            p = geodesic_apex(Q)
            assert abs(qtau(Q, p)) < 1e-12
            assert abs(p.imag - math.sqrt(D) / (2 * abs(Q.a))) < 1e-12


def test_weight0_constant_integral_is_period():
    # integrating 1 in weight 0 gives the hyperbolic length 2 log eps_D
    for D in (5, 13):
        Q = class_representatives(D)[0]
        val, err = cycle_integral(lambda z: np.ones_like(z), 0, Q, N=48)
        assert err < 1e-10
        assert abs(val - 2 * math.log(_eps(D))) < 1e-9


def test_integral_class_invariant():
    # weight-0 modular integrand: same value along equivalent forms
    from localforms.classical import jm_eval

    Q = QForm(1, 1, -1)
    R = act(Q, GroupElement(1, 2, 0, 1) @ GroupElement(0, -1, 1, 0))
    h = lambda z: np.array([jm_eval(1, complex(zz))[0] for zz in np.atleast_1d(z)])
    a, ea = cycle_integral(h, 0, Q, N=48)
    b, eb = cycle_integral(h, 0, R, N=48)
    assert abs(a - b) < 1e-8 + ea + eb


def test_quadrature_refinement_converges():
    Q = QForm(1, 1, -1)
    coarse, _ = cycle_integral(lambda z: np.exp(1j * z), 0, Q, N=8, tol=1e-13)
    fine, err = cycle_integral(lambda z: np.exp(1j * z), 0, Q, N=64, tol=1e-13)
    assert err < 1e-12
    assert abs(coarse - fine) < 1e-6
