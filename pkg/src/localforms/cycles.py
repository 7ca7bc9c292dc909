"""Cycle integrals over closed geodesics by quadrature.

The geodesic of an indefinite form is a semicircle; one period of the closed
geodesic runs from the apex z(pi/2) to its image under the automorph.  The
weight-kappa integral

    C_kappa(h, Q) = D^{1/2 - kappa/4} * integral  h(z) Q(z,1)^{kappa/2 - 1} dz

is computed with Gauss-Legendre nodes in the angle parameter, doubling the
node count until the result stabilizes.  Orientation is counterclockwise
(increasing angle) when sign(Q) > 0 and clockwise otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qforms
from .arith import pell_fundamental
from .qforms import QForm, mobius


@dataclass(frozen=True)
class CyclePath:
    """One fundamental arc of the closed geodesic of a form."""

    form: QForm
    center: float
    radius: float
    theta_start: float
    theta_end: float
    nodes: np.ndarray     # angles
    weights: np.ndarray

    @property
    def orientation(self) -> int:
        return 1 if self.theta_end > self.theta_start else -1

    def points(self) -> np.ndarray:
        return self.center + self.radius * np.exp(1j * self.nodes)

    def dz(self) -> np.ndarray:
        return 1j * self.radius * np.exp(1j * self.nodes)


def cycle_path(Q: QForm, N: int = 64) -> CyclePath:
    """Fundamental arc from the apex theta0 = pi/2 to automorph(Q) . z(theta0)."""
    D = Q.disc
    if D <= 0 or math.isqrt(D) ** 2 == D:
        raise ValueError("need positive non-square discriminant")
    center, radius = qforms.geodesic_center_radius(Q)
    theta0 = math.pi / 2
    g = qforms.automorph(Q)
    orient = qforms.sign(Q)
    z0 = center + radius * complex(math.cos(theta0), math.sin(theta0))
    z1 = mobius(g, z0)
    theta1 = math.atan2(z1.imag, z1.real - center)
    # the automorph translates along the geodesic, so theta1 stays in (0, pi);
    # pick the generator direction matching the required orientation
    if (theta1 > theta0) != (orient > 0):
        z1 = mobius(g.inverse(), z0)
        theta1 = math.atan2(z1.imag, z1.real - center)
    x, w = np.polynomial.legendre.leggauss(N)
    half = (theta1 - theta0) / 2
    nodes = theta0 + half * (x + 1)
    weights = w * half
    # endpoints must land back on the upper half circle
    zc = center + radius * np.exp(1j * nodes)
    if np.any(zc.imag <= 0):
        raise RuntimeError(f"arc of {Q} left the upper half plane")
    return CyclePath(Q, center, radius, theta0, theta1, nodes, weights)


def _apply(h, z: np.ndarray) -> np.ndarray:
    """h on an array of points, falling back to a scalar loop."""
    try:
        out = h(z)
        out = np.asarray(out, dtype=complex)
        if out.shape == z.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([complex(h(zi)) for zi in z])


def cycle_integral(h, kappa: int, Q: QForm, N: int = 64, tol: float = 1e-9,
                   N_max: int = 1024):
    """(value, err_estimate) of the weight-kappa cycle integral of h over Q.

    kappa is an even integer (possibly <= 0); h must be smooth near the arc.
    N doubles until the relative change drops below tol.
    """
    if kappa % 2:
        raise ValueError("kappa must be even")
    D = Q.disc
    prev = None
    while True:
        path = cycle_path(Q, N)
        z = path.points()
        qv = (Q.a * z + Q.b) * z + Q.c
        integrand = _apply(h, z) * qv ** (kappa // 2 - 1) * path.dz()
        total = D ** (0.5 - kappa / 4) * np.sum(path.weights * integrand)
        if prev is not None:
            change = abs(total - prev)
            if change <= tol * max(1.0, abs(total)):
                return total, change
        if N >= N_max:
            return total, abs(total - prev) if prev is not None else float("inf")
        prev = total
        N *= 2


def geodesic_period(Q: QForm) -> float:
    """Hyperbolic length of the closed geodesic: 2 log eps, eps = (t + r sqrt D)/2."""
    D = Q.disc // (Q.content ** 2)
    sol = pell_fundamental(D)
    eps = (sol.t + sol.r * math.sqrt(D)) / 2
    return 2 * math.log(eps)


def geodesic_apex(Q: QForm) -> complex:
    """Top point of the geodesic semicircle of Q."""
    center, radius = qforms.geodesic_center_radius(Q)
    return complex(center, radius)
