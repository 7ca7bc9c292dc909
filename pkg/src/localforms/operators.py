"""Finite-difference Maass operators and local-behavior diagnostics.

The weight-k hyperbolic Laplacian, the lowering/raising/shadow operators, the
slash action, and a jump-average probe across geodesic singularities.  All
derivatives are central differences with Richardson step-halving; accuracy is
bounded by the smoothness and the accuracy of the underlying evaluator.
"""

from __future__ import annotations

from dataclasses import dataclass

from .qforms import GroupElement, QForm, mobius
from .cycles import geodesic_apex


@dataclass(frozen=True)
class Stencil:
    h: float = 1e-3
    richardson: bool = True


def slash(f, k: int, g: GroupElement):
    """(f |_k g)(tau) = (r tau + s)^{-k} f(g tau), integer weight."""

    def out(tau):
        tau = complex(tau)
        return (g.r * tau + g.s) ** (-k) * f(mobius(g, tau))

    return out


def _partials(f, tau: complex, h: float):
    """(f_u, f_v, f_uu, f_vv, f0) by second-order central differences."""
    fpu = f(tau + h)
    fmu = f(tau - h)
    fpv = f(tau + 1j * h)
    fmv = f(tau - 1j * h)
    f0 = f(tau)
    fu = (fpu - fmu) / (2 * h)
    fv = (fpv - fmv) / (2 * h)
    fuu = (fpu - 2 * f0 + fmu) / (h * h)
    fvv = (fpv - 2 * f0 + fmv) / (h * h)
    return fu, fv, fuu, fvv, f0


def laplacian_fd(f, k: int, tau: complex, stencil: Stencil = Stencil()) -> complex:
    """Delta_k f = -v^2 (f_uu + f_vv) + i k v (f_u + i f_v)."""
    tau = complex(tau)
    v = tau.imag

    def apply_at(h):
        fu, fv, fuu, fvv, _ = _partials(f, tau, h)
        return -v * v * (fuu + fvv) + 1j * k * v * (fu + 1j * fv)

    a = apply_at(stencil.h)
    if not stencil.richardson:
        return a
    b = apply_at(stencil.h / 2)
    return (4 * b - a) / 3


def _first(f, tau, h, combine):
    a = combine(*_uv_derivs(f, tau, h))
    b = combine(*_uv_derivs(f, tau, h / 2))
    return (4 * b - a) / 3


def _uv_derivs(f, tau: complex, h: float):
    fu = (f(tau + h) - f(tau - h)) / (2 * h)
    fv = (f(tau + 1j * h) - f(tau - 1j * h)) / (2 * h)
    return fu, fv


def lowering_fd(f, tau: complex, stencil: Stencil = Stencil()) -> complex:
    """L f = -2 i v^2 d/d tau-bar = -i v^2 (f_u + i f_v)."""
    tau = complex(tau)
    v = tau.imag
    return _first(f, tau, stencil.h, lambda fu, fv: -1j * v * v * (fu + 1j * fv))


def raising_fd(f, k: int, tau: complex, stencil: Stencil = Stencil()) -> complex:
    """R_k f = 2 i d/d tau f + (k/v) f = i (f_u - i f_v) + (k/v) f."""
    tau = complex(tau)
    v = tau.imag
    deriv = _first(f, tau, stencil.h, lambda fu, fv: 1j * (fu - 1j * fv))
    return deriv + (k / v) * f(tau)


def xi_fd(f, k: int, tau: complex, stencil: Stencil = Stencil()) -> complex:
    """xi_k f = 2 i v^k conj(d/d tau-bar f) = i v^k conj(f_u + i f_v)."""
    tau = complex(tau)
    v = tau.imag
    return _first(
        f, tau, stencil.h,
        lambda fu, fv: 1j * v**k * complex(fu + 1j * fv).conjugate(),
    )


def local_behavior_report(f, Q: QForm, p: complex | None = None,
                          eps_list=(1e-2, 5e-3, 2.5e-3)) -> dict:
    """One-sided limits of f across the geodesic of Q at the point p.

    Approaches p along +/- i epsilon, extrapolates both one-sided limits
    linearly in epsilon from the two smallest steps, and reports their
    average and the jump magnitude.
    """
    if p is None:
        p = geodesic_apex(Q)
    p = complex(p)
    above = [f(p + 1j * e) for e in eps_list]
    below = [f(p - 1j * e) for e in eps_list]
    e1, e2 = eps_list[-2], eps_list[-1]

    def extrap(v1, v2):
        # linear model g(e) = g(0) + c e through the two smallest steps
        return (v2 * e1 - v1 * e2) / (e1 - e2)

    lim_above = extrap(above[-2], above[-1])
    lim_below = extrap(below[-2], below[-1])
    return {
        "point": p,
        "above": above,
        "below": below,
        "limit_above": lim_above,
        "limit_below": lim_below,
        "average": (lim_above + lim_below) / 2,
        "jump": lim_above - lim_below,
    }
