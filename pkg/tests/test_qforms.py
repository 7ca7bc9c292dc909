import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from localforms import qforms
from localforms.qforms import (
    ExactPoint,
    GroupElement,
    OnNetError,
    QForm,
    act,
    automorph,
    class_representatives,
    enclosing_forms,
    enumerate_shell,
    indicator,
    mobius,
    qtau,
    sign,
    value,
)

DISCS = [5, 8, 12, 13, 20, 21, 24, 40]

S = GroupElement(0, -1, 1, 0)
T = GroupElement(1, 1, 0, 1)


@st.composite
def group_elements(draw, length=5):
    g = GroupElement(1, 0, 0, 1)
    for _ in range(draw(st.integers(0, length))):
        g = g @ draw(st.sampled_from([S, T, T.inverse()]))
    return g


@st.composite
def forms(draw):
    D = draw(st.sampled_from(DISCS))
    Q = draw(st.sampled_from(class_representatives(D)))
    return act(Q, draw(group_elements()))


@st.composite
def points(draw):
    u = Fraction(draw(st.integers(-30, 30)), draw(st.integers(1, 10)))
    v = Fraction(draw(st.integers(1, 40)), draw(st.integers(1, 10)))
    return ExactPoint(u, v)


@given(group_elements(), group_elements(), points())
def test_mobius_composition(g, h, pt):
    assert mobius(g @ h, pt) == mobius(g, mobius(h, pt))


@given(forms(), group_elements(), group_elements())
def test_action_composition(Q, g, h):
    assert act(act(Q, g), h) == act(Q, g @ h)


@given(forms(), group_elements())
def test_action_preserves_disc_and_content(Q, g):
    R = act(Q, g)
    assert R.disc == Q.disc
    assert R.content == Q.content


@given(forms(), group_elements(), points())
def test_qtau_equivariance(Q, g, pt):
    assert qtau(act(Q, g), pt) == qtau(Q, mobius(g, pt))


@given(forms(), points())
def test_value_modulus_identity(Q, pt):
    re, im = value(Q, pt)
    assert re * re + im * im == pt.v**2 * (qtau(Q, pt) ** 2 + Q.disc)


@given(forms(), points())
def test_indicator_vs_sign(Q, pt):
    qt = qtau(Q, pt)
    if qt == 0:
        with pytest.raises(OnNetError):
            indicator(Q, pt)
    else:
        assert indicator(Q, pt) == (1 if sign(Q) * qt < 0 else 0)


@pytest.mark.parametrize("D", DISCS)
def test_reduction_reaches_reduced(D):
    for Q in class_representatives(D):
        R, g = qforms.reduce_form(act(Q, T @ T @ S @ T.inverse()))
        assert qforms.is_reduced(R)
        assert qforms.equivalent(R, Q)


@pytest.mark.parametrize("D", DISCS)
def test_class_representatives_inequivalent(D):
    reps = class_representatives(D)
    for i, Q in enumerate(reps):
        assert Q.disc == D
        for R in reps[:i]:
            assert not qforms.equivalent(Q, R)


def test_known_class_numbers():
    known = {5: 1, 8: 1, 12: 2, 13: 1, 17: 1, 20: 2, 21: 2, 24: 2, 40: 2,
             60: 4, 85: 2}
    for D, h in known.items():
        assert qforms.class_number(D) == h, D


@pytest.mark.parametrize("D", DISCS)
def test_automorph_stabilizes(D):
    for Q in class_representatives(D):
        g = automorph(Q)
        assert g != GroupElement(1, 0, 0, 1)
        assert act(Q, g) == Q


def test_enumerate_shell_complete():
    D, tau, R = 5, 0.3 + 1.1j, 12.0
    shell = enumerate_shell(D, tau, R)
    got = set(shell)
    # independent brute scan over a generous coefficient box
    for a in range(-30, 31):
        if a == 0:
            continue
        for b in range(-60, 61):
            if (b * b - D) % (4 * a):
                continue
            Q = QForm(a, b, (b * b - D) // (4 * a))
            if abs(qtau(Q, tau)) <= R:
                assert Q in got
    for Q in shell:
        assert Q.disc == D and abs(qtau(Q, tau)) <= R


def test_enclosing_forms_definition():
    D, tau = 5, ExactPoint(Fraction(1, 3), Fraction(4, 5))
    enclosing = enclosing_forms(D, tau)
    assert enclosing == sorted(enclosing, key=lambda f: (f.a, f.b, f.c))
    for Q in enclosing:
        assert indicator(Q, tau) == 1
    # every enclosing form appears: check against the shell enumeration
    for Q in enumerate_shell(D, complex(tau), 50.0):
        if qtau(Q, tau) != 0 and indicator(Q, tau) == 1:
            assert Q in enclosing


def test_fundamental_domain_reduction():
    tau = 3.7 + 0.2j
    red, g = qforms.reduce_to_fundamental_domain(tau)
    assert abs(red) >= 1 - 1e-12 and abs(red.real) <= 0.5 + 1e-12
    assert abs(mobius(g, tau) - red) < 1e-12
