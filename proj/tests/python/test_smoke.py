"""Smoke tests for the python module."""

import math

import pytest

import vhi


def test_pochhammer():
    assert vhi.pochhammer(3.0, 4) == pytest.approx(360.0)
    assert vhi.pochhammer(1.7, 0) == 1.0


def test_gauss_2f1():
    r = vhi.gauss_2f1(0.5, 1.3, 1.3, -1.0)
    assert r.converged
    assert r.value == pytest.approx(2.0 ** -0.5, rel=1e-12)
    with pytest.raises(ValueError):
        vhi.gauss_2f1(0.3, 0.7, 1.2, 1.5)


def test_xi2_reductions():
    # w = 0 row: Xi2 = 2F1
    a = vhi.humbert_xi2(0.25, 0.75, 1.3, -0.4, 0.0).value
    b = vhi.gauss_2f1(0.25, 0.75, 1.3, -0.4).value
    assert a == pytest.approx(b, rel=1e-13)
    # g = d: F[0;2;1] = Xi2
    c = vhi.f0211(-0.1, 1.1, 0.45, 0.95, 0.45, -0.3, 0.1).value
    d = vhi.humbert_xi2(-0.1, 1.1, 0.95, -0.3, 0.1).value
    assert c == pytest.approx(d, rel=1e-13)


def test_parameters_and_gamma2():
    p = vhi.params_from_degeneracy(-0.8, -0.4, -2.0)
    assert p.alpha == pytest.approx(-0.125)
    assert p.beta == pytest.approx(-1.0 / 3.0)
    assert p.lambda_ == pytest.approx(-0.5)
    assert p.in_theorem_regime()
    assert vhi.gamma2(-0.25) == pytest.approx(0.28224953424411675, rel=1e-14)


def test_kernel_lemma():
    p = vhi.Parameters(-0.1, -0.3, 0.0)
    w, cond = vhi.w_kernel(0.8, 0.5, 7.0, p)
    assert w == pytest.approx(0.625 ** -0.1, abs=1e-6 * max(1.0, cond))


def test_forward_abel():
    p = vhi.Parameters(0.0, -0.3, 0.0)
    tau = vhi.forward_n(lambda t: 1.0, 0.5, p)
    assert tau == pytest.approx(0.5 ** 1.6 / 1.6, rel=1e-12)


def test_roundtrip_point():
    p = vhi.Parameters(-0.1, -0.3, 0.5)
    quad = vhi.QuadratureSpec(64)
    tau = vhi.forward_n(lambda t: 1.0 + t * t, 0.55, p, quad)
    # invert through a sampled tau on a fine grid
    nodes = [0.002 * (i / 400.0) ** 2 + 0.998 * (i / 400.0) for i in range(1, 401)]
    vals = [vhi.forward_n(lambda t: 1.0 + t * t, x, p, quad) for x in nodes]
    got = vhi.inverse_t((nodes, vals), 0.55, p, quad)
    assert got == pytest.approx(1.0 + 0.55 ** 2, abs=2e-4)
    assert abs(tau) > 0


def test_char_coords_roundtrip():
    pt = vhi.char_coords(0.5, -0.3, -0.5, -0.4)
    x, y = vhi.char_coords_inverse(pt, -0.5, -0.4)
    assert x == pytest.approx(0.5, rel=1e-12)
    assert y == pytest.approx(-0.3, rel=1e-12)
