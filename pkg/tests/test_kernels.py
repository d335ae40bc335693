"""Cross-check the compiled kernel backend against the pure-Python fallback."""

import itertools
import math

import pytest

from aqrm._kernels import _pykernels

cy = pytest.importorskip("aqrm._kernels._cykernels")

SAMPLE_POINTS = [
    (alpha, theta, p, gamma)
    for alpha in (0.0, 0.3, 1.2, 2.5)
    for theta in (0.1, math.pi / 2, 3.0)
    for p in (0.05, math.sqrt(0.5), 0.95)
    for gamma in (-0.3, 0.0, 0.25)
]

SAMPLE_MODELS = [
    (1.0, 1.0, 0.5, 0.0),
    (1.0, 1.0, 1.0, 0.5),
    (0.3, 0.9, 1.7, 2.0),
    (5.0, 1.0, 1.1, 0.5),
]


def test_backend_tags():
    assert _pykernels.BACKEND == "python"
    assert cy.BACKEND == "cython"
    assert cy.NORM_FLOOR == _pykernels.NORM_FLOOR


@pytest.mark.parametrize("point", SAMPLE_POINTS)
def test_observable_kernels_agree(point):
    alpha, theta, p, gamma = point
    assert cy.normalization(alpha, theta, p) == _pykernels.normalization(alpha, theta, p)
    assert cy.sigma_z(alpha, theta, p) == _pykernels.sigma_z(alpha, theta, p)
    assert cy.sigma_x(alpha, theta, p) == _pykernels.sigma_x(alpha, theta, p)
    assert cy.photon_number(alpha, theta, p, gamma) == _pykernels.photon_number(
        alpha, theta, p, gamma
    )
    assert cy.correlation(alpha, theta, p, gamma) == _pykernels.correlation(
        alpha, theta, p, gamma
    )


@pytest.mark.parametrize("model", SAMPLE_MODELS)
def test_energy_kernel_agrees(model):
    for alpha, theta, p, gamma in SAMPLE_POINTS:
        ec = cy.energy(*model, alpha, theta, p, gamma)
        ep = _pykernels.energy(*model, alpha, theta, p, gamma)
        assert ec == ep


def test_energy_norm_collapse_is_inf_on_both():
    args = (1.0, 1.0, 0.5, 0.0, 0.0, 0.0, math.sqrt(0.5), 0.0)
    assert math.isinf(cy.energy(*args))
    assert math.isinf(_pykernels.energy(*args))


@pytest.mark.parametrize("model", SAMPLE_MODELS)
@pytest.mark.parametrize("gamma_free", [False, True])
def test_minimizer_agrees(model, gamma_free):
    x0 = (0.4, 1.6, 0.6, 0.0)
    lo = (0.0, 0.0, 0.0, -1.0)
    hi = (3.0, math.pi, 1.0, 1.0)
    mask = (True, True, True, gamma_free)
    args = (*model, x0, lo, hi, mask, 1e-10, 1e-12, 20000)
    xc, fc, nc, okc = cy.minimize_energy(*args)
    xp, fp, np_, okp = _pykernels.minimize_energy(*args)
    assert xc == pytest.approx(xp, abs=0.0)
    assert fc == fp
    assert nc == np_
    assert okc == okp


def test_minimizer_all_fixed():
    x0 = (0.5, 1.2, 0.7, 0.1)
    mask = (False, False, False, False)
    args = (1.0, 1.0, 0.8, 0.3, x0, (0.0,) * 4, (3.0,) * 4, mask, 1e-10, 1e-12, 100)
    xc, fc, nc, okc = cy.minimize_energy(*args)
    xp, fp, np_, okp = _pykernels.minimize_energy(*args)
    assert xc == x0 and xp == x0
    assert fc == fp == _pykernels.energy(1.0, 1.0, 0.8, 0.3, *x0)
    assert okc and okp


def test_minimizer_respects_bounds():
    for kern in (cy, _pykernels):
        x, f, nfev, ok = kern.minimize_energy(
            1.0, 1.0, 2.0, 0.0,
            (2.0, 1.5, 0.7, 0.0),
            (0.0, 0.0, 0.0, -1.0),
            (3.0, math.pi, 1.0, 1.0),
            (True, True, True, False),
            1e-10, 1e-12, 20000,
        )
        assert 0.0 <= x[0] <= 3.0
        assert 0.0 <= x[1] <= math.pi
        assert 0.0 <= x[2] <= 1.0
        assert x[3] == 0.0
        assert ok


def test_maxfev_cap_reported_identically():
    args = (
        1.0, 1.0, 1.5, 0.5,
        (0.1, 0.4, 0.2, 0.0),
        (0.0, 0.0, 0.0, -1.0),
        (4.0, math.pi, 1.0, 1.0),
        (True, True, True, True),
        1e-14, 1e-16, 40,
    )
    xc, fc, nc, okc = cy.minimize_energy(*args)
    xp, fp, np_, okp = _pykernels.minimize_energy(*args)
    assert not okc and not okp
    assert nc == np_
    assert xc == pytest.approx(xp, abs=0.0)
    assert fc == fp
