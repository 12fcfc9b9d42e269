import math

import numpy as np
import pytest
from scipy.special import gamma

from thfactor.errors import NumericFailure
from thfactor.quadrature import fourier_coefficients, panel_rule


def jump_coeffs_exact(beta, n):
    # c_n(t_beta) = sin(pi beta) / (pi (beta - n))
    return np.sin(np.pi * beta) / (np.pi * (beta - n))


@pytest.mark.parametrize("beta", [0.5, 0.1, -0.37, 0.2 + 0.3j])
def test_jump_factor_coefficients(beta):
    n = np.arange(-300, 301)
    f = lambda th: np.exp(1j * beta * (np.mod(th, 2 * np.pi) - np.pi))
    got = fourier_coefficients(f, -300, 300, breakpoints=[0.0])
    assert np.max(np.abs(got - jump_coeffs_exact(beta, n))) < 1e-12


def test_smooth_function_uses_fft():
    got = fourier_coefficients(lambda th: np.exp(np.cos(th)), -5, 5)
    from scipy.special import iv
    want = iv(np.abs(np.arange(-5, 6)), 1.0)
    assert np.max(np.abs(got - want)) < 1e-14


@pytest.mark.parametrize("a", [0.4, -0.45, 1.3])
def test_power_singularity_coefficients(a):
    # |1 - t|^a = sum_n (-1)^n Gamma(a+1) / (Gamma(a/2-n+1) Gamma(a/2+n+1)) t^n
    n = np.arange(-60, 61)
    want = (-1.0) ** n * gamma(a + 1) / (gamma(a / 2 - n + 1) * gamma(a / 2 + n + 1))

    def f(base, off):
        w = np.mod(base + math.pi, 2 * math.pi) - math.pi + off
        return np.abs(2 * np.sin(w / 2)) ** a

    got = fourier_coefficients(f, -60, 60, breakpoints=[0.0], singular=True, decay=[a + 1])
    assert np.max(np.abs(got - want)) < 1e-12


def test_panel_rule_integrates_constants():
    base, off, w = panel_rule([0.3, 2.0, 5.0], 0.2, singular=True)
    assert w.sum() == pytest.approx(2 * math.pi, abs=1e-13)
    base, off, w = panel_rule([0.3, 2.0, 5.0], 0.2)
    assert w.sum() == pytest.approx(2 * math.pi, abs=1e-13)
    assert np.all(off == 0)


def test_nonconvergence_is_reported():
    rough = lambda th: np.where(np.sin(40 * th) > 0, 1.0, -1.0)
    with pytest.raises(NumericFailure):
        fourier_coefficients(rough, -3, 3, breakpoints=[1.0], max_levels=2, tol=1e-15)


def test_empty_range_rejected():
    with pytest.raises(ValueError):
        fourier_coefficients(np.cos, 3, 2)
