import cmath
import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import pc_symbols
from thfactor.errors import NotFredholmError
from thfactor.factorization import (FactorTerm, antisymmetric_from_asymmetric,
                                    asymmetric_from_antisymmetric, factor_pc, uniqueness_check,
                                    validate_factorization)
from thfactor.fredholm import check_conditions
from thfactor.quadrature import fourier_coefficients
from thfactor.symbols import LaurentPolynomial, PCSymbol, SmoothPart

THETA = 2 * np.pi * (np.arange(301) + 0.41) / 301


def margin(sym):
    return min(c.distance for c in check_conditions(sym))


@pytest.mark.parametrize("kind", ["minus", "plus", "abs"])
@pytest.mark.parametrize("sigma", [0.0, 1.3, math.pi, 5.0])
def test_term_matches_principal_power(kind, sigma):
    e = 0.37 - 0.2j
    t = np.exp(1j * THETA)
    a = cmath.exp(1j * sigma)
    if kind == "minus":
        direct = np.exp(e * np.log(1 - a / t))
    elif kind == "plus":
        direct = np.exp(e * np.log(1 - t / a))
    else:
        direct = np.abs(1 - t / a) ** e
    term = FactorTerm(kind, sigma, e)
    assert np.allclose(term.evaluate(THETA), direct, rtol=1e-12)


@pytest.mark.parametrize("kind", ["minus", "plus", "abs"])
def test_reflected_term(kind):
    term = FactorTerm(kind, 1.1, 0.3 + 0.1j)
    assert np.allclose(term.reflected().evaluate(THETA), term.evaluate(np.mod(-THETA, 2 * np.pi)))


def test_term_log_is_resolved_next_to_the_singularity():
    term = FactorTerm("minus", 2.0, 1.0)
    v = term.log_value(np.array([2.0]), np.array([1e-300]))
    assert v.real[0] == pytest.approx(math.log(1e-300), rel=1e-12)


@pytest.mark.parametrize("kind,sigma", [("minus", 0.7), ("plus", 2.2)])
def test_series_matches_quadrature(kind, sigma):
    term = FactorTerm(kind, sigma, 0.3 - 0.1j)
    n = 20
    series = term.series(n)
    c = fourier_coefficients(lambda b, o: term.evaluate(b + o), -n, n, breakpoints=[sigma],
                             singular=True, decay=[1.3])
    if kind == "minus":
        quad = c[n::-1]        # degrees 0, -1, ..., -n
    else:
        quad = c[n:]           # degrees 0..n
    assert np.max(np.abs(series - quad)) < 1e-9


def test_abs_term_has_no_series():
    with pytest.raises(ValueError):
        FactorTerm("abs", 0.0, 0.2).series(4)


def test_bad_term_kind():
    with pytest.raises(ValueError):
        FactorTerm("both", 0.0, 1.0)


@pytest.mark.parametrize("m", [-2, 0, 3])
def test_monomial_factorization(m):
    fact = factor_pc(PCSymbol(2.0, SmoothPart(m)))
    assert fact.kappa == m and fact.gamma == 1
    assert fact.minus_terms == () and fact.zero_terms == ()


def test_single_jump_terms():
    fact = factor_pc(PCSymbol(2.0, jumps=((0.0, 0.1),)))
    assert fact.minus_terms == (FactorTerm("minus", 0.0, -0.2),)
    assert fact.zero_terms == (FactorTerm("abs", 0.0, 0.2),)


def test_shifted_jump_carries_gamma_and_kappa():
    # beta = 0.8 at tau = -1: window (-1/4, 3/4), so the selected exponent is -0.2
    sym = PCSymbol(2.0, jumps=((math.pi, 0.8),))
    fact = factor_pc(sym)
    assert fact.kappa == 1
    assert fact.gamma == pytest.approx(cmath.exp(-2j * math.pi))
    assert validate_factorization(fact, sym, truncation=256).ok(1e-10)


def test_smooth_split():
    g = LaurentPolynomial({-2: 0.1, -1: 0.2j, 0: 0.3, 1: 0.4, 3: -0.1j})
    fact = factor_pc(PCSymbol(2.0, SmoothPart(0, g)))
    assert fact.smooth_minus.n_max <= 0
    z = fact.smooth_zero
    assert np.allclose(z.evaluate(THETA), z.evaluate(-THETA))
    assert np.allclose(fact.smooth_minus.evaluate(THETA) + z.evaluate(THETA), g.evaluate(THETA))


@settings(max_examples=15)
@given(pc_symbols())
def test_random_factorizations_validate(sym):
    assume(margin(sym) > 1e-3)
    fact = factor_pc(sym)
    rep = validate_factorization(fact, sym, grid=512, truncation=128)
    assert rep.residual < 1e-10
    assert rep.evenness_defect < 1e-10
    assert rep.minus_support_defect < 1e-8
    assert rep.minus_inverse_support_defect < 1e-8


def test_not_fredholm_is_refused():
    with pytest.raises(NotFredholmError):
        factor_pc(PCSymbol(2.0, jumps=((0.0, 0.25),)))


MIXED = PCSymbol(2.0, SmoothPart(1, LaurentPolynomial({1: 0.2, -1: 0.1j})),
                 ((0.0, 0.1), (math.pi, 0.3 + 0.1j), (1.2, 0.35), (2 * math.pi - 1.2, -0.2)))


def test_mixed_symbol_validates():
    fact = factor_pc(MIXED)
    rep = validate_factorization(fact, MIXED, truncation=256)
    assert rep.ok(1e-10), rep


def test_fault_odd_smooth_zero_is_detected():
    fact = factor_pc(MIXED)
    bad = replace(fact, smooth_zero=fact.smooth_zero + LaurentPolynomial({1: 0.05}),
                  smooth_minus=fact.smooth_minus)
    rep = validate_factorization(bad, MIXED, truncation=128)
    assert rep.evenness_defect > 1e-3


def test_fault_wrong_side_term_is_detected():
    fact = factor_pc(MIXED)
    terms = list(fact.minus_terms)
    terms[0] = FactorTerm("plus", terms[0].sigma, terms[0].exponent)
    bad = replace(fact, minus_terms=tuple(terms))
    rep = validate_factorization(bad, MIXED, truncation=128)
    assert rep.minus_support_defect > 1e-3


def test_fault_wrong_gamma_is_detected():
    fact = factor_pc(MIXED)
    rep = validate_factorization(replace(fact, gamma=fact.gamma * 1.01), MIXED, truncation=64)
    assert rep.residual > 1e-3


def test_minus_inverse_series_inverts_minus_series():
    fact = factor_pc(MIXED)
    n = 40
    a, b = fact.minus_coeffs(n), fact.minus_inverse_coeffs(n)
    conv = np.convolve(a, b)[:n + 1]
    assert conv[0] == pytest.approx(1.0)
    assert np.max(np.abs(conv[1:])) < 1e-12


def test_antisymmetric_roundtrip():
    fact = factor_pc(MIXED)
    anti = antisymmetric_from_asymmetric(fact, MIXED)
    rec = asymmetric_from_antisymmetric(anti, MIXED)
    assert rec.evenness_defect() < 1e-10
    theta = THETA[np.all([np.abs(THETA - s) > 1e-3 for s in fact.singular_points()], axis=0)]
    assert np.allclose(rec.zero(theta), fact.zero(theta), rtol=1e-10)
    assert np.allclose(rec.product(theta), MIXED.evaluate(theta), rtol=1e-10)


def test_uniqueness_recovers_the_constant():
    fact = factor_pc(MIXED)
    res = uniqueness_check(fact, fact.rescaled(2 - 1j))
    assert res.same_kappa
    assert res.gamma == pytest.approx(2 - 1j)
    assert res.defect < 1e-12


def test_pair_shift_gives_an_equivalent_factorization():
    f0 = factor_pc(MIXED)
    f1 = factor_pc(MIXED, pair_shift=1)
    assert f0.selection.pairs != f1.selection.pairs
    assert validate_factorization(f1, MIXED, truncation=128).ok(1e-9)
    res = uniqueness_check(f0, f1)
    assert res.same_kappa and res.defect < 1e-10


def test_peel_minus_one():
    from thfactor.factorization import peel_minus_one
    r0 = LaurentPolynomial({-2: 1.0, 0: 2j, 3: -0.5})
    q = LaurentPolynomial({0: 1.0, -1: 1.0}) * r0
    r, k = peel_minus_one(q)
    assert k == 1
    assert np.allclose(r.evaluate(THETA), r0.evaluate(THETA))
    assert peel_minus_one(r0) == (r0, 0)


def test_inverse_zero_factor_with_strong_singularity_at_minus_one():
    # |1 + t|^{-1.5} / phi_0 is not integrable, (1 + 1/t)|1 + t|^{-1.5} is
    sym = PCSymbol(4 / 3, jumps=((math.pi, 0.75),))
    fact = factor_pc(sym)
    assert fact.zero_terms[0].exponent.real == pytest.approx(1.5)
    q = LaurentPolynomial({0: 1.0, -1: 1.0})
    c = fact.zero_inverse_times(q, -8, 7)
    assert np.all(np.isfinite(c))
    # J-symmetry of q / phi_0: coefficient n equals coefficient -n-1
    assert np.allclose(c[8:], c[:8][::-1], atol=1e-10)
