import math

import numpy as np
import pytest
from hypothesis import given

from conftest import laurent, pc_symbols
from thfactor.errors import TruncationError
from thfactor.factorization import factor_pc
from thfactor.operators import (X1Element, build_section, flip_matrix, hankel_block,
                                apply_formal_inverse, laurent_window, m_block, riesz_matrix,
                                toeplitz_block)
from thfactor.symbols import LaurentPolynomial, PCSymbol, SmoothPart, conjugate, tilde


def monomial(k):
    return PCSymbol(2.0, SmoothPart(k))


def test_toeplitz_of_t_is_the_shift():
    T = build_section(monomial(1), "T", 4).entries
    assert np.array_equal(T, np.eye(4, k=-1))


def test_hankel_of_t_has_one_entry():
    H = build_section(monomial(1), "H", 3).entries
    expect = np.zeros((3, 3))
    expect[0, 0] = 1.0
    assert np.array_equal(H, expect)


def test_m_of_inverse_t():
    M = build_section(monomial(-1), "M", 3).entries
    assert np.array_equal(M, np.eye(3, k=1))
    assert np.array_equal(build_section(monomial(-2), "H", 3).entries, np.zeros((3, 3)))


def test_hand_example_degree_one():
    # phi = a t^{-1} + b + c t
    a, b, c = 2.0, 3.0 - 1j, 0.5j
    phi = LaurentPolynomial({-1: a, 0: b, 1: c})
    M = build_section(phi, "M", 3).entries
    expect = np.array([[b + c, a, 0], [c, b, a], [0, c, b]])
    assert np.allclose(M, expect, atol=0)


def test_rectangular_blocks_extend_the_square():
    sym = PCSymbol(2.0, SmoothPart(1, LaurentPolynomial({1: 0.2})), ((0.5, 0.2),))
    sq = build_section(sym, "M", 6).entries
    assert np.allclose(m_block(sym, 12, 6)[:6], sq)
    assert np.allclose(m_block(sym, 6, 12)[:, :6], sq)
    assert np.allclose(toeplitz_block(sym, 6, 6) + hankel_block(sym, 6, 6), sq)


@given(pc_symbols(p=2.0, max_jumps=2))
def test_phi_section_is_m_over_sqrt2(sym):
    N = 12
    Phi = build_section(sym, "Phi", N).entries
    M = build_section(sym, "M", N).entries
    assert np.allclose(Phi, M / math.sqrt(2), atol=1e-13)


@given(pc_symbols(p=2.0, max_jumps=2))
def test_psi_section_matches_flipped_symbol(sym):
    N = 12
    Psi = build_section(sym, "Psi", N).entries
    Mt = build_section(tilde(sym), "M", N).entries
    assert np.allclose(Psi, Mt.T / math.sqrt(2), atol=1e-12)


@given(pc_symbols(p=2.0, max_jumps=2))
def test_adjoint_law(sym):
    N = 10
    Psi = build_section(sym, "Psi", N).entries
    Phi_bar = build_section(conjugate(sym), "Phi", N).entries
    assert np.allclose(Psi.conj().T, Phi_bar, atol=1e-12)


def test_flip_is_an_involution_and_swaps_projections():
    d = np.arange(-6, 6)
    J = flip_matrix(d)
    P = riesz_matrix(d)
    assert np.array_equal(J @ J, np.eye(d.size))
    assert np.array_equal(J @ P @ J, np.eye(d.size) - P)


def test_flip_needs_closed_window():
    with pytest.raises(ValueError):
        flip_matrix(laurent_window(3))


@given(laurent(max_degree=3))
def test_sections_of_laurent_polynomials_are_banded(g):
    N = 10
    M = build_section(g, "M", N).entries
    j, k = np.indices((N, N))
    outside = np.abs(j - k) > max(abs(g.n_min), abs(g.n_max), 0)
    outside &= (j + k + 1) > g.n_max
    assert np.all(M[outside] == 0)


@pytest.mark.parametrize("bad", [0, -3, 2.5])
def test_bad_sizes(bad):
    with pytest.raises(ValueError):
        build_section(monomial(0), "M", bad)


def test_unknown_kind():
    with pytest.raises(ValueError):
        build_section(monomial(0), "X", 3)


def test_formal_inverse_of_identity():
    fact = factor_pc(PCSymbol(2.0))
    res = apply_formal_inverse(fact, X1Element(LaurentPolynomial({0: 1.0})), 8)
    c = res.coefficients
    assert c[0] == pytest.approx(1.0, abs=1e-14)
    assert c[-1] == pytest.approx(1.0, abs=1e-14)
    others = [n for n in c.degrees() if n not in (0, -1)]
    assert max(abs(c[n]) for n in others) < 1e-14


def test_formal_inverse_of_smooth_symbol():
    # phi = exp(g) with g = 0.3 t^{-1}: phi_- = phi, phi_0 = 1
    sym = PCSymbol(2.0, SmoothPart(0, LaurentPolynomial({-1: 0.3})))
    fact = factor_pc(sym)
    f = X1Element(LaurentPolynomial({1: 1.0}))
    res = apply_formal_inverse(fact, f, 32)
    # P(e^{-0.3/t} (t - 1)) = t - 1 - 0.3, then symmetrize
    p1 = res.p1
    assert p1.coefficient(1) == pytest.approx(1.0)
    assert p1.coefficient(0) == pytest.approx(-1.3)


def test_formal_inverse_requires_index_zero():
    with pytest.raises(ValueError):
        apply_formal_inverse(factor_pc(monomial(1)), X1Element(LaurentPolynomial({0: 1.0})), 8)


def test_formal_inverse_truncation_error():
    sym = PCSymbol(2.0, SmoothPart(0, LaurentPolynomial({-1: 2.0})))
    f = X1Element(LaurentPolynomial({40: 1.0}))
    with pytest.raises(TruncationError):
        apply_formal_inverse(factor_pc(sym), f, 2)


def test_hankel_sections_vanish_for_one_and_inverse_t():
    assert not np.any(build_section(monomial(0), "H", 5).entries)
    assert not np.any(build_section(monomial(-1), "H", 5).entries)


def test_largest_singular_value_approaches_sup_norm():
    sym = PCSymbol(2.0, SmoothPart(1, LaurentPolynomial({1: 0.3, -2: 0.2j})),
                   ((0.0, 0.2 + 0.1j), (2.0, -0.3)))
    th = np.linspace(0, 2 * np.pi, 20001)[1:-1]
    sup = np.abs(sym.evaluate(th[np.abs(th - 2.0) > 1e-9])).max()
    gaps = [sup - build_section(sym, "M", N).singular_values()[0] for N in (32, 64, 128, 256)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-3
