import math

import numpy as np
import pytest

from thfactor.errors import NotFredholmError, ProbeUnsupportedError
from thfactor.fredholm import analyze, check_conditions
from thfactor.harness import (bounded_below, classical_toeplitz_invertible, equivalence_partner,
                              equivalence_probe, finite_section_probe, formal_inverse_suite,
                              identity_defects, identity_suite, random_laurent,
                              sections_stable_expected, sweep_cross_check, toeplitz_baseline)
from thfactor.library import curated_library, random_library, toeplitz_cases
from thfactor.symbols import LaurentPolynomial, PCSymbol, SmoothPart

THETA = 2 * np.pi * (np.arange(200) + 0.3) / 200


def test_identities_hold():
    rep = identity_suite(2, trials=3, seed=1, N=32)
    assert rep.passed
    assert len(rep.checks) == 5


def test_identity_defect_detects_wrong_identity():
    rng = np.random.default_rng(3)
    phi, psi = random_laurent(rng, 2), random_laurent(rng, 2)
    # the even-factor identity fails when the right factor is not even
    d = identity_defects(phi, psi, 32, 2)
    assert max(d.values()) < 1e-12
    from thfactor.operators import m_block
    wrong = m_block(phi * psi, 32, 32) - m_block(phi, 32, 32) @ m_block(psi, 32, 32)
    assert np.max(np.abs(wrong[:28, :28])) > 1e-3


def test_identity_window_too_small():
    with pytest.raises(ValueError):
        identity_defects(LaurentPolynomial({0: 1}), LaurentPolynomial({0: 1}), 4, 2)


def test_random_laurent_range():
    g = random_laurent(np.random.default_rng(0), 3, -2, 5)
    assert g.n_min >= -2 and g.n_max <= 5


def test_bounded_below():
    assert bounded_below([0.5, 0.49])
    assert not bounded_below([0.5, 0.3])
    assert not bounded_below([1e-5, 1e-5])
    with pytest.raises(ValueError):
        bounded_below([1.0])


def test_probe_on_invertible_symbol():
    sym = PCSymbol(2.0, SmoothPart(0, LaurentPolynomial({1: 0.3, -1: 0.2})), ((0.0, 0.1),))
    res = finite_section_probe(sym, (32, 64))
    assert res.expected == "stable" and res.verdict_consistent
    assert res.near_null_count == (0, 0)


def test_probe_counts_kernel_of_shift_adjoint():
    res = finite_section_probe(PCSymbol(2.0, SmoothPart(-2)), (16, 32))
    assert res.kernel_count == (2, 2) and res.cokernel_count == (0, 0)
    assert res.verdict_consistent


def test_probe_on_non_fredholm_symbol():
    res = finite_section_probe(PCSymbol(2.0, jumps=((0.0, 0.25),)), (64, 128, 256))
    assert res.expected == "not fredholm"
    # at the boundary the smallest singular value decays, but only slowly
    assert res.sigma_min[0] > res.sigma_min[1] > res.sigma_min[2]


def test_probe_requires_l2():
    with pytest.raises(ProbeUnsupportedError):
        finite_section_probe(PCSymbol(3.0), (8, 16))
    with pytest.raises(ProbeUnsupportedError):
        equivalence_probe(PCSymbol(4 / 3), 8)


def test_stability_needs_the_flipped_toeplitz_operator():
    assert sections_stable_expected(PCSymbol(2.0, jumps=((0.0, 0.2),)))
    unstable = PCSymbol(2.0, jumps=((0.0, -0.7),))
    assert analyze(unstable).is_invertible
    assert not sections_stable_expected(unstable)


def test_equivalence_partner_pointwise():
    sym = PCSymbol(2.0, SmoothPart(1, LaurentPolynomial({1: 0.2})), ((1.0, 0.3),))
    psi = equivalence_partner(sym)
    # psi(t) = 1/phi(-1/t): theta -> pi - theta
    assert np.allclose(psi.evaluate(THETA) * sym.evaluate(np.mod(math.pi - THETA, 2 * np.pi)), 1)


def test_equivalence_probe_agrees():
    sym = PCSymbol(2.0, jumps=((math.pi, 0.3),))
    res = equivalence_probe(sym, 32)
    assert res.consistent and res.verdicts == (True, True, True)


def test_formal_inverse_suite_small():
    sym = PCSymbol(2.0, SmoothPart(0, LaurentPolynomial({-1: 0.2, 2: 0.1j})),
                   ((0.0, 0.15), (math.pi, 0.2 - 0.1j)))
    rep = formal_inverse_suite(sym, trials=2, n_trunc=128, bandwidth=4)
    assert rep.passed, rep.failures()


def test_formal_inverse_suite_preconditions():
    with pytest.raises(ValueError):
        formal_inverse_suite(PCSymbol(2.0, SmoothPart(1)), trials=1)
    with pytest.raises(NotFredholmError):
        formal_inverse_suite(PCSymbol(2.0, jumps=((0.0, 0.25),)), trials=1)


@pytest.mark.parametrize("p,beta,winding,inv", [
    (2.0, 0.3, 0, True), (2.0, 0.7, 0, False), (2.0, 0.7, -1, True),
    (4.0, 0.3, 0, False), (4 / 3, 0.6, 0, True), (2.0, -0.7, 0, False),
])
def test_classical_window(p, beta, winding, inv):
    assert classical_toeplitz_invertible(PCSymbol(p, SmoothPart(winding), ((2.0, beta),))) == inv


def test_toeplitz_baseline_small():
    cases = [PCSymbol(2.0, jumps=((1.0, 0.3),)), PCSymbol(2.0, jumps=((1.0, 0.7),)),
             PCSymbol(3.0, jumps=((1.0, 0.5), (5.0, -0.2)))]
    assert toeplitz_baseline(cases, sizes=(32, 64)).passed


def test_sweep_cross_check():
    ok = sweep_cross_check(PCSymbol(2.0, jumps=((0.0, 0.1), (1.0, 0.2))), steps=512)
    assert ok.agree and ok.engine_fredholm
    bad = sweep_cross_check(PCSymbol(2.0, jumps=((1.0, 0.2), (2 * math.pi - 1.0, 0.3))), steps=512)
    assert bad.agree and not bad.engine_fredholm


def test_random_library_shape():
    lib = random_library(n=12, seed=5)
    assert len(lib) == 12
    assert len({e.symbol_id for e in lib}) == 12
    for e in lib:
        dist = min(c.distance for c in check_conditions(e.symbol))
        if e.note == "boundary":
            assert dist < 1e-9
        else:
            assert dist > 1e-3
    again = random_library(n=12, seed=5)
    assert [e.symbol for e in again] == [e.symbol for e in lib]


def test_curated_library_is_l2_and_covers_indices():
    lib = curated_library()
    assert len(lib) >= 30 and all(e.symbol.p == 2.0 for e in lib)
    kappas = {analyze(e.symbol).kappa for e in lib}
    assert {-2, -1, 0, 1, 2} <= kappas


def test_toeplitz_cases():
    cases = toeplitz_cases()
    assert len(cases) == 20
    assert sum(c.p == 2.0 for c in cases) == 10


def test_curated_probes_are_consistent():
    bad = []
    for e in curated_library():
        res = finite_section_probe(e.symbol, (128, 256), e.symbol_id)
        if not res.verdict_consistent:
            bad.append((e.symbol_id, res.expected, res.sigma_min, res.kernel_count, res.cokernel_count))
    assert not bad
