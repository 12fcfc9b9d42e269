"""Numerical cross-checks of the theory: operator identities, finite-section
probes, the M / Phi / Psi equivalence, the formal inverse and the classical
Toeplitz baseline.

Finite-section probes are meaningful on l^2 only, so they require p = 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotFredholmError, ProbeUnsupportedError
from .factorization import _local_exponents, _singular_coefficients, factor_pc
from .fredholm import BOUNDARY_TOL, analyze, analyze_toeplitz, circle_distance
from .operators import (X1Element, apply_formal_inverse, build_phi_section, build_psi_section,
                        hankel_block, m_block, toeplitz_block)
from .symbols import LaurentPolynomial, PCSymbol, inverse, rotate, same_angle, tilde

NEAR_NULL = 1e-6
# "bounded below" heuristics for finite sections; see bounded_below
TREND_RATIO = 0.9
SIGMA_FLOOR = 1e-4


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""


@dataclass
class SuiteReport:
    name: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def add(self, name, value, tolerance, detail="", passed=None):
        ok = value <= tolerance if passed is None else passed
        self.checks.append(CheckResult(name, bool(ok), float(value), float(tolerance), detail))

    def to_dict(self) -> dict:
        return {"suite": self.name, "passed": self.passed,
                "checks": [{"name": c.name, "passed": c.passed, "value": c.value,
                            "tolerance": c.tolerance, "detail": c.detail} for c in self.checks]}


# -- operator identities ------------------------------------------------------

def random_laurent(rng: np.random.Generator, d: int, lo: int | None = None,
                   hi: int | None = None) -> LaurentPolynomial:
    lo = -d if lo is None else lo
    hi = d if hi is None else hi
    n = hi - lo + 1
    c = rng.normal(size=n) + 1j * rng.normal(size=n)
    return LaurentPolynomial.from_dense(lo, c)


def _interior_defect(lhs, rhs, keep):
    a, b = lhs[:keep, :keep], rhs[:keep, :keep]
    return float(np.max(np.abs(a - b))) / max(1.0, float(np.max(np.abs(a))))


def identity_defects(phi: LaurentPolynomial, psi: LaurentPolynomial, N: int, d: int) -> dict:
    """Interior defects of the product identities for one symbol pair."""
    keep = N - 2 * d
    if keep < 1:
        raise ValueError(f"section size {N} leaves no interior for bandwidth {d}")

    def T(a):
        return toeplitz_block(a, N, N)

    def H(a):
        return hankel_block(a, N, N)

    def M(a):
        return m_block(a, N, N)

    psit = psi.reflect()
    even = psi + psit
    minus = phi.part(hi=0)
    return {
        "T(ab)=T(a)T(b)+H(a)H(b~)": _interior_defect(T(phi * psi), T(phi) @ T(psi) + H(phi) @ H(psit), keep),
        "H(ab)=T(a)H(b)+H(a)T(b~)": _interior_defect(H(phi * psi), T(phi) @ H(psi) + H(phi) @ T(psit), keep),
        "M(ab)=M(a)M(b)+H(a)M(b~-b)": _interior_defect(M(phi * psi), M(phi) @ M(psi) + H(phi) @ M(psit - psi), keep),
        "M(ab)=M(a)M(b), b even": _interior_defect(M(phi * even), M(phi) @ M(even), keep),
        "M(ab)=M(a)M(b), a antianalytic": _interior_defect(M(minus * psi), M(minus) @ M(psi), keep),
    }


def identity_suite(d: int, trials: int, seed: int, N: int = 64, tol: float = 1e-12) -> SuiteReport:
    """Product identities for random Laurent polynomials of bandwidth <= d."""
    if d < 1 or trials < 1:
        raise ValueError("identity_suite needs d >= 1 and trials >= 1")
    rng = np.random.default_rng(seed)
    worst: dict = {}
    for _ in range(trials):
        phi, psi = random_laurent(rng, d), random_laurent(rng, d)
        for name, err in identity_defects(phi, psi, N, d).items():
            worst[name] = max(worst.get(name, 0.0), err)
    report = SuiteReport(f"identities d={d} trials={trials} seed={seed}")
    for name, err in worst.items():
        report.add(name, err, tol, f"worst interior defect over {trials} trials, N={N}")
    return report


# -- finite-section probes ------------------------------------------------------

def bounded_below(sigma: list) -> bool:
    """Heuristic: the last value is not collapsing and stays above a floor."""
    if len(sigma) < 2:
        raise ValueError("the trend needs at least two section sizes")
    return sigma[-1] >= TREND_RATIO * sigma[-2] and sigma[-1] > SIGMA_FLOOR


def _require_l2(sym: PCSymbol):
    if sym.p != 2.0:
        raise ProbeUnsupportedError(
            f"finite-section probes are defined on l^2 only (p=2), got p={sym.p:g}")


@dataclass(frozen=True)
class ProbeResult:
    symbol_id: str
    sizes: tuple
    sigma_min: tuple            # smallest singular value of the N x N section
    near_null_count: tuple      # singular values below 1e-6, N x N section
    kernel_count: tuple         # same for the 2N x N block (kernel side)
    cokernel_count: tuple       # same for the N x 2N block (adjoint side)
    expected: str
    verdict_consistent: bool


def sections_stable_expected(sym: PCSymbol) -> bool:
    """Finite sections of M(phi) are stable iff M(phi) and T(tilde phi) are invertible.

    The second operator is the strong limit of the sections flipped
    about their last index; the Hankel part drops out in that limit.
    """
    return analyze(sym).is_invertible and analyze_toeplitz(tilde(sym)).is_invertible


def finite_section_probe(sym: PCSymbol, sizes=(128, 256), symbol_id: str = "",
                         threshold: float = NEAR_NULL) -> ProbeResult:
    _require_l2(sym)
    sizes = tuple(int(n) for n in sizes)
    if len(sizes) < 2:
        raise ValueError("a probe needs at least two section sizes")
    sig, nn, ker, coker = [], [], [], []
    for N in sizes:
        s = np.linalg.svd(m_block(sym, N, N), compute_uv=False)
        sig.append(float(s[-1]))
        nn.append(int(np.sum(s < threshold)))
        ker.append(int(np.sum(np.linalg.svd(m_block(sym, 2 * N, N), compute_uv=False) < threshold)))
        coker.append(int(np.sum(np.linalg.svd(m_block(sym, N, 2 * N), compute_uv=False) < threshold)))

    report = analyze(sym)
    if not report.is_fredholm:
        expected = "not fredholm"
        ok = not bounded_below(sig)
    elif report.kappa == 0:
        stable = sections_stable_expected(sym)
        expected = "stable" if stable else "unstable (T(tilde phi) not invertible)"
        ok = bounded_below(sig) == stable
    else:
        k = report.kappa
        expected = f"kernel {max(0, -k)}, cokernel {max(0, k)}"
        ok = (ker[-2] == ker[-1] == max(0, -k)) and (coker[-2] == coker[-1] == max(0, k))
    return ProbeResult(symbol_id, sizes, tuple(sig), tuple(nn), tuple(ker), tuple(coker),
                       expected, bool(ok))


def equivalence_partner(sym: PCSymbol) -> PCSymbol:
    """psi(t) = 1 / phi(-1/t)."""
    return tilde(rotate(inverse(sym), math.pi))


@dataclass(frozen=True)
class EquivalenceResult:
    symbol_id: str
    sizes: tuple
    sigma_m: tuple
    sigma_phi: tuple
    sigma_psi: tuple
    verdicts: tuple             # bounded-below verdict for M, Phi, Psi
    consistent: bool


def _sigma_min(entries) -> float:
    return float(np.linalg.svd(entries, compute_uv=False)[-1])


def equivalence_probe(sym: PCSymbol, N: int = 128, symbol_id: str = "") -> EquivalenceResult:
    """Conditioning trends of M(phi), Phi(phi) and Psi(psi) at N and 2N."""
    _require_l2(sym)
    psi = equivalence_partner(sym)
    sizes = (int(N), 2 * int(N))
    sm = tuple(_sigma_min(m_block(sym, n, n)) for n in sizes)
    sp = tuple(_sigma_min(build_phi_section(sym, n).entries) for n in sizes)
    ss = tuple(_sigma_min(build_psi_section(psi, n).entries) for n in sizes)
    verdicts = (bounded_below(sm), bounded_below(sp), bounded_below(ss))
    return EquivalenceResult(symbol_id, sizes, sm, sp, ss, verdicts, len(set(verdicts)) == 1)


# -- formal inverse -------------------------------------------------------------

def _symbol_times_inverse_zero(sym, fact):
    """Singular-point exponents of phi / phi_0 times a polynomial vanishing at -1."""
    extra: dict = {}

    def bump(theta, e):
        key = next((k for k in extra if same_angle(k, theta)), theta)
        extra[key] = extra.get(key, 0.0) + e

    bump(math.pi, 1.0)
    for theta in sym.jump_locations:
        bump(theta, 0.0)
    for term in fact.zero_terms:
        bump(term.sigma, 0.0)
    return _local_exponents(fact.minus_terms, extra)


def formal_inverse_suite(sym: PCSymbol, trials: int = 20, seed: int = 0, n_trunc: int = 512,
                         bandwidth: int = 8, tol: float = 1e-7) -> SuiteReport:
    """P(phi B f) = P f and the J-symmetry of B f for random f = (1 - 1/t) f_1."""
    report = analyze(sym)
    if not report.is_fredholm:
        raise NotFredholmError("formal inverse needs a Fredholm symbol", boundary=True)
    if report.kappa != 0:
        raise ValueError(f"formal inverse needs kappa = 0, got {report.kappa}")
    fact = factor_pc(sym)
    exps = _symbol_times_inverse_zero(sym, fact)
    rng = np.random.default_rng(seed)
    worst_id = worst_j = 0.0
    for _ in range(trials):
        f1 = random_laurent(rng, bandwidth, -(bandwidth - 1), bandwidth)
        f = X1Element(f1)
        res = apply_formal_inverse(fact, f, n_trunc)
        q = res.symmetric_part

        inv_zero, _ = fact.zero_inverse_integrand(q)

        def integrand(b, o, inv_zero=inv_zero):
            return sym.evaluate_offset(b, o) * inv_zero(b, o)

        lhs = _singular_coefficients(integrand, exps, 0, n_trunc - 1)
        rhs = f.laurent().dense(0, n_trunc - 1)
        worst_id = max(worst_id, float(np.max(np.abs(lhs - rhs))) / max(1.0, float(np.max(np.abs(rhs)))))
        c = res.coefficients
        pos = c.values[n_trunc:]
        neg = c.values[:n_trunc][::-1]
        scale = max(1.0, float(np.max(np.abs(c.values))))
        worst_j = max(worst_j, float(np.max(np.abs(pos - neg))) / scale)
    out = SuiteReport(f"formal inverse trials={trials} seed={seed}")
    out.add("P(phi B f) = P f", worst_id, tol, f"degrees 0..{n_trunc - 1}")
    out.add("B f J-symmetric", worst_j, tol, f"window {-n_trunc}..{n_trunc - 1}")
    return out


# -- classical Toeplitz baseline -------------------------------------------------

def classical_toeplitz_invertible(sym: PCSymbol) -> bool:
    """T(phi) on H^p is invertible iff phi = exp(g) prod t_{beta_r'} with every
    Re beta_r' in (-1/q, 1/p): shift each exponent into that window and
    require the leftover power of t to vanish."""
    p, q = sym.p, sym.q
    winding = sym.smooth.winding
    for j in sym.jumps:
        x = j.beta.real
        if circle_distance(x, 1 / p) <= BOUNDARY_TOL:
            return False
        k = math.floor(-1 / q - x) + 1
        winding -= k
    return winding == 0


def toeplitz_baseline(cases, sizes=(128, 256)) -> SuiteReport:
    """Engine in Toeplitz mode vs the classical window (and T-sections at p=2)."""
    out = SuiteReport("toeplitz baseline")
    for i, sym in enumerate(cases):
        engine = analyze_toeplitz(sym).is_invertible
        classical = classical_toeplitz_invertible(sym)
        detail = f"engine={engine} window={classical}"
        agree = engine == classical
        if sym.p == 2.0:
            sig = [_sigma_min(toeplitz_block(sym, n, n)) for n in sizes]
            numeric = bounded_below(sig)
            detail += f" sections={numeric} sigma_min={sig[-1]:.3e}"
            agree = agree and numeric == classical
        out.add(f"case {i}", 0.0 if agree else 1.0, 0.0, detail, passed=agree)
    return out


# -- conditions vs Mellin sweeps --------------------------------------------------

@dataclass(frozen=True)
class SweepAgreement:
    symbol_id: str
    engine_fredholm: bool
    sweep_fredholm: bool
    min_modulus: dict            # location label -> smallest |b| (|det b| for pairs)

    @property
    def agree(self) -> bool:
        return self.engine_fredholm == self.sweep_fredholm


def sweep_cross_check(sym: PCSymbol, symbol_id: str = "", z_max: float = 12.0,
                      steps: int = 2048) -> SweepAgreement:
    """Fredholm verdict of the condition engine vs nonvanishing of the local symbols."""
    from .fredholm import check_conditions, pair_angles
    from .mellin import local_symbol, pair_tag, sweep_nonvanishing

    engine = all(c.passes for c in check_conditions(sym))
    mins = {}
    tags = [("+1", 1), ("-1", -1)] + [(f"pair@{th:.12g}", pair_tag(th)) for th in pair_angles(sym)]
    for label, tag in tags:
        mins[label] = sweep_nonvanishing(local_symbol(sym, tag), z_max, steps).min_modulus
    sweep = all(v > NEAR_NULL for v in mins.values())
    return SweepAgreement(symbol_id, engine, sweep, mins)
