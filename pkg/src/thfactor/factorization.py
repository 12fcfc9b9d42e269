"""Asymmetric and antisymmetric factorizations of piecewise continuous symbols.

An asymmetric factorization of phi in L^inf is

    phi(t) = phi_-(t) t^kappa phi_0(t),

with (1 + 1/t) phi_-(t) and its inverse-side companion in the closure of
polynomials in 1/t, phi_0 even (phi_0(t) = phi_0(1/t)), and the integral
conditions on phi_0 that make the formal inverse bounded on H^p.

For a symbol in Fredholm position with selected exponents beta_+, beta_-,
(beta_r^+, beta_r^-) the factors are explicit products of binomials

    phi_- = gamma e^{g_-} (1 - 1/t)^{-2 beta_+} (1 + 1/t)^{-2 beta_-}
            prod_r (1 - t_r/t)^{-s_r} (1 - 1/(t_r t))^{-s_r},
    phi_0 = e^{g_0} |1 - t|^{2 beta_+} |1 + t|^{2 beta_-}
            prod_r (1 - t/t_r)^{beta_r^+} (1 - 1/(t_r t))^{beta_r^+}
                   (1 - t t_r)^{beta_r^-} (1 - t_r/t)^{beta_r^-},

with s_r = beta_r^+ + beta_r^- and principal branches throughout.  The
exponential of the smooth log part g is split so that phi_- receives the
negative-degree part and phi_0 the even part.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import InternalConsistencyError, NotFredholmError
from .fredholm import analyze, select_parameters, _shifts
from .quadrature import fourier_coefficients
from .symbols import TWO_PI, LaurentPolynomial, PCSymbol, canonical_angle, same_angle

TERM_KINDS = ("minus", "plus", "abs")


@dataclass(frozen=True)
class FactorTerm:
    """A binomial power with a singularity at theta = sigma.

    kind "minus":  (1 - e^{i sigma} / t)^exponent
    kind "plus":   (1 - e^{-i sigma} t)^exponent
    kind "abs":    |1 - e^{-i sigma} t|^exponent
    """

    kind: str
    sigma: float
    exponent: complex

    def __post_init__(self):
        if self.kind not in TERM_KINDS:
            raise ValueError(f"unknown factor kind {self.kind!r}")
        object.__setattr__(self, "sigma", canonical_angle(self.sigma))
        object.__setattr__(self, "exponent", complex(self.exponent))

    def log_value(self, base, offset=0.0):
        """Principal logarithm of the term at theta = base + offset.

        With w = theta - sigma reduced to (-pi, pi],
        1 - e^{-iw} = 2 sin(w/2) e^{i(pi - w)/2}, which gives the
        principal branch without cancellation for small w.
        """
        base = np.asarray(base, dtype=float)
        d = np.mod(base - self.sigma + math.pi, TWO_PI) - math.pi
        w = d + offset
        w = np.where(w > math.pi, w - TWO_PI, w)
        w = np.where(w <= -math.pi, w + TWO_PI, w)
        mag = np.log(2.0 * np.abs(np.sin(0.5 * w)))
        if self.kind == "abs":
            return self.exponent * mag
        sgn = np.where(w >= 0, 1.0, -1.0)
        arg = 0.5 * (sgn * math.pi - w)
        if self.kind == "plus":
            arg = -arg
        return self.exponent * (mag + 1j * arg)

    def evaluate(self, theta):
        return np.exp(self.log_value(theta))

    def reflected(self) -> "FactorTerm":
        """The term t -> term(1/t)."""
        if self.kind == "abs":
            return FactorTerm("abs", -self.sigma, self.exponent)
        other = "plus" if self.kind == "minus" else "minus"
        return FactorTerm(other, -self.sigma, self.exponent)

    def series(self, n: int, sign: int = 1) -> np.ndarray:
        """Coefficients of (1 - a z)^{sign * exponent}, z = 1/t or t, degrees 0..n."""
        if self.kind == "abs":
            raise ValueError("|1 - a t|^e has no one-sided power series")
        a = cmath.exp(1j * self.sigma) if self.kind == "minus" else cmath.exp(-1j * self.sigma)
        g = sign * self.exponent
        out = np.empty(n + 1, dtype=complex)
        out[0] = 1.0
        for k in range(n):
            out[k + 1] = out[k] * (k - g) / (k + 1) * a
        return out

    def label(self) -> str:
        e = f"{self.exponent.real:.6g}" + (f"{self.exponent.imag:+.6g}i" if self.exponent.imag else "")
        s = f"{self.sigma:.6g}"
        if self.kind == "minus":
            return f"(1 - e^(i*{s})/t)^({e})"
        if self.kind == "plus":
            return f"(1 - e^(-i*{s})*t)^({e})"
        return f"|1 - e^(-i*{s})*t|^({e})"


def _power_series_exp(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Taylor coefficients 0..n of exp(sum_k coeffs[k] z^k)."""
    q = np.zeros(n + 1, dtype=complex)
    m = min(len(coeffs), n + 1)
    q[:m] = coeffs[:m]
    e = np.zeros(n + 1, dtype=complex)
    e[0] = cmath.exp(q[0])
    kq = np.arange(n + 1) * q
    for j in range(1, n + 1):
        e[j] = np.dot(kq[1:j + 1], e[j - 1::-1][:j]) / j
    return e


def _series_product(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    return np.convolve(a, b)[: n + 1]


def _log_sum(terms, base, offset):
    out = np.zeros(np.broadcast(np.asarray(base), np.asarray(offset)).shape, dtype=complex)
    for term in terms:
        out = out + term.log_value(base, offset)
    return out


def _local_exponents(terms, extra=None) -> dict:
    """sigma -> summed real exponent of the terms singular there."""
    out: dict = {}
    for term in terms:
        key = next((k for k in out if same_angle(k, term.sigma)), term.sigma)
        out[key] = out.get(key, 0.0) + term.exponent.real
    for sigma, e in (extra or {}).items():
        key = next((k for k in out if same_angle(k, sigma)), canonical_angle(sigma))
        out[key] = out.get(key, 0.0) + e
    return out


def _quadrature_setup(exponents: dict):
    points = sorted(exponents)
    decay = [max(exponents[s] + 1.0, 1e-3) for s in points]
    return points, decay


@dataclass(frozen=True)
class AsymmetricFactorization:
    """phi = phi_- t^kappa phi_0 with structured factors.

    phi_-  = gamma * exp(smooth_minus) * prod(minus_terms)
    phi_0  = exp(smooth_zero) * prod(zero_terms)
    """

    p: float
    kappa: int
    gamma: complex
    minus_terms: tuple
    zero_terms: tuple
    smooth_minus: LaurentPolynomial = field(default_factory=LaurentPolynomial)
    smooth_zero: LaurentPolynomial = field(default_factory=LaurentPolynomial)
    selection: object = field(default=None, compare=False)

    # -- pointwise values ------------------------------------------------------
    def minus_log(self, base, offset=0.0):
        theta = np.asarray(base, dtype=float) + offset
        return (cmath.log(self.gamma) + self.smooth_minus.evaluate(theta)
                + _log_sum(self.minus_terms, base, offset))

    def zero_log(self, base, offset=0.0):
        theta = np.asarray(base, dtype=float) + offset
        return self.smooth_zero.evaluate(theta) + _log_sum(self.zero_terms, base, offset)

    def minus(self, theta):
        return np.exp(self.minus_log(theta))

    def zero(self, theta):
        return np.exp(self.zero_log(theta))

    def product(self, theta):
        theta = np.asarray(theta, dtype=float)
        return np.exp(self.minus_log(theta) + self.zero_log(theta) + 1j * self.kappa * theta)

    def singular_points(self) -> tuple:
        pts = []
        for term in self.minus_terms + self.zero_terms:
            if not any(same_angle(term.sigma, s) for s in pts):
                pts.append(term.sigma)
        return tuple(sorted(pts))

    # -- coefficients ----------------------------------------------------------
    def _minus_series(self, n: int, sign: int) -> np.ndarray:
        # smooth_minus has degrees <= 0: a power series in z = 1/t
        s = np.array([self.smooth_minus.coefficient(-k) for k in range(-self.smooth_minus.n_min + 1)])
        out = _power_series_exp(sign * s, n) * self.gamma ** sign
        for term in self.minus_terms:
            out = _series_product(out, term.series(n, sign), n)
        return out

    def minus_coeffs(self, n: int) -> np.ndarray:
        """Coefficients of phi_- at degrees 0, -1, ..., -n (entry k is degree -k)."""
        return self._minus_series(n, +1)

    def minus_inverse_coeffs(self, n: int) -> np.ndarray:
        """Coefficients of 1/phi_- at degrees 0, -1, ..., -n (entry k is degree -k)."""
        return self._minus_series(n, -1)

    def zero_inverse_integrand(self, q: LaurentPolynomial):
        """(func(base, offset), exponents) for q / phi_0.

        A zero of q at t = -1 is divided out and carried as the exact
        factor (1 + 1/t), since 1/phi_0 may be non-integrable there.
        """
        r, k = peel_minus_one(q)
        terms = [replace(t, exponent=-t.exponent) for t in self.zero_terms]
        if k:
            terms.append(FactorTerm("minus", math.pi, 1.0))
        factor = terms[-1] if k else None

        def func(b, o):
            log = -self.zero_log(b, o)
            if factor is not None:
                log = log + factor.log_value(b, o)
            return np.exp(log) * r.evaluate(np.asarray(b) + o)

        return func, _local_exponents(terms)

    def zero_inverse_times(self, q: LaurentPolynomial, n_min: int, n_max: int) -> np.ndarray:
        """Fourier coefficients of q / phi_0 on degrees n_min..n_max."""
        func, exps = self.zero_inverse_integrand(q)
        return _singular_coefficients(func, exps, n_min, n_max)

    def rescaled(self, c: complex) -> "AsymmetricFactorization":
        """(c phi_-, phi_0 / c): the same product."""
        c = complex(c)
        return replace(self, gamma=self.gamma * c,
                       smooth_zero=self.smooth_zero + LaurentPolynomial({0: -cmath.log(c)}))


def peel_minus_one(q: LaurentPolynomial, rtol: float = 1e-12):
    """(r, k) with q = (1 + 1/t)^k r, k = 1 when q vanishes at t = -1, else k = 0."""
    if not q.items:
        return q, 0
    lo = q.n_min
    dense = q.dense(lo, q.n_max)
    # t q(t) / (t + 1) = t^(lo + 1) * (dense polynomial / (1 + t))
    quot, rem = P.polydiv(dense, np.array([1.0, 1.0]))
    if abs(rem[0]) > rtol * float(np.sum(np.abs(dense))):
        return q, 0
    return LaurentPolynomial.from_dense(lo + 1, np.atleast_1d(quot)), 1


def _singular_coefficients(func, exponents: dict, n_min: int, n_max: int, tol=1e-10):
    if not exponents:
        return fourier_coefficients(lambda th: func(th, 0.0), n_min, n_max, tol=tol)
    points, decay = _quadrature_setup(exponents)
    return fourier_coefficients(func, n_min, n_max, breakpoints=points, singular=True,
                                decay=decay, tol=tol)


def _split_smooth(g: LaurentPolynomial):
    """g = g_0 + g_- + g_+  ->  (g_0 + g_- - reflect(g_+), g_+ + reflect(g_+))."""
    gp = g.part(lo=1)
    return g.part(hi=0) - gp.reflect(), gp + gp.reflect()


def factor_pc(sym: PCSymbol, pair_shift: int = 0) -> AsymmetricFactorization:
    """Explicit asymmetric factorization of a symbol for which M(phi) is Fredholm.

    ``pair_shift`` selects an alternative split of the pair exponents; the
    result differs from the default one by a constant factor.
    """
    report = analyze(sym)
    if not report.is_fredholm:
        bad = ", ".join(c.location for c in report.conditions if not c.passes)
        raise NotFredholmError(f"M(phi) is not Fredholm on H^{sym.p:g} (fails at {bad})",
                               boundary=True)
    sel = select_parameters(sym, pair_shift=pair_shift)
    factors = sel.factors()
    shifts = _shifts(sym, factors)
    kappa = sym.smooth.winding + sum(shifts.values())
    if pair_shift == 0 and kappa != report.kappa:
        raise InternalConsistencyError("exponent bookkeeping disagrees with the winding number")

    # t_{beta + k} = t_beta t^k e^{-ik(theta_r + pi)} at every shifted location
    log_gamma = sum(-1j * k * (theta + math.pi) for theta, k in shifts.items())
    smooth_minus, smooth_zero = _split_smooth(sym.smooth.log_part)

    minus_terms, zero_terms = [], []
    bp, bm = sel.beta_plus, sel.beta_minus
    if bp != 0:
        minus_terms.append(FactorTerm("minus", 0.0, -2 * bp))
        zero_terms.append(FactorTerm("abs", 0.0, 2 * bp))
    if bm != 0:
        minus_terms.append(FactorTerm("minus", math.pi, -2 * bm))
        zero_terms.append(FactorTerm("abs", math.pi, 2 * bm))
    for theta, b1, b2 in sel.pairs:
        s = b1 + b2
        if s != 0:
            minus_terms.append(FactorTerm("minus", theta, -s))
            minus_terms.append(FactorTerm("minus", -theta, -s))
        if b1 != 0:
            zero_terms.append(FactorTerm("plus", theta, b1))
            zero_terms.append(FactorTerm("minus", -theta, b1))
        if b2 != 0:
            zero_terms.append(FactorTerm("plus", -theta, b2))
            zero_terms.append(FactorTerm("minus", theta, b2))
    return AsymmetricFactorization(sym.p, kappa, cmath.exp(log_gamma), tuple(minus_terms),
                                   tuple(zero_terms), smooth_minus, smooth_zero, sel)


# -- validation -----------------------------------------------------------------

@dataclass(frozen=True)
class FactorizationReport:
    residual: float
    evenness_defect: float
    minus_support_defect: float
    minus_inverse_support_defect: float
    truncation: int

    def ok(self, tol: float = 1e-8) -> bool:
        return max(self.residual, self.evenness_defect, self.minus_support_defect,
                   self.minus_inverse_support_defect) <= tol


def _validation_grid(grid: int, avoid, delta: float = 1e-6) -> np.ndarray:
    theta = TWO_PI * (np.arange(grid) + 0.5) / grid
    keep = np.ones(grid, dtype=bool)
    for s in avoid:
        keep &= np.abs(np.mod(theta - s + math.pi, TWO_PI) - math.pi) > delta
    return theta[keep]


def _support_defect(log_func, exponents: dict, truncation: int, weight_at: float) -> float:
    """Largest positive-degree coefficient of (1 - e^{i weight_at}/t) f relative to the rest."""
    weight = FactorTerm("minus", weight_at, 1.0)
    exps_w = _local_exponents([weight], exponents)
    c = _singular_coefficients(lambda b, o: np.exp(log_func(b, o) + weight.log_value(b, o)),
                               exps_w, -truncation, truncation)
    scale = max(1.0, float(np.max(np.abs(c))))
    return float(np.max(np.abs(c[truncation + 1:]))) / scale


def validate_factorization(fact: AsymmetricFactorization, sym: PCSymbol, grid: int = 1024,
                           truncation: int = 512) -> FactorizationReport:
    """Residual, evenness and one-sidedness defects; reports, does not judge."""
    theta = _validation_grid(grid, tuple(sym.jump_locations) + fact.singular_points())
    phi = sym.evaluate(theta)
    prod = fact.product(theta)
    residual = float(np.max(np.abs(phi - prod)))
    z = fact.zero(theta)
    zr = fact.zero(np.mod(-theta, TWO_PI))
    evenness = float(np.max(np.abs(z - zr) / np.maximum(1.0, np.abs(z))))
    mexp = _local_exponents(fact.minus_terms)
    # (1 + 1/t) phi_- and (1 - 1/t) / phi_- are the integrable one-sided functions
    minus_def = _support_defect(fact.minus_log, mexp, truncation, math.pi)
    inv_def = _support_defect(lambda b, o: -fact.minus_log(b, o),
                              {k: -v for k, v in mexp.items()}, truncation, 0.0)
    return FactorizationReport(residual, evenness, minus_def, inv_def, truncation)


# -- antisymmetric factorization and reconstruction -----------------------------

@dataclass(frozen=True)
class AntisymmetricFactorization:
    """F(t) = phi_-(t) t^{2 kappa} / phi_-(1/t)."""

    minus: AsymmetricFactorization
    kappa: int

    def evaluate(self, theta):
        theta = np.asarray(theta, dtype=float)
        return np.exp(self.minus.minus_log(theta) - self.minus.minus_log(np.mod(-theta, TWO_PI))
                      + 2j * self.kappa * theta)


def antisymmetric_from_asymmetric(fact: AsymmetricFactorization, sym: PCSymbol | None = None,
                                  grid: int = 1024, tol: float = 1e-10) -> AntisymmetricFactorization:
    """phi tilde(phi)^{-1} = phi_- t^{2 kappa} tilde(phi_-)^{-1}, since phi_0 is even.

    When ``sym`` is given the identity is checked on a grid.
    """
    anti = AntisymmetricFactorization(fact, fact.kappa)
    if sym is not None:
        theta = _validation_grid(grid, tuple(sym.jump_locations) + fact.singular_points()
                                 + tuple(canonical_angle(-s) for s in sym.jump_locations))
        target = sym.evaluate(theta) / sym.evaluate(np.mod(-theta, TWO_PI))
        got = anti.evaluate(theta)
        err = float(np.max(np.abs(got - target) / np.maximum(1.0, np.abs(target))))
        if err > tol:
            raise InternalConsistencyError(f"antisymmetric factorization deviates by {err:.3e}")
    return anti


@dataclass(frozen=True)
class ReconstructedFactorization:
    """phi_0 := t^{-kappa} phi_-^{-1} phi, recovered from an antisymmetric factorization."""

    minus: AsymmetricFactorization
    kappa: int
    symbol: PCSymbol

    def zero(self, theta):
        theta = np.asarray(theta, dtype=float)
        return (np.exp(-self.minus.minus_log(theta) - 1j * self.kappa * theta)
                * self.symbol.evaluate(theta))

    def product(self, theta):
        theta = np.asarray(theta, dtype=float)
        return self.minus.minus(theta) * np.exp(1j * self.kappa * theta) * self.zero(theta)

    def evenness_defect(self, grid: int = 1024) -> float:
        avoid = tuple(self.symbol.jump_locations) + self.minus.singular_points()
        avoid = avoid + tuple(canonical_angle(-s) for s in avoid)
        theta = _validation_grid(grid, avoid)
        z = self.zero(theta)
        zr = self.zero(np.mod(-theta, TWO_PI))
        return float(np.max(np.abs(z - zr) / np.maximum(1.0, np.abs(z))))


def asymmetric_from_antisymmetric(anti: AntisymmetricFactorization,
                                  sym: PCSymbol) -> ReconstructedFactorization:
    return ReconstructedFactorization(anti.minus, anti.kappa, sym)


# -- uniqueness -----------------------------------------------------------------

@dataclass(frozen=True)
class UniquenessResult:
    same_kappa: bool
    gamma: complex
    defect: float


def uniqueness_check(f1: AsymmetricFactorization, f2: AsymmetricFactorization,
                     grid: int = 1024, exclusion: float = 1e-3) -> UniquenessResult:
    """Estimate gamma with phi_-^(2) = gamma phi_-^(1) and phi_0^(2) = phi_0^(1)/gamma.

    gamma is the median of the pointwise ratio on the grid, away from the
    singular points of either factorization; the defect is the largest
    relative deviation of either ratio from gamma (resp. 1/gamma).
    """
    avoid = f1.singular_points() + f2.singular_points()
    theta = _validation_grid(grid, avoid, delta=exclusion)
    rm = np.exp(f2.minus_log(theta) - f1.minus_log(theta))
    r0 = np.exp(f2.zero_log(theta) - f1.zero_log(theta))
    gamma = complex(np.median(rm.real) + 1j * np.median(rm.imag))
    defect = max(float(np.max(np.abs(rm - gamma))) / max(1.0, abs(gamma)),
                 float(np.max(np.abs(r0 * gamma - 1))))
    return UniquenessResult(f1.kappa == f2.kappa, gamma, defect)
