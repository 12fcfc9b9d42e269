"""Local Mellin symbols of M(phi) at the points tau = 1, tau = -1 and at
conjugate pairs {tau, conj(tau)}, Im tau > 0.

The half-line operators S and N enter only through their Mellin symbols

    s(z) = coth((z + i/p) pi),    n(z) = 1 / sinh((z + i/p) pi),

and the local symbols b_tau are assembled from the one-sided limits of phi.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import InternalConsistencyError
from .symbols import PCSymbol, canonical_angle, one_sided_limits

SWEEP_THRESHOLD = 1e-6


def s_and_n(z, p):
    """(coth((z + i/p) pi), 1/sinh((z + i/p) pi)); z may be an array."""
    if not 1.0 < p < math.inf:
        raise ValueError("Hardy exponent must satisfy 1 < p < inf")
    w = (np.asarray(z, dtype=float) + 1j / p) * math.pi
    # the imaginary part pi/p lies in (0, pi): no poles on the real line
    return np.cosh(w) / np.sinh(w), 1.0 / np.sinh(w)


@dataclass(frozen=True)
class LocalSymbol:
    """b_tau for tau in {1, -1} (scalar) or a pair {tau, conj tau} (2x2).

    ``limits`` is (phi_+(tau), phi_-(tau)) for the scalar case and
    (phi_+(tau), phi_-(tau), phi_+(conj tau), phi_-(conj tau)) for pairs.
    """

    tau: complex
    p: float
    limits: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "tau", complex(self.tau))
        object.__setattr__(self, "limits", tuple(complex(v) for v in self.limits))
        expected = 4 if self.is_pair else 2
        if len(self.limits) != expected:
            raise ValueError(f"local symbol at tau={self.tau} needs {expected} limit values")

    @property
    def is_pair(self) -> bool:
        return self.tau.imag > 0

    def value(self, z):
        """b_tau(z): shape z.shape for scalars, z.shape + (2, 2) for pairs."""
        s, n = s_and_n(z, self.p)
        if not self.is_pair:
            fp, fm = self.limits
            tau = self.tau.real
            return (1 + s + tau * n) * fp + (1 - s - tau * n) * fm
        fp, fm, gp, gm = self.limits
        out = np.empty(np.shape(s) + (2, 2), dtype=complex)
        out[..., 0, 0] = (1 + s) * fp + (1 - s) * gm
        out[..., 0, 1] = n * (gp - fm)
        out[..., 1, 0] = n * (fp - gm)
        out[..., 1, 1] = (1 - s) * fm + (1 + s) * gp
        return out

    def at_infinity(self, sign: int):
        """b_tau(+inf) or b_tau(-inf) from s(+-inf) = +-1, n(+-inf) = 0."""
        if not self.is_pair:
            fp, fm = self.limits
            return 2 * fp if sign > 0 else 2 * fm
        fp, fm, gp, gm = self.limits
        if sign > 0:
            return np.array([[2 * fp, 0], [0, 2 * gp]], dtype=complex)
        return np.array([[2 * gm, 0], [0, 2 * fm]], dtype=complex)


def _tau_from_tag(tau_tag) -> complex:
    tau = complex(tau_tag)
    if abs(abs(tau) - 1.0) > 1e-12:
        raise ValueError(f"tau={tau_tag!r} is not on the unit circle")
    if abs(tau - 1) < 1e-12:
        return 1 + 0j
    if abs(tau + 1) < 1e-12:
        return -1 + 0j
    if tau.imag <= 0:
        raise ValueError("pair points are tagged by their member with Im tau > 0")
    return tau


def pair_tag(theta: float) -> complex:
    """The tag e^{i theta} of the pair {e^{i theta}, e^{-i theta}}, 0 < theta < pi."""
    if not 0 < theta < math.pi:
        raise ValueError("pair angle must lie in (0, pi)")
    return cmath.exp(1j * theta)


def local_symbol(sym: PCSymbol, tau_tag) -> LocalSymbol:
    tau = _tau_from_tag(tau_tag)
    theta = canonical_angle(cmath.phase(tau))
    if tau.imag == 0:
        return LocalSymbol(tau, sym.p, one_sided_limits(sym, theta))
    fp, fm = one_sided_limits(sym, theta)
    gp, gm = one_sided_limits(sym, -theta)
    return LocalSymbol(tau, sym.p, (fp, fm, gp, gm))


def det_local_symbol(ls: LocalSymbol, z):
    """Closed-form determinant 2(1+s) phi_+ phi_+' + 2(1-s) phi_- phi_-'.

    Cross-checked against the determinant of the assembled 2x2 matrix.
    """
    if not ls.is_pair:
        raise ValueError("determinant is defined for pair-type local symbols")
    s, _ = s_and_n(z, ls.p)
    fp, fm, gp, gm = ls.limits
    closed = 2 * (1 + s) * fp * gp + 2 * (1 - s) * fm * gm
    direct = np.linalg.det(ls.value(z))
    scale = max(1.0, max(abs(v) for v in ls.limits) ** 2) * (1 + np.max(np.abs(s))) ** 2
    err = np.max(np.abs(closed - direct))
    if err > 1e-12 * scale:
        raise InternalConsistencyError(
            f"closed-form determinant deviates from the direct one by {err:.3e}")
    return closed


def _scalar_modulus(ls: LocalSymbol, z):
    if ls.is_pair:
        s, _ = s_and_n(z, ls.p)
        fp, fm, gp, gm = ls.limits
        return 2 * (1 + s) * fp * gp + 2 * (1 - s) * fm * gm
    return ls.value(z)


@dataclass(frozen=True)
class SweepReport:
    tau: complex
    z: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)   # b_tau (scalar) or det b_tau (pair)
    plus_inf: complex = 0j
    minus_inf: complex = 0j
    min_modulus: float = 0.0
    z_at_min: float = 0.0
    threshold: float = SWEEP_THRESHOLD

    @property
    def nonvanishing(self) -> bool:
        return self.min_modulus > self.threshold


def sweep_nonvanishing(ls: LocalSymbol, z_max: float = 12.0, steps: int = 2048,
                       threshold: float = SWEEP_THRESHOLD) -> SweepReport:
    """Minimum of |b_tau| (|det b_tau| for pairs) over the real line and +-inf.

    The grid minimum is polished by bounded Brent minimization of |b|^2
    around the smallest grid minima, so that isolated real roots are found
    to roundoff rather than to the grid spacing.
    """
    if steps < 64:
        raise ValueError("a sweep needs at least 64 steps")
    z = np.linspace(-z_max, z_max, steps)
    vals = _scalar_modulus(ls, z)
    mod = np.abs(vals)
    if ls.is_pair:
        plus_inf = complex(np.linalg.det(ls.at_infinity(+1)))
        minus_inf = complex(np.linalg.det(ls.at_infinity(-1)))
    else:
        plus_inf = complex(ls.at_infinity(+1))
        minus_inf = complex(ls.at_infinity(-1))

    best_mod, best_z = float(mod.min()), float(z[np.argmin(mod)])
    interior = np.flatnonzero((mod[1:-1] <= mod[:-2]) & (mod[1:-1] <= mod[2:])) + 1
    candidates = sorted(interior, key=lambda i: mod[i])[:3]

    def f(x):
        return float(np.abs(_scalar_modulus(ls, np.array([x]))[0]) ** 2)

    for i in candidates:
        lo, hi = z[max(i - 1, 0)], z[min(i + 1, steps - 1)]
        res = minimize_scalar(f, bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-14, "maxiter": 500})
        val = math.sqrt(max(res.fun, 0.0))
        if val < best_mod or (val == best_mod and res.x < best_z):
            best_mod, best_z = val, float(res.x)
    for zinf, v in ((math.inf, plus_inf), (-math.inf, minus_inf)):
        if abs(v) < best_mod:
            best_mod, best_z = abs(v), zinf
    return SweepReport(ls.tau, z, vals, plus_inf, minus_inf, best_mod, best_z, threshold)
