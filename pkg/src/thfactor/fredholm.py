"""Fredholm conditions, parameter selection and index of M(phi) on H^p.

For a piecewise continuous symbol the operator M(phi) = T(phi) + H(phi) is
Fredholm exactly when, with q the dual exponent,

* at tau = 1:   arg(phi_-/phi_+) / (2 pi) avoids 1/(2p) + Z,
* at tau = -1:  arg(phi_-/phi_+) / (2 pi) avoids 1/2 + 1/(2p) + Z,
* at each pair {tau, conj tau}, Im tau > 0: the sum of the normalized
  arguments at tau and conj tau avoids 1/p + Z.

The normalized arguments are read off from the declared jump exponents,
for which arg(phi_-/phi_+) / (2 pi) = Re(beta) mod 1 holds exactly.

In the Fredholm case the exponents are moved by integers into the windows

    beta_+   in (-1/2 - 1/(2q), 1/(2p)),
    beta_-   in (-1/(2q), 1/2 + 1/(2p)),
    beta_r^+ + beta_r^- in (-1/q, 1/p),

and kappa is the winding number of the continuous quotient b of phi by the
product of jump factors with the selected exponents.  Then the index of
M(phi) is -kappa and M(phi) is invertible iff kappa = 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import InternalConsistencyError, NotFredholmError, NumericFailure
from .symbols import (TWO_PI, JumpFactor, PCSymbol, SmoothPart, canonical_angle,
                      inverse, jump_ratio, multiply, same_angle)

# User exponents are floats; a normalized argument this close to a forbidden
# class is treated as lying on it.
BOUNDARY_TOL = 1e-9
WINDING_EXCLUSION = 1e-6
MAX_WINDING_GRID = 1 << 20


def principal_fraction(x: float) -> float:
    """Representative of x mod 1 in (-1/2, 1/2]."""
    r = x - math.floor(x + 0.5)
    return 0.5 if r == -0.5 else r


def circle_distance(x: float, c: float) -> float:
    """Distance between x and c on R/Z."""
    d = (x - c) % 1.0
    return min(d, 1.0 - d)


@dataclass(frozen=True)
class ConditionEvaluation:
    location: str                # "+1", "-1" or "pair@<theta>"
    theta: float
    ratio: complex               # phi_-/phi_+ (product over the pair for pairs)
    normalized_arg: float        # in (-1/2, 1/2]
    forbidden: float             # forbidden class in (-1/2, 1/2]
    distance: float
    passes: bool


@dataclass(frozen=True)
class ParameterSelection:
    """Selected jump exponents; ``pairs`` holds (theta_r, beta_r^+, beta_r^-)."""

    p: float
    beta_plus: complex
    beta_minus: complex
    pairs: tuple = ()

    def factors(self) -> tuple:
        """(location, exponent) for every selected jump factor."""
        out = [(0.0, self.beta_plus), (math.pi, self.beta_minus)]
        for theta, bp, bm in self.pairs:
            out.append((theta, bp))
            out.append((canonical_angle(-theta), bm))
        return tuple(out)

    def jump_symbol(self) -> PCSymbol:
        """prod t_beta(e^{i(theta - theta_r)}) over the selected parameters."""
        return PCSymbol(self.p, SmoothPart(),
                        tuple(JumpFactor(th, b) for th, b in self.factors() if b != 0))


@dataclass(frozen=True)
class FredholmReport:
    operator: str                # "M" or "T"
    conditions: tuple
    is_fredholm: bool
    selection: object = None
    shifts: dict = field(default_factory=dict)  # location -> declared - selected
    kappa: int | None = None

    @property
    def boundary(self) -> bool:
        return not self.is_fredholm

    @property
    def index(self):
        return None if self.kappa is None else -self.kappa

    @property
    def dim_kernel(self):
        return None if self.kappa is None else max(0, -self.kappa)

    @property
    def dim_cokernel(self):
        return None if self.kappa is None else max(0, self.kappa)

    @property
    def is_invertible(self) -> bool:
        return self.is_fredholm and self.kappa == 0


def _declared_beta(sym: PCSymbol, theta: float) -> complex:
    j = sym.jump_at(theta)
    return 0j if j is None else j.beta


def pair_angles(sym: PCSymbol) -> tuple:
    """Angles theta in (0, pi) such that phi jumps at e^{i theta} or e^{-i theta}."""
    out = []
    for th in sym.jump_locations:
        if same_angle(th, 0.0) or same_angle(th, math.pi):
            continue
        a = th if th < math.pi else canonical_angle(-th)
        if not any(same_angle(a, b) for b in out):
            out.append(a)
    return tuple(sorted(out))


def _evaluate(location, theta, x, forbidden, ratio):
    na = principal_fraction(x)
    fb = principal_fraction(forbidden)
    dist = circle_distance(x, forbidden)
    return ConditionEvaluation(location, theta, ratio, na, fb, dist, dist > BOUNDARY_TOL)


def _check_ratio(sym, theta, x):
    """The reported ratio must agree with the declared exponent mod 1."""
    ratio = jump_ratio(sym, theta)
    if abs(ratio) > 0 and abs(ratio - cmath.exp(2j * math.pi * x) * abs(ratio)) > 1e-9 * abs(ratio):
        raise InternalConsistencyError(f"jump ratio at {theta} disagrees with its exponent")
    return ratio


def check_conditions(sym: PCSymbol) -> tuple:
    """Evaluate the three families of Fredholm conditions for M(phi)."""
    p = sym.p
    out = []
    for label, theta, forbidden in (("+1", 0.0, 1 / (2 * p)), ("-1", math.pi, 0.5 + 1 / (2 * p))):
        x = _declared_beta(sym, theta).real
        out.append(_evaluate(label, theta, x, forbidden, _check_ratio(sym, theta, x)))
    for theta in pair_angles(sym):
        xa = _declared_beta(sym, theta).real
        xb = _declared_beta(sym, -theta).real
        ratio = _check_ratio(sym, theta, xa) * _check_ratio(sym, -theta, xb)
        out.append(_evaluate(f"pair@{theta:.12g}", theta, xa + xb, 1 / p, ratio))
    return tuple(out)


def _into_window(beta: complex, lo: float, where: str) -> complex:
    """beta + k with Re in (lo, lo + 1); refuses the window boundary."""
    x = beta.real - lo
    frac = x - math.floor(x)
    if frac <= BOUNDARY_TOL or frac >= 1 - BOUNDARY_TOL:
        raise NotFredholmError(f"exponent {beta} at {where} lies on the window boundary",
                               boundary=True)
    return beta - math.floor(x)


def select_parameters(sym: PCSymbol, pair_shift: int = 0) -> ParameterSelection:
    """Integer-shift the declared exponents into the canonical windows.

    ``pair_shift`` moves an integer from beta_r^- to beta_r^+ at every pair;
    it yields another valid factorization of the same symbol and is used to
    exercise uniqueness up to constants.
    """
    p, q = sym.p, sym.q
    beta_plus = _into_window(_declared_beta(sym, 0.0), -0.5 - 1 / (2 * q), "tau=1")
    beta_minus = _into_window(_declared_beta(sym, math.pi), -1 / (2 * q), "tau=-1")
    pairs = []
    for theta in pair_angles(sym):
        ba = _declared_beta(sym, theta)
        bp = ba - math.floor(ba.real + 0.5)
        if bp.real == -0.5:
            bp += 1
        bm_decl = _declared_beta(sym, -theta)
        total = _into_window(bp + bm_decl, -1 / q, f"pair at theta={theta}")
        bm = total - bp
        pairs.append((theta, bp + pair_shift, bm - pair_shift))
    sel = ParameterSelection(p, beta_plus, beta_minus, tuple(pairs))
    _assert_windows(sel, q)
    return sel


def _assert_windows(sel: ParameterSelection, q: float):
    p = sel.p
    ok = (-0.5 - 1 / (2 * q) < sel.beta_plus.real < 1 / (2 * p)
          and -1 / (2 * q) < sel.beta_minus.real < 0.5 + 1 / (2 * p)
          and all(-1 / q < (bp + bm).real < 1 / p for _, bp, bm in sel.pairs))
    if not ok:
        raise InternalConsistencyError(f"selected parameters {sel} leave their windows")


def winding_number(func, exclude=(), grid: int = 1024, delta: float = WINDING_EXCLUSION) -> int:
    """Winding number of a continuous nonvanishing function about 0.

    ``func`` maps angles to values.  Points in ``exclude`` (where a
    structured representation of ``func`` is singular, though the function
    itself is continuous) are stepped over at distance ``delta``.  The grid
    is doubled until every phase increment is below pi/2.
    """
    exclude = [canonical_angle(e) for e in exclude]
    n = max(int(grid), 16)
    while n <= MAX_WINDING_GRID:
        theta = TWO_PI * (np.arange(n) + 0.5) / n
        if exclude:
            keep = np.ones(n, dtype=bool)
            for e in exclude:
                d = np.abs(np.mod(theta - e + math.pi, TWO_PI) - math.pi)
                keep &= d > delta
            extra = np.array([np.mod(e + s * delta, TWO_PI) for e in exclude for s in (-1, 1)])
            theta = np.sort(np.concatenate([theta[keep], extra]))
        values = np.asarray(func(theta), dtype=complex)
        if not np.all(np.isfinite(values)) or np.min(np.abs(values)) == 0:
            raise NumericFailure("function vanishes or is not finite on the winding grid")
        total, biggest = kernels.phase_walk(values)
        if biggest < math.pi / 2:
            w = total / TWO_PI
            k = round(w)
            if abs(w - k) > 0.1:
                raise NumericFailure(f"phase total {w} is not close to an integer")
            return int(k)
        n *= 2
    raise NumericFailure("winding number grid did not resolve the phase")


def _shifts(sym: PCSymbol, factors) -> dict:
    out = {}
    for theta, beta in factors:
        k = _declared_beta(sym, theta) - beta
        if abs(k.imag) > 1e-12 or abs(k.real - round(k.real)) > 1e-9:
            raise InternalConsistencyError(f"non-integer exponent shift {k} at {theta}")
        if round(k.real) != 0:
            out[theta] = int(round(k.real))
    return out


def _kappa(sym: PCSymbol, jump_sym: PCSymbol, shifts: dict, grid: int) -> int:
    b = multiply(sym, inverse(jump_sym))
    numeric = winding_number(b.evaluate, exclude=b.jump_locations, grid=grid)
    structural = sym.smooth.winding + sum(shifts.values())
    if numeric != structural:
        raise InternalConsistencyError(
            f"winding of the continuous part is {numeric}, exponent bookkeeping gives {structural}")
    return numeric


def analyze(sym: PCSymbol, grid: int = 1024) -> FredholmReport:
    """Fredholm property, kappa, index and invertibility of M(phi) on H^p."""
    conds = check_conditions(sym)
    if not all(c.passes for c in conds):
        return FredholmReport("M", conds, False)
    sel = select_parameters(sym)
    factors = sel.factors()
    shifts = _shifts(sym, factors)
    kappa = _kappa(sym, sel.jump_symbol(), shifts, grid)
    return FredholmReport("M", conds, True, sel, shifts, kappa)


# -- Toeplitz baseline ------------------------------------------------------------

@dataclass(frozen=True)
class ToeplitzSelection:
    p: float
    betas: tuple  # (theta_r, beta_r) with Re beta_r in (-1/q, 1/p)

    def jump_symbol(self) -> PCSymbol:
        return PCSymbol(self.p, SmoothPart(),
                        tuple(JumpFactor(th, b) for th, b in self.betas if b != 0))


def check_toeplitz_conditions(sym: PCSymbol) -> tuple:
    """T(phi) on H^p: at every jump Re(beta) must avoid 1/p + Z."""
    out = []
    for j in sym.jumps:
        x = j.beta.real
        out.append(_evaluate(f"jump@{j.theta:.12g}", j.theta, x, 1 / sym.p,
                             _check_ratio(sym, j.theta, x)))
    return tuple(out)


def analyze_toeplitz(sym: PCSymbol, grid: int = 1024) -> FredholmReport:
    """Fredholm property and index of the Toeplitz operator T(phi) on H^p."""
    conds = check_toeplitz_conditions(sym)
    if not all(c.passes for c in conds):
        return FredholmReport("T", conds, False)
    betas = tuple((j.theta, _into_window(j.beta, -1 / sym.q, f"jump at {j.theta}"))
                  for j in sym.jumps)
    sel = ToeplitzSelection(sym.p, betas)
    shifts = _shifts(sym, betas)
    kappa = _kappa(sym, sel.jump_symbol(), shifts, grid)
    return FredholmReport("T", conds, True, sel, shifts, kappa)
