"""Piecewise continuous symbols on the unit circle.

A symbol is stored in structured form

    phi(e^{i theta}) = t^m exp(g(t)) * prod_r t_{beta_r}(e^{i(theta - theta_r)})

with ``g`` a Laurent polynomial and the canonical jump factor

    t_beta(e^{i theta}) = exp(i beta (theta - pi)),   0 < theta < 2 pi.

The exponential form of the smooth part makes the symbol nonvanishing by
construction and its winding number exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from .errors import OnJumpError
from .quadrature import fourier_coefficients

TWO_PI = 2.0 * math.pi
# Jump locations closer than this are the same point (reflection and
# rotation of user angles round differently in the last ulp).
ANGLE_TOL = 1e-12


def canonical_angle(theta: float) -> float:
    """Reduce an angle to [0, 2 pi)."""
    t = math.fmod(float(theta), TWO_PI)
    if t < 0:
        t += TWO_PI
    if t >= TWO_PI - ANGLE_TOL or t < ANGLE_TOL:
        return 0.0
    return t


def same_angle(a: float, b: float) -> bool:
    d = abs(canonical_angle(a) - canonical_angle(b))
    return min(d, TWO_PI - d) <= ANGLE_TOL


class LaurentPolynomial:
    """Finite Laurent series sum_n c_n t^n with integer degrees."""

    __slots__ = ("_items",)

    def __init__(self, coeffs: Mapping[int, complex] | Iterable | None = None):
        if coeffs is None:
            coeffs = {}
        if not isinstance(coeffs, Mapping):
            coeffs = dict(coeffs)
        items = []
        for n, c in coeffs.items():
            if int(n) != n:
                raise ValueError(f"degree {n!r} is not an integer")
            c = complex(c)
            if c != 0:
                items.append((int(n), c))
        items.sort()
        self._items = tuple(items)

    @classmethod
    def monomial(cls, n: int, c: complex = 1.0) -> "LaurentPolynomial":
        return cls({n: c})

    @classmethod
    def from_dense(cls, n_min: int, values) -> "LaurentPolynomial":
        return cls({n_min + k: v for k, v in enumerate(values)})

    @property
    def items(self):
        return self._items

    @property
    def n_min(self) -> int:
        return self._items[0][0] if self._items else 0

    @property
    def n_max(self) -> int:
        return self._items[-1][0] if self._items else 0

    @property
    def bandwidth(self) -> int:
        return max(abs(self.n_min), abs(self.n_max))

    def is_zero(self) -> bool:
        return not self._items

    def coefficient(self, n: int) -> complex:
        for k, c in self._items:
            if k == n:
                return c
        return 0j

    def as_dict(self) -> dict:
        return dict(self._items)

    def dense(self, n_min: int, n_max: int) -> np.ndarray:
        out = np.zeros(n_max - n_min + 1, dtype=complex)
        for n, c in self._items:
            if n_min <= n <= n_max:
                out[n - n_min] = c
        return out

    def fourier_coeffs(self, n_min: int, n_max: int) -> np.ndarray:
        return self.dense(n_min, n_max)

    def __call__(self, t):
        t = np.asarray(t, dtype=complex)
        out = np.zeros(t.shape, dtype=complex)
        for n, c in self._items:
            out += c * t ** n
        return out

    def evaluate(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape, dtype=complex)
        for n, c in self._items:
            out += c * np.exp(1j * n * theta)
        return out

    def reflect(self) -> "LaurentPolynomial":
        """The polynomial t -> g(1/t)."""
        return LaurentPolynomial({-n: c for n, c in self._items})

    def rotate(self, alpha: float) -> "LaurentPolynomial":
        """The polynomial t -> g(e^{i alpha} t)."""
        return LaurentPolynomial({n: c * cmath.exp(1j * n * alpha) for n, c in self._items})

    def conj(self) -> "LaurentPolynomial":
        """Coefficients of conj(g(t)) on the circle."""
        return LaurentPolynomial({-n: c.conjugate() for n, c in self._items})

    def part(self, lo=None, hi=None) -> "LaurentPolynomial":
        return LaurentPolynomial({n: c for n, c in self._items
                                  if (lo is None or n >= lo) and (hi is None or n <= hi)})

    def __add__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial({0: other})
        d = self.as_dict()
        for n, c in other._items:
            d[n] = d.get(n, 0) + c
        return LaurentPolynomial(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({n: -c for n, c in self._items})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return LaurentPolynomial({n: c * other for n, c in self._items})
        d: dict = {}
        for n, a in self._items:
            for k, b in other._items:
                d[n + k] = d.get(n + k, 0) + a * b
        return LaurentPolynomial(d)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        return f"LaurentPolynomial({dict(self._items)!r})"


@dataclass(frozen=True)
class SmoothPart:
    """b(t) = t^winding * exp(log_part(t))."""

    winding: int = 0
    log_part: LaurentPolynomial = field(default_factory=LaurentPolynomial)

    def __post_init__(self):
        if int(self.winding) != self.winding:
            raise ValueError("winding must be an integer")
        object.__setattr__(self, "winding", int(self.winding))

    def evaluate(self, theta):
        theta = np.asarray(theta, dtype=float)
        return np.exp(1j * self.winding * theta + self.log_part.evaluate(theta))

    def __mul__(self, other: "SmoothPart") -> "SmoothPart":
        return SmoothPart(self.winding + other.winding, self.log_part + other.log_part)

    def inverse(self) -> "SmoothPart":
        return SmoothPart(-self.winding, -self.log_part)

    def reflect(self) -> "SmoothPart":
        return SmoothPart(-self.winding, self.log_part.reflect())


@dataclass(frozen=True)
class JumpFactor:
    """The factor t_beta(e^{i(theta - location)})."""

    theta: float
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "theta", canonical_angle(self.theta))
        object.__setattr__(self, "beta", complex(self.beta))

    def evaluate(self, theta):
        u = np.mod(np.asarray(theta, dtype=float) - self.theta, TWO_PI)
        return np.exp(1j * self.beta * (u - math.pi))

    def limits(self):
        """(phi_+, phi_-) at the factor's own location."""
        return cmath.exp(-1j * math.pi * self.beta), cmath.exp(1j * math.pi * self.beta)


@dataclass(frozen=True)
class PCSymbol:
    """Piecewise continuous symbol with finitely many jumps, on H^p."""

    p: float = 2.0
    smooth: SmoothPart = field(default_factory=SmoothPart)
    jumps: tuple = ()

    def __post_init__(self):
        p = float(self.p)
        if not (1.0 < p < math.inf):
            raise ValueError(f"Hardy exponent must satisfy 1 < p < inf, got {self.p}")
        object.__setattr__(self, "p", p)
        jumps = tuple(j if isinstance(j, JumpFactor) else JumpFactor(*j) for j in self.jumps)
        jumps = tuple(sorted(jumps, key=lambda j: j.theta))
        for a, b in zip(jumps, jumps[1:]):
            if same_angle(a.theta, b.theta):
                raise ValueError(f"duplicate jump location {a.theta!r}")
        if len(jumps) > 1 and same_angle(jumps[0].theta, jumps[-1].theta):
            raise ValueError(f"duplicate jump location {jumps[0].theta!r}")
        object.__setattr__(self, "jumps", jumps)

    @property
    def q(self) -> float:
        return self.p / (self.p - 1.0)

    @property
    def jump_locations(self) -> tuple:
        return tuple(j.theta for j in self.jumps)

    def jump_at(self, theta: float):
        for j in self.jumps:
            if same_angle(j.theta, theta):
                return j
        return None

    def evaluate(self, theta):
        """Vectorized evaluation; raises OnJumpError at a jump location."""
        theta = np.asarray(theta, dtype=float)
        flat = np.atleast_1d(theta)
        red = np.mod(flat, TWO_PI)
        for j in self.jumps:
            if np.any(red == j.theta):
                raise OnJumpError(f"symbol evaluated at its jump location {j.theta!r}")
        out = self.smooth.evaluate(flat)
        if self.jumps:
            out = out * kernels.jump_product(flat, [j.theta for j in self.jumps],
                                             [j.beta for j in self.jumps])
        return out.reshape(theta.shape)

    __call__ = evaluate

    def evaluate_offset(self, base, offset):
        """phi at theta = base + offset, resolving tiny offsets next to a jump.

        The local coordinate of each jump factor is formed as
        (base - theta_r) + offset, so an offset of 1e-200 from a jump still
        selects the correct one-sided value.
        """
        base = np.asarray(base, dtype=float)
        offset = np.asarray(offset, dtype=float)
        out = self.smooth.evaluate(base + offset).astype(complex)
        for j in self.jumps:
            d = np.mod(base - j.theta + math.pi, TWO_PI) - math.pi
            u = np.mod(d + offset, TWO_PI)
            if np.any(u == 0):
                raise OnJumpError(f"symbol evaluated at its jump location {j.theta!r}")
            out = out * np.exp(1j * j.beta * (u - math.pi))
        return out

    def fourier_coeffs(self, n_min: int, n_max: int) -> np.ndarray:
        return fourier_coeffs(self, n_min, n_max)


# -- operations ---------------------------------------------------------------

def eval_symbol(sym: PCSymbol, theta: float) -> complex:
    """phi(e^{i theta}); theta must not be a jump location."""
    t = canonical_angle(theta)
    for j in sym.jumps:
        if t == j.theta:
            raise OnJumpError(f"symbol evaluated at its jump location {j.theta!r}")
    return complex(sym.evaluate(np.array([t]))[0])


def one_sided_limits(sym: PCSymbol, theta: float) -> tuple:
    """(phi_+(tau), phi_-(tau)) at tau = e^{i theta}, computed analytically."""
    t = canonical_angle(theta)
    base = complex(sym.smooth.evaluate(np.array([t]))[0])
    plus = minus = base
    for j in sym.jumps:
        if same_angle(j.theta, t):
            lp, lm = j.limits()
            plus *= lp
            minus *= lm
        else:
            v = complex(j.evaluate(np.array([t]))[0])
            plus *= v
            minus *= v
    return plus, minus


def jump_ratio(sym: PCSymbol, theta: float) -> complex:
    """phi_-(tau) / phi_+(tau)."""
    j = sym.jump_at(theta)
    if j is None:
        return 1.0 + 0j
    return cmath.exp(2j * math.pi * j.beta)


def tilde(sym: PCSymbol) -> PCSymbol:
    """The symbol t -> phi(1/t).

    A jump (theta_r, beta) becomes (2 pi - theta_r, -beta); no constant
    is produced because t_beta(e^{i(2pi - v)}) = t_{-beta}(e^{iv}).
    """
    return PCSymbol(sym.p, sym.smooth.reflect(),
                    tuple(JumpFactor(-j.theta, -j.beta) for j in sym.jumps))


def rotate(sym: PCSymbol, alpha: float) -> PCSymbol:
    """The symbol t -> phi(e^{i alpha} t)."""
    m = sym.smooth.winding
    log = sym.smooth.log_part.rotate(alpha) + LaurentPolynomial({0: 1j * m * alpha})
    return PCSymbol(sym.p, SmoothPart(m, log),
                    tuple(JumpFactor(j.theta - alpha, j.beta) for j in sym.jumps))


def inverse(sym: PCSymbol) -> PCSymbol:
    """The pointwise reciprocal 1/phi."""
    return PCSymbol(sym.p, sym.smooth.inverse(),
                    tuple(JumpFactor(j.theta, -j.beta) for j in sym.jumps))


def conjugate(sym: PCSymbol) -> PCSymbol:
    """The pointwise complex conjugate.

    conj(t_beta) = t_{conj(beta)}^{-1}-type: exp(-i conj(beta)(u - pi)).
    """
    return PCSymbol(sym.p, SmoothPart(-sym.smooth.winding, sym.smooth.log_part.conj()),
                    tuple(JumpFactor(j.theta, -j.beta.conjugate()) for j in sym.jumps))


def multiply(a: PCSymbol, b: PCSymbol) -> PCSymbol:
    if a.p != b.p:
        raise ValueError(f"cannot multiply symbols on different spaces (p={a.p} vs p={b.p})")
    merged: list = []
    for j in a.jumps + b.jumps:
        for k, other in enumerate(merged):
            if same_angle(other.theta, j.theta):
                merged[k] = JumpFactor(other.theta, other.beta + j.beta)
                break
        else:
            merged.append(j)
    return PCSymbol(a.p, a.smooth * b.smooth, tuple(merged))


def scale(sym: PCSymbol, c: complex) -> PCSymbol:
    """c * phi, with the constant absorbed into the log part."""
    log = sym.smooth.log_part + LaurentPolynomial({0: cmath.log(complex(c))})
    return PCSymbol(sym.p, SmoothPart(sym.smooth.winding, log), sym.jumps)


def shift_exponents(sym: PCSymbol, shifts: Mapping[float, int]) -> PCSymbol:
    """Same function, with jump exponents moved by integers.

    t_{beta+k}(e^{iu}) = t_beta(e^{iu}) t^k e^{-ik(theta_r + pi)}, so the
    smooth part loses t^k and gains the compensating constant.
    """
    jumps = []
    m = sym.smooth.winding
    const = 0j
    for j in sym.jumps:
        k = 0
        for loc, s in shifts.items():
            if same_angle(loc, j.theta):
                k = int(s)
        jumps.append(JumpFactor(j.theta, j.beta + k))
        m -= k
        const += 1j * k * (j.theta + math.pi)
    log = sym.smooth.log_part + LaurentPolynomial({0: const})
    return PCSymbol(sym.p, SmoothPart(m, log), tuple(jumps))


@lru_cache(maxsize=128)
def _cached_coeffs(sym: PCSymbol, n_min: int, n_max: int) -> np.ndarray:
    log = sym.smooth.log_part
    if not sym.jumps and log.n_min == log.n_max == 0:
        # c t^m: exact
        out = np.zeros(n_max - n_min + 1, dtype=complex)
        m = sym.smooth.winding
        if n_min <= m <= n_max:
            out[m - n_min] = cmath.exp(log.coefficient(0))
    else:
        out = fourier_coefficients(sym.evaluate, n_min, n_max, breakpoints=sym.jump_locations)
    out.setflags(write=False)
    return out


def fourier_coeffs(sym: PCSymbol, n_min: int, n_max: int) -> np.ndarray:
    """Fourier coefficients c_{n_min}..c_{n_max} of the symbol."""
    if n_min > n_max:
        raise ValueError("n_min must not exceed n_max")
    return _cached_coeffs(sym, int(n_min), int(n_max))


def jump_free(sym: PCSymbol) -> bool:
    return not sym.jumps
