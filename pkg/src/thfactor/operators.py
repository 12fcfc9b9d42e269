"""Finite sections of T(phi), H(phi), M(phi), Phi(phi), Psi(phi).

Sections use the standard basis e_n = t^n of H^2 with entries

    T[j, k] = c_{j-k},   H[j, k] = c_{j+k+1},   M = T + H.

Phi(phi) = P L(phi) P_J and Psi(phi) = P_J L(phi) P are represented in the
orthonormal J-symmetric basis v_n = (e_n + e_{-n-1}) / sqrt(2), n >= 0,
where J e_n = e_{-n-1}.

Any object with a ``fourier_coeffs(n_min, n_max)`` method can serve as a
symbol here (``PCSymbol`` or a raw ``LaurentPolynomial``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import TruncationError
from .symbols import LaurentPolynomial

SQRT2 = math.sqrt(2.0)

KINDS = ("T", "H", "M", "Phi", "Psi")


@dataclass(frozen=True)
class OperatorSection:
    kind: str
    size: int
    entries: np.ndarray = field(repr=False)
    basis_note: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown section kind {self.kind!r}")

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.entries, compute_uv=False)


def _coeff_getter(sym, n_min, n_max):
    c = np.asarray(sym.fourier_coeffs(n_min, n_max))

    def get(idx):
        return c[np.asarray(idx) - n_min]

    return get


def toeplitz_block(sym, rows: int, cols: int) -> np.ndarray:
    c = _coeff_getter(sym, -(cols - 1), rows - 1)
    j, k = np.ogrid[0:rows, 0:cols]
    return c(j - k)


def hankel_block(sym, rows: int, cols: int) -> np.ndarray:
    c = _coeff_getter(sym, 1, rows + cols - 1)
    j, k = np.ogrid[0:rows, 0:cols]
    return c(j + k + 1)


def m_block(sym, rows: int, cols: int) -> np.ndarray:
    """Leading rows x cols block of M(phi); rectangular blocks feed the probes."""
    c = _coeff_getter(sym, -(cols - 1), rows + cols - 1)
    j, k = np.ogrid[0:rows, 0:cols]
    return c(j - k) + c(j + k + 1)


def build_toeplitz_section(sym, N: int) -> OperatorSection:
    _check_size(N)
    return OperatorSection("T", N, toeplitz_block(sym, N, N), "e_0..e_{N-1} -> e_0..e_{N-1}")


def build_hankel_section(sym, N: int) -> OperatorSection:
    _check_size(N)
    return OperatorSection("H", N, hankel_block(sym, N, N), "e_0..e_{N-1} -> e_0..e_{N-1}")


def build_m_section(sym, N: int) -> OperatorSection:
    _check_size(N)
    T = build_toeplitz_section(sym, N).entries
    H = build_hankel_section(sym, N).entries
    return OperatorSection("M", N, T + H, "e_0..e_{N-1} -> e_0..e_{N-1}")


def _check_size(N):
    if int(N) != N or N < 1:
        raise ValueError(f"section size must be a positive integer, got {N!r}")


# -- Laurent-window machinery ---------------------------------------------------

def laurent_window(N: int):
    """Degrees -2N..2N of the window used to assemble Phi and Psi."""
    return np.arange(-2 * N, 2 * N + 1)


def multiplication_matrix(sym, degrees: np.ndarray) -> np.ndarray:
    """Matrix of L(phi) compressed to span{e_n : n in degrees}."""
    d = np.asarray(degrees)
    span = int(d.max() - d.min())
    c = _coeff_getter(sym, -span, span)
    return c(d[:, None] - d[None, :])


def j_symmetric_basis(N: int, degrees: np.ndarray) -> np.ndarray:
    """Columns v_n = (e_n + e_{-n-1}) / sqrt(2), n = 0..N-1, in window coordinates."""
    d = np.asarray(degrees)
    pos = {int(n): i for i, n in enumerate(d)}
    V = np.zeros((d.size, N))
    for n in range(N):
        V[pos[n], n] = 1.0 / SQRT2
        V[pos[-n - 1], n] = 1.0 / SQRT2
    return V


def hardy_rows(N: int, degrees: np.ndarray) -> np.ndarray:
    """Selector onto e_0..e_{N-1} (finite section of the Riesz projection)."""
    d = np.asarray(degrees)
    pos = {int(n): i for i, n in enumerate(d)}
    S = np.zeros((N, d.size))
    for n in range(N):
        S[n, pos[n]] = 1.0
    return S


def flip_matrix(degrees: np.ndarray) -> np.ndarray:
    """J e_n = e_{-n-1} on a window closed under n -> -n-1."""
    d = np.asarray(degrees)
    pos = {int(n): i for i, n in enumerate(d)}
    Jm = np.zeros((d.size, d.size))
    for i, n in enumerate(d):
        m = -int(n) - 1
        if m not in pos:
            raise ValueError("window is not closed under the flip n -> -n-1")
        Jm[pos[m], i] = 1.0
    return Jm


def riesz_matrix(degrees: np.ndarray) -> np.ndarray:
    return np.diag((np.asarray(degrees) >= 0).astype(float))


def build_phi_section(sym, N: int) -> OperatorSection:
    _check_size(N)
    d = laurent_window(N)
    L = multiplication_matrix(sym, d)
    entries = hardy_rows(N, d) @ L @ j_symmetric_basis(N, d)
    return OperatorSection("Phi", N, entries, "v_0..v_{N-1} -> e_0..e_{N-1}, v_n=(e_n+e_{-n-1})/sqrt2")


def build_psi_section(sym, N: int) -> OperatorSection:
    _check_size(N)
    d = laurent_window(N)
    L = multiplication_matrix(sym, d)
    entries = j_symmetric_basis(N, d).T @ L @ hardy_rows(N, d).T
    return OperatorSection("Psi", N, entries, "e_0..e_{N-1} -> v_0..v_{N-1}, v_n=(e_n+e_{-n-1})/sqrt2")


BUILDERS = {
    "T": build_toeplitz_section,
    "H": build_hankel_section,
    "M": build_m_section,
    "Phi": build_phi_section,
    "Psi": build_psi_section,
}


def build_section(sym, kind: str, N: int) -> OperatorSection:
    try:
        builder = BUILDERS[kind]
    except KeyError:
        raise ValueError(f"unknown operator kind {kind!r}; expected one of {KINDS}") from None
    return builder(sym, N)


# -- formal inverse -------------------------------------------------------------

@dataclass(frozen=True)
class X1Element:
    """The function (1 - t^{-1}) f1(t) with f1 a Laurent polynomial."""

    poly: LaurentPolynomial

    def laurent(self) -> LaurentPolynomial:
        return LaurentPolynomial({0: 1.0, -1: -1.0}) * self.poly

    def evaluate(self, theta):
        return self.laurent().evaluate(theta)


@dataclass(frozen=True)
class CoefficientWindow:
    """Laurent coefficients c_{n_min}, ..., c_{n_min + len - 1}."""

    n_min: int
    values: np.ndarray = field(repr=False)

    @property
    def n_max(self) -> int:
        return self.n_min + len(self.values) - 1

    def __getitem__(self, n: int) -> complex:
        return self.values[n - self.n_min]

    def degrees(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)


@dataclass(frozen=True)
class FormalInverseResult:
    coefficients: CoefficientWindow
    p1: LaurentPolynomial
    symmetric_part: LaurentPolynomial  # p1(t) + t^{-1} p1(1/t)


def analytic_part(f: LaurentPolynomial, minus_inverse: np.ndarray) -> LaurentPolynomial:
    """P(h f) for h with coefficients h_0, h_{-1}, ... given as minus_inverse[k] = h_{-k}."""
    out: dict = {}
    for k, fk in f.items:
        # degree j = k - m >= 0 with m = 0..k
        for m in range(0, k + 1):
            out[k - m] = out.get(k - m, 0) + fk * minus_inverse[m]
    return LaurentPolynomial(out)


def apply_formal_inverse(fact, f: X1Element, n_trunc: int) -> FormalInverseResult:
    """Bf = phi_0^{-1} (p1(t) + t^{-1} p1(1/t)) with p1 = P(phi_-^{-1} f).

    The Laurent coefficients of Bf are returned on the window
    ``-n_trunc .. n_trunc - 1``, which is closed under n -> -n-1.
    """
    if fact.kappa != 0:
        raise ValueError(f"the formal inverse needs index 0, got kappa={fact.kappa}")
    g = f.laurent()
    need = max(g.n_max, 0)
    h = fact.minus_inverse_coeffs(max(need, n_trunc))
    if n_trunc < need:
        dropped = float(np.sum(np.abs(h[n_trunc + 1:need + 1])))
        if dropped > 1e-8:
            raise TruncationError(
                f"n_trunc={n_trunc} drops phi_-^{{-1}} coefficients of mass {dropped:.3e} "
                f"needed for degree {need}")
    hk = np.zeros(need + 1, dtype=complex)
    m = min(need, n_trunc) + 1
    hk[:m] = h[:m]
    p1 = analytic_part(g, hk)
    q = p1 + LaurentPolynomial.monomial(-1) * p1.reflect()
    coeffs = fact.zero_inverse_times(q, -n_trunc, n_trunc - 1)
    return FormalInverseResult(CoefficientWindow(-n_trunc, coeffs), p1, q)
