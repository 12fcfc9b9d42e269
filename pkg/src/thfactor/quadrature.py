"""Fourier coefficients of functions on the unit circle.

Functions are given as vectorized callables of the angle theta.  Without
breakpoints the function is treated as smooth and periodic, and the
trapezoidal rule (FFT) is used.  With breakpoints the circle is cut into
panels and each panel is integrated with composite Gauss-Legendre rules;
this avoids the O(1/N) error that the FFT suffers at jumps.

When ``singular=True`` the breakpoints may be integrable power
singularities ``|theta - b|**a`` with complex ``a``, ``Re a > -1``.  The
part of a panel adjacent to such a point is mapped by ``u = d*exp(-s)``
which turns the endpoint singularity into an exponentially decaying,
smooth integrand in ``s``.  Offsets ``u`` far below the resolution of
``theta`` itself occur there, so in this mode the integrand is called as
``func(base, offset)`` with ``theta = base + offset`` and ``base`` equal to
the breakpoint bit for bit.
"""

import math
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from . import kernels
from .errors import NumericFailure

TWO_PI = 2.0 * math.pi
GL_ORDER = 32


@lru_cache(maxsize=None)
def _gauss_legendre(order):
    x, w = roots_legendre(order)
    return x, w


def _composite(edges, order=GL_ORDER):
    """Gauss-Legendre nodes/weights for consecutive intervals given by edges."""
    x, w = _gauss_legendre(order)
    edges = np.asarray(edges, dtype=float)
    a, b = edges[:-1], edges[1:]
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _uniform_edges(a, b, h):
    m = max(1, int(math.ceil((b - a) / h)))
    return np.linspace(a, b, m + 1)


def _graded_edges(a, b, delta, h, grade_left, grade_right):
    """Edges on [a, b] refined geometrically towards graded endpoints."""
    length = b - a
    half = 0.5 * length
    left = [0.0]
    if grade_left:
        x = delta
        left.append(x)
        while x < half:
            x = min(half, x + min(x, h))
            left.append(x)
    right = [0.0]
    if grade_right:
        x = delta
        right.append(x)
        while x < half:
            x = min(half, x + min(x, h))
            right.append(x)
    lo = a + left[-1]
    hi = b - right[-1]
    edges = [a + v for v in left[:-1]]
    if hi > lo:
        edges.extend(_uniform_edges(lo, hi, h))
    else:
        edges.append(lo)
    edges.extend(b - v for v in reversed(right[:-1]))
    return np.unique(np.asarray(edges, dtype=float))


def _exp_end(a, delta, direction, decay):
    """Nodes/weights for the integral over [a, a + direction*delta].

    Substituting u = delta*exp(-s) gives du = u ds; the integrand decays
    like exp(-decay*s) for a singularity |u|**(decay - 1).
    """
    span = min(690.0 + math.log(delta), 40.0 / max(decay, 1e-3))
    s_edges = np.arange(0.0, span + 4.0, 4.0)
    s, ws = _composite(s_edges)
    u = delta * np.exp(-s)
    return np.full(u.shape, a), direction * u, ws * u


def panel_rule(breakpoints, h, singular=False, decay=None):
    """Quadrature rule over one period, cut at breakpoints.

    Returns ``(base, offset, weights)``; nodes are ``base + offset``.
    """
    bps = sorted(float(b) % TWO_PI for b in breakpoints)
    if decay is None:
        decay = [1.0] * len(bps)
    else:
        order = np.argsort([float(b) % TWO_PI for b in breakpoints])
        decay = [float(decay[i]) for i in order]
    starts = bps
    ends = bps[1:] + [bps[0] + TWO_PI]
    dec_start = decay
    dec_end = decay[1:] + decay[:1]
    bases, offsets, weights = [], [], []
    for i, (a, b, da, db) in enumerate(zip(starts, ends, dec_start, dec_end)):
        length = b - a
        if not singular:
            x, w = _composite(_uniform_edges(a, b, h))
            bases.append(x)
            offsets.append(np.zeros_like(x))
            weights.append(w)
            continue
        delta = min(length / 8.0, 0.5 * h)
        x, w = _composite(_graded_edges(a + delta, b - delta, delta, h, True, True))
        bases.append(x)
        offsets.append(np.zeros_like(x))
        weights.append(w)
        # the right end of the last panel is the first breakpoint, reached from below
        b_exact = bps[(i + 1) % len(bps)]
        for base, direction, dec in ((a, 1.0, da), (b_exact, -1.0, db)):
            x0, u, w = _exp_end(base, delta, direction, dec)
            bases.append(x0)
            offsets.append(u)
            weights.append(w)
    return np.concatenate(bases), np.concatenate(offsets), np.concatenate(weights)


def _fft_coefficients(func, n_min, n_max, tol, max_points=1 << 22):
    span = max(abs(n_min), abs(n_max), 1)
    m = 1 << max(9, int(math.ceil(math.log2(4 * span + 64))))
    prev = None
    while m <= max_points:
        theta = TWO_PI * np.arange(m) / m
        c = np.fft.fft(func(theta)) / m
        idx = np.arange(n_min, n_max + 1) % m
        cur = c[idx]
        if prev is not None:
            scale = max(1.0, float(np.max(np.abs(cur))))
            if np.max(np.abs(cur - prev)) <= tol * scale:
                return cur
        prev = cur
        m *= 2
    raise NumericFailure("FFT Fourier coefficients did not converge")


def fourier_coefficients(func, n_min, n_max, breakpoints=(), singular=False,
                         decay=None, tol=1e-10, max_levels=6):
    """Fourier coefficients c_n = (1/2pi) int f(e^{i theta}) e^{-in theta} dtheta.

    Parameters
    ----------
    func : callable
        Vectorized map from an array of angles to complex values, never
        called at a breakpoint.  With ``singular=True`` it is called as
        ``func(base, offset)`` instead.
    n_min, n_max : int
        Inclusive degree range.
    breakpoints : sequence of float
        Angles of jumps or singularities.
    singular : bool
        Treat breakpoints as integrable power singularities.
    decay : sequence of float, optional
        For singular breakpoints, ``Re(a) + 1`` of the local exponent
        ``|theta - b|**a``; used to size the endpoint map.
    tol : float
        Refinement stops when two successive levels agree to
        ``tol * max(1, max|c_n|)``.

    Returns
    -------
    ndarray of complex, length ``n_max - n_min + 1``
    """
    if n_min > n_max:
        raise ValueError("n_min must not exceed n_max")
    if len(breakpoints) == 0:
        return _fft_coefficients(func, n_min, n_max, tol)
    span = max(abs(n_min), abs(n_max), 1)
    h = min(0.5, 40.0 / span)
    prev = None
    for _ in range(max_levels):
        base, off, w = panel_rule(breakpoints, h, singular=singular, decay=decay)
        values = func(base, off) if singular else func(base)
        cur = kernels.nudft(base + off, w * values / TWO_PI, n_min, n_max)
        if prev is not None:
            scale = max(1.0, float(np.max(np.abs(cur))))
            if np.max(np.abs(cur - prev)) <= tol * scale:
                return cur
        prev = cur
        h *= 0.5
    raise NumericFailure("panel quadrature did not reach the requested tolerance")
