"""NumPy implementations of the hot loops (fallback for the compiled module)."""

import numpy as np

_CHUNK = 1 << 20


def nudft(theta, weighted, n_min, n_max):
    """Return sum_k weighted[k] * exp(-i n theta[k]) for n = n_min..n_max."""
    theta = np.asarray(theta, dtype=float)
    weighted = np.asarray(weighted, dtype=complex)
    n = np.arange(n_min, n_max + 1, dtype=float)
    out = np.zeros(n.size, dtype=complex)
    rows = max(1, _CHUNK // max(n.size, 1))
    for start in range(0, theta.size, rows):
        th = theta[start:start + rows]
        out += weighted[start:start + rows] @ np.exp(-1j * np.outer(th, n))
    return out


def phase_walk(values):
    """Accumulated phase along a closed sample path and the largest increment."""
    values = np.asarray(values, dtype=complex)
    d = np.angle(np.roll(values, -1) / values)
    return float(d.sum()), float(np.abs(d).max())


def jump_product(theta, locations, betas):
    """prod_r exp(i beta_r (((theta - theta_r) mod 2pi) - pi))."""
    theta = np.asarray(theta, dtype=float)
    acc = np.zeros(theta.shape, dtype=complex)
    for loc, beta in zip(locations, betas):
        u = np.mod(theta - loc, 2 * np.pi)
        acc += 1j * beta * (u - np.pi)
    return np.exp(acc)
