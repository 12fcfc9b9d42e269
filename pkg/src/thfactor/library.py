"""Symbol libraries used by the verification suites.

``random_library`` draws symbols with jumps at 1, -1 and at interior
points (with or without their conjugate partner), over several p, and
plants a number of exact boundary cases.  ``curated_library`` is a fixed
list at p = 2 covering the qualitative cases the finite-section probes
should reproduce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fredholm import check_conditions
from .symbols import JumpFactor, LaurentPolynomial, PCSymbol, SmoothPart

P_VALUES = (4 / 3, 1.5, 2.0, 3.0, 4.0)
NEAR_BOUNDARY = 1e-3


@dataclass(frozen=True)
class LibraryEntry:
    symbol_id: str
    symbol: PCSymbol
    note: str = ""


def _random_smooth(rng, max_winding=2, bandwidth=2, scale=0.15) -> SmoothPart:
    m = int(rng.integers(-max_winding, max_winding + 1))
    coeffs = {n: scale * complex(rng.normal(), rng.normal())
              for n in range(-bandwidth, bandwidth + 1) if n != 0 and rng.random() < 0.6}
    return SmoothPart(m, LaurentPolynomial(coeffs))


def _random_beta(rng) -> complex:
    return complex(rng.uniform(-1.5, 1.5), 0.2 * rng.normal())


def _random_jumps(rng) -> list:
    jumps = []
    if rng.random() < 0.5:
        jumps.append((0.0, _random_beta(rng)))
    if rng.random() < 0.5:
        jumps.append((math.pi, _random_beta(rng)))
    taken = []
    for _ in range(int(rng.integers(0, 3))):
        theta = float(rng.uniform(0.2, math.pi - 0.2))
        if any(abs(theta - t) < 0.1 for t in taken):
            continue
        taken.append(theta)
        r = rng.random()
        if r < 0.4:
            jumps.append((theta, _random_beta(rng)))
            jumps.append((2 * math.pi - theta, _random_beta(rng)))
        elif r < 0.7:
            jumps.append((theta, _random_beta(rng)))
        else:
            jumps.append((2 * math.pi - theta, _random_beta(rng)))
    return jumps


def _near_boundary(sym: PCSymbol) -> bool:
    return any(not c.passes or c.distance < NEAR_BOUNDARY for c in check_conditions(sym))


def _plant_boundary(rng, sym: PCSymbol) -> PCSymbol:
    """Move one exponent so that a Fredholm condition holds with equality."""
    p = sym.p
    k = int(rng.integers(-1, 2))
    im = 0.2 * rng.normal()
    jumps = list(sym.jumps)
    choice = rng.integers(0, 3)
    if choice == 0:
        beta = 1 / (2 * p) + k + 1j * im
        jumps = [j for j in jumps if j.theta != 0.0] + [JumpFactor(0.0, beta)]
    elif choice == 1:
        beta = 0.5 + 1 / (2 * p) + k + 1j * im
        jumps = [j for j in jumps if j.theta != math.pi] + [JumpFactor(math.pi, beta)]
    else:
        theta = float(rng.uniform(0.3, math.pi - 0.3))
        ba = complex(rng.uniform(-0.5, 0.5), 0.1 * rng.normal())
        bb = 1 / p + k - ba.real + 1j * im
        jumps = [j for j in jumps if j.theta in (0.0, math.pi)]
        jumps += [JumpFactor(theta, ba), JumpFactor(2 * math.pi - theta, bb)]
    return PCSymbol(p, sym.smooth, tuple(jumps))


def random_library(n: int = 50, seed: int = 20240601, boundary_every: int = 6) -> list:
    """``n`` random symbols; every ``boundary_every``-th one sits on a boundary."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        i = len(out)
        p = float(P_VALUES[int(rng.integers(0, len(P_VALUES)))])
        sym = PCSymbol(p, _random_smooth(rng), tuple(_random_jumps(rng)))
        if boundary_every and i % boundary_every == boundary_every - 1:
            out.append(LibraryEntry(f"random-{i:02d}", _plant_boundary(rng, sym), "boundary"))
            continue
        if _near_boundary(sym):
            continue
        out.append(LibraryEntry(f"random-{i:02d}", sym, ""))
    return out


def _sym(jumps=(), winding=0, log=None) -> PCSymbol:
    return PCSymbol(2.0, SmoothPart(winding, LaurentPolynomial(log or {})), tuple(jumps))


def curated_library() -> list:
    """Fixed p = 2 symbols; kappa != 0 only through the smooth winding."""
    th, th2 = 1.0, 2.2
    two_pi = 2 * math.pi
    g_sym = {1: 0.3, -1: 0.3}
    g_mix = {1: 0.25 + 0.1j, -1: -0.15, 2: 0.1j}
    entries = [
        ("const-1", _sym(), "no jumps"),
        ("exp-even", _sym(log=g_sym), "no jumps"),
        ("exp-analytic", _sym(log={1: 0.4, 2: -0.2}), "no jumps"),
        ("exp-antianalytic", _sym(log={-1: 0.4j, -2: 0.2}), "no jumps"),
        ("t^-2", _sym(winding=-2), "kappa=-2"),
        ("t^-1", _sym(winding=-1), "kappa=-1"),
        ("t^1", _sym(winding=1), "kappa=1"),
        ("t^2", _sym(winding=2), "kappa=2"),
        ("t^-2 exp", _sym(winding=-2, log=g_mix), "kappa=-2"),
        ("t^-1 exp", _sym(winding=-1, log=g_mix), "kappa=-1"),
        ("t^1 exp", _sym(winding=1, log=g_mix), "kappa=1"),
        ("t^2 exp", _sym(winding=2, log=g_mix), "kappa=2"),
        ("jump+1 0.1", _sym([(0.0, 0.1)]), "single jump at 1"),
        ("jump+1 -0.3", _sym([(0.0, -0.3)]), "single jump at 1"),
        ("jump+1 0.2+0.1i", _sym([(0.0, 0.2 + 0.1j)]), "single jump at 1"),
        ("jump+1 1.1", _sym([(0.0, 1.1)], winding=-1), "single jump at 1, shifted exponent"),
        ("jump+1 -0.7", _sym([(0.0, -0.7)]), "single jump at 1, unstable sections"),
        ("jump-1 0.1", _sym([(math.pi, 0.1)]), "single jump at -1"),
        ("jump-1 0.4", _sym([(math.pi, 0.4)]), "single jump at -1"),
        ("jump-1 -0.2+0.1i", _sym([(math.pi, -0.2 + 0.1j)]), "single jump at -1"),
        ("jump-1 0.7", _sym([(math.pi, 0.7)]), "single jump at -1, unstable sections"),
        ("pair 0.3,-0.1", _sym([(th, 0.3), (two_pi - th, -0.1)]), "conjugate pair"),
        ("pair 0.2,0.2", _sym([(th, 0.2), (two_pi - th, 0.2)]), "conjugate pair"),
        ("pair -0.3,-0.1", _sym([(th, -0.3), (two_pi - th, -0.1)]), "conjugate pair"),
        ("pair 0.4,0.05+0.1i", _sym([(th, 0.4), (two_pi - th, 0.05 + 0.1j)]), "conjugate pair"),
        ("pair2 0.1,0.3", _sym([(th2, 0.1), (two_pi - th2, 0.3)]), "conjugate pair"),
        ("upper only 0.3", _sym([(th2, 0.3)]), "interior jump without partner"),
        ("lower only -0.25", _sym([(two_pi - th, -0.25)]), "interior jump without partner"),
        ("mixed A", _sym([(0.0, 0.15), (math.pi, 0.25), (th, 0.2), (two_pi - th, -0.1)], log=g_sym),
         "mixed"),
        ("mixed B", _sym([(0.0, -0.2 + 0.05j), (th2, 0.1), (two_pi - th2, 0.15)], log=g_mix), "mixed"),
        ("mixed C", _sym([(math.pi, 0.3), (th, -0.2), (two_pi - th, 0.3), (th2, 0.1)],
                         log={1: 0.2}), "mixed"),
        ("mixed D", _sym([(0.0, 0.9), (math.pi, 0.2), (th2, 0.25)], winding=-1, log={-1: 0.2}),
         "mixed, shifted exponent"),
    ]
    return [LibraryEntry(i, s, note) for i, s, note in entries]


def toeplitz_cases() -> list:
    """Pair-jump symbols for the classical Toeplitz window (20 cases)."""
    th = 1.3
    out = []
    pairs = [(0.2, -0.3), (0.45, 0.45), (0.6, 0.1), (-0.6, 0.1), (0.7, -0.7),
             (0.3 + 0.2j, -0.2 - 0.1j), (-0.45, 0.2), (0.55, 0.55), (1.2, 0.1), (-1.3, 0.2)]
    for ba, bb in pairs:
        out.append(PCSymbol(2.0, SmoothPart(), ((th, ba), (2 * math.pi - th, bb))))
    for p, (ba, bb) in zip((4 / 3, 4 / 3, 1.5, 1.5, 3.0, 3.0, 4.0, 4.0, 3.0, 4 / 3),
                           [(0.6, 0.1), (-0.3, 0.2), (0.5, -0.6), (0.7, 0.1), (0.3, 0.3),
                            (-0.5, 0.1), (0.2, 0.2), (-0.8, 0.1), (0.9, -0.9), (0.7, 0.2)]):
        out.append(PCSymbol(p, SmoothPart(), ((th, ba), (2 * math.pi - th, bb))))
    return out
