"""Independent reference computations used by the tests.

These deliberately avoid the library's own evaluation routes: zeta through
Euler-Maclaurin instead of the functional equation, energies by direct
pairwise summation, and the continuous energy by adaptive quadrature of
its defining double integral (reduced by rotation invariance).
"""

from __future__ import annotations

import math

import numpy as np

_BERNOULLI = [
    1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510,
    43867 / 798, -174611 / 330, 854513 / 138, -236364091 / 2730,
    8553103 / 6, -23749461029 / 870,
]


def zeta_euler_maclaurin(s: float, cutoff: int = 60, terms: int = 14) -> float:
    """zeta(s) by Euler-Maclaurin with a power-sum head, valid well past
    the s in (-2, 1) range the tests need; error far below 1e-12 there."""
    total = sum(n ** (-s) for n in range(1, cutoff))
    total += cutoff ** (1.0 - s) / (s - 1.0) + 0.5 * cutoff ** (-s)
    for j in range(1, terms + 1):
        poch = 1.0
        for i in range(2 * j - 1):
            poch *= s + i
        total += _BERNOULLI[j - 1] / math.factorial(2 * j) * poch * cutoff ** (-s - 2 * j + 1)
    return total


_GL64 = np.polynomial.legendre.leggauss(64)


def _integrate_subdivided(f, a: float, b: float, splits: int = 40) -> float:
    """Integral of f over [a, b] with geometric refinement toward a,
    where the integrands here lose smoothness."""
    nodes, weights = _GL64
    parts = []
    hi = b
    for _ in range(splits):
        lo = a + (hi - a) / 2.0
        mid = 0.5 * (hi + lo)
        half = 0.5 * (hi - lo)
        parts.append(half * math.fsum(weights * f(mid + half * nodes)))
        hi = lo
    lo = a
    mid = 0.5 * (hi + lo)
    half = 0.5 * (hi - lo)
    parts.append(half * math.fsum(weights * f(mid + half * nodes)))
    return math.fsum(parts)


def continuous_energy_quadrature(lam: float, d: int) -> float:
    """I_lam of the uniform measure on S^d by quadrature of the defining
    double integral, reduced to one polar angle."""

    def weighted(theta: np.ndarray) -> np.ndarray:
        return (2.0 * np.sin(theta / 2.0)) ** lam * np.sin(theta) ** (d - 1)

    def weight_only(theta: np.ndarray) -> np.ndarray:
        return np.sin(theta) ** (d - 1)

    num = _integrate_subdivided(weighted, 0.0, math.pi)
    den = _integrate_subdivided(weight_only, 0.0, math.pi)
    return num / den


def pairwise_energy_turns(turns: np.ndarray, lam: float) -> float:
    """H of a circle configuration given as turn fractions, direct O(N^2)."""
    total = 0.0
    for i in range(1, len(turns)):
        total += 2.0 * math.fsum(
            (2.0 * np.abs(np.sin(np.pi * (turns[i] - turns[:i])))) ** lam
        )
    return total


def sequential_potentials_turns(turns: np.ndarray, lam: float) -> np.ndarray:
    """U_n(a_n) for n = 1..len(turns)-1 by direct summation."""
    out = np.zeros(len(turns))
    for n in range(1, len(turns)):
        out[n] = math.fsum(
            (2.0 * np.abs(np.sin(np.pi * (turns[n] - turns[:n])))) ** lam
        )
    return out


def pairwise_energy_points(points: np.ndarray, lam: float) -> float:
    """H of a point configuration in R^(d+1), direct O(N^2)."""
    total = 0.0
    for i in range(1, len(points)):
        d2 = np.sum((points[:i] - points[i]) ** 2, axis=1)
        total += 2.0 * math.fsum(d2 ** (lam / 2.0))
    return total


def brute_greedy_circle_turns(lam: float, count: int, grid_exp: int = 20) -> list[float]:
    """Greedy maximization over a 2^grid_exp circle grid, smallest-turn
    tie-break, as an implementation-free reference for the first points."""
    size = 1 << grid_exp
    grid = np.arange(size, dtype=float) / size
    turns = [0.0]
    u = np.zeros(size)
    for _ in range(count - 1):
        u += (2.0 * np.abs(np.sin(np.pi * (grid - turns[-1])))) ** lam
        best = float(np.max(u))
        near = np.flatnonzero(u >= best - 1e-9)
        # group grid points hugging the same peak; represent each peak by
        # its best grid point, then take the smallest positive turn
        peaks = []
        cluster = [near[0]]
        for idx in near[1:]:
            if idx == cluster[-1] + 1:
                cluster.append(idx)
            else:
                peaks.append(max(cluster, key=lambda i: u[i]))
                cluster = [idx]
        peaks.append(max(cluster, key=lambda i: u[i]))
        positive = [float(grid[i]) for i in peaks if grid[i] > 0.0]
        turns.append(min(positive) if positive else float(grid[peaks[0]]))
    return turns
