"""Exact greedy chord-power energy machinery on the unit circle.

The canonical greedy sequence with a_0 = 1 is the base-2 bit-reversal
(van der Corput) angle sequence: point n sits at turn vdc_2(n), every
prefix of size 2^m is the set of 2^m-th roots of unity, and consecutive
odd points are antipodes of their predecessors.  Angles are kept as exact
dyadic rationals so that trigonometry happens once per chord.

Energies of sections are evaluated through the set-bit decomposition of
N: with N = 2^(n_1) + ... + 2^(n_p),

    H(alpha_N)   = sum_{k<p} (sum_{j>k} 2^(n_j-n_k)) L(2^(n_k+1))
                 + sum_{k<=p} (1 - sum_{j>k} 2^(n_j-n_k+1)) L(2^(n_k))
    U_N(a_N)     = sum_k  U(2^(n_k))

where L(N) is the energy of N equally spaced points and U(N) the
potential of N equally spaced points at an arc midpoint.

Second-order quantities (H - N^2 I, U_N(a_N) - N I, and the normalized
deficit R(N)) cannot be formed by subtracting doubles of size N^2 I: at
N = 2^16 the cancellation burns through the entire mantissa.  They are
instead assembled from the per-point deficit

    roots_energy_gap(lam, N) = L(N)/N - N I
                             = 2^lam * sum_k [g(k/N) - mean of g on cell k]

with g(t) = sin(pi t)^lam, which sums O(1)-sized per-cell quadrature
differences and never forms the large intermediates.  Cells are averaged
with Gauss-Legendre; the two end cells, where g has a fractional-power
singularity, are refined geometrically toward the endpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .specfun import continuous_energy

__all__ = [
    "DyadicAngle",
    "SequenceRecord",
    "canonical_sequence",
    "chord",
    "roots_energy",
    "roots_energy_gap",
    "midpoint_potential",
    "greedy_energy_exact",
    "greedy_extremal_potential",
    "section_energy_gap",
    "extremal_potential_gap",
    "r_lambda",
    "kappa",
    "second_order_series",
]


def _require_lambda(lam: float, *, upper: float = 2.0, closed_upper: bool = False) -> None:
    ok = 0.0 < lam < upper or (closed_upper and lam == upper)
    if not ok:
        span = f"(0, {upper}]" if closed_upper else f"(0, {upper})"
        raise ValueError(f"lambda must lie in {span}, got {lam}")


@dataclass(frozen=True)
class DyadicAngle:
    """The circle point exp(2 pi i numerator / 2^level), fraction fully reduced."""

    numerator: int
    level: int

    def __post_init__(self) -> None:
        if self.level < 0 or not 0 <= self.numerator < (1 << self.level):
            raise ValueError(f"invalid dyadic angle {self.numerator}/2^{self.level}")
        if self.numerator != 0 and self.numerator % 2 == 0:
            raise ValueError(f"dyadic angle not reduced: {self.numerator}/2^{self.level}")
        if self.numerator == 0 and self.level != 0:
            raise ValueError("zero turn must carry level 0")

    @classmethod
    def from_fraction(cls, numerator: int, level: int) -> "DyadicAngle":
        """Reduce numerator/2^level mod 1 and build the angle."""
        numerator %= 1 << level
        while level > 0 and numerator % 2 == 0:
            numerator //= 2
            level -= 1
        return cls(numerator, level)

    @property
    def turn(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.level)

    def coords(self) -> tuple[float, float]:
        theta = 2.0 * math.pi * self.numerator / (1 << self.level)
        return (math.cos(theta), math.sin(theta))

    def antipode(self) -> "DyadicAngle":
        # turn + 1/2 mod 1, computed on the common level + 1
        return DyadicAngle.from_fraction(2 * self.numerator + (1 << self.level), self.level + 1)

    def __neg__(self) -> "DyadicAngle":
        return self.antipode()


@dataclass(frozen=True)
class SequenceRecord:
    """Per-index row of the second-order series.

    ``potential_value`` is U_n(a_n), ``energy`` is H(alpha_n); both finite
    and non-negative.  ``second_order`` is (H - n^2 I) / kappa(n) and
    ``potential_gap`` is U_n(a_n) - n I, each assembled cancellation-free.
    """

    index: int
    angle: DyadicAngle
    potential_value: float
    energy: float
    second_order: float
    potential_gap: float


def _bit_reversal_turn(n: int) -> DyadicAngle:
    if n == 0:
        return DyadicAngle(0, 0)
    level = n.bit_length()
    rev = 0
    m = n
    for _ in range(level):
        rev = (rev << 1) | (m & 1)
        m >>= 1
    return DyadicAngle.from_fraction(rev, level)


def canonical_sequence(count: int) -> list[DyadicAngle]:
    """First ``count`` points of the canonical greedy sequence on the circle.

    Point n is at turn vdc_2(n).  Among the equal maximizers available at
    each even step this realization always takes the smallest positive
    turn; prefixes of size 2^m are exactly the 2^m-th roots of unity and
    a_(2k+1) = -a_(2k) for every k.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    return [_bit_reversal_turn(n) for n in range(count)]


def chord(a: DyadicAngle, b: DyadicAngle) -> float:
    """Euclidean distance between two dyadic circle points.

    The turn difference is formed in exact integer arithmetic; a single
    sine evaluation follows.
    """
    delta = a.turn - b.turn
    return 2.0 * abs(math.sin(math.pi * float(delta)))


# ----------------------------------------------------------------------
# energy of equally spaced points and the cancellation-free gap engine
# ----------------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)
_GL_XI = 0.5 * (_GL_NODES + 1.0)      # nodes mapped to (0, 1)
_GL_W = 0.5 * _GL_WEIGHTS             # weights summing to 1

_CHUNK = 1 << 21


def _sin_pow(t: np.ndarray, lam: float) -> np.ndarray:
    # fold to [0, 1/2]: the subtraction 1 - t is exact for t in [1/2, 1],
    # keeping sin(pi t) fully accurate near the right endpoint
    folded = np.minimum(t, 1.0 - t)
    return np.sin(np.pi * folded) ** lam


def roots_energy(lam: float, n: int) -> float:
    """Energy L(n) = n 2^lam sum_{k=1}^{n-1} sin(pi k / n)^lam of n equally
    spaced circle points; L(1) = 0 by convention.  Accepts 0 < lam <= 2."""
    _require_lambda(lam, closed_upper=True)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return 0.0
    acc = 0.0
    for start in range(1, n, _CHUNK):
        stop = min(start + _CHUNK, n)
        k = np.arange(start, stop, dtype=float)
        acc += float(np.sum(_sin_pow(k / n, lam)))
    return n * 2.0**lam * acc


@lru_cache(maxsize=None)
def _end_cell_mean(lam: float, n: int, levels: int = 40) -> float:
    """Mean of sin(pi t)^lam over [0, 1/n], singular endpoint refined
    geometrically; the residual stub integrates the leading power law."""
    h = 1.0 / n
    parts = []
    hi = h
    for _ in range(levels):
        lo = hi / 2.0
        width = hi - lo
        u = lo + _GL_XI * width
        parts.append(width * math.fsum(_GL_W * np.sin(np.pi * u) ** lam))
        hi = lo
    parts.append(math.pi**lam * hi ** (lam + 1.0) / (lam + 1.0))
    return math.fsum(parts) / h


@lru_cache(maxsize=None)
def roots_energy_gap(lam: float, n: int) -> float:
    """L(n)/n - n I, the per-point energy deficit of n equally spaced
    points below the continuum value.  Strictly negative; tends to 0 like
    second_order_constant(lam) * n^(-lam).

    Equal in exact arithmetic to forming the deficit from roots_energy,
    but assembled from per-cell quadrature differences so the result
    carries full double accuracy at any n.
    """
    _require_lambda(lam)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return -continuous_energy(lam, 1)
    h = 1.0 / n
    m_end = _end_cell_mean(lam, n)
    parts = []
    for start in range(1, n - 1, _CHUNK):
        stop = min(start + _CHUNK, n - 1)
        t = np.arange(start, stop, dtype=float) / n
        f_node = _sin_pow(t, lam)
        for j in range(len(_GL_XI)):
            f_cell = _sin_pow(t + _GL_XI[j] * h, lam)
            parts.append(_GL_W[j] * math.fsum(f_node - f_cell))
    # cell k = 0 has node value g(0) = 0; cell k = n-1 has the mirrored
    # end-cell mean by the symmetry g(1 - t) = g(t)
    parts.append(-m_end)
    parts.append(math.sin(math.pi / n) ** lam - m_end)
    return 2.0**lam * math.fsum(parts)


def r_lambda(lam: float, n: int) -> float:
    """Normalized second-order deficit R(n) = (L(n) - n^2 I) / n^(1-lam).

    Strictly negative for every n; converges to
    second_order_constant(lam) with an O(n^-2) gap.
    """
    _require_lambda(lam)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return n**lam * roots_energy_gap(lam, n)


def midpoint_potential(lam: float, n: int) -> float:
    """Potential of n equally spaced points at an arc midpoint.

    Evaluated both by direct summation and through the identity
    U(n) = L(2n)/(2n) - L(n)/n; the two routes must agree to a relative
    1e-12 or ArithmeticError is raised.
    """
    _require_lambda(lam)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    k = np.arange(n, dtype=float)
    direct = 2.0**lam * float(np.sum(np.abs(np.sin(np.pi * (2.0 * k + 1.0) / (2.0 * n))) ** lam))
    via_identity = roots_energy(lam, 2 * n) / (2 * n) - roots_energy(lam, n) / n
    if abs(direct - via_identity) > 1e-12 * max(abs(direct), 1.0):
        raise ArithmeticError(
            f"midpoint potential self-check failed at lam={lam}, n={n}: "
            f"{direct!r} vs {via_identity!r}"
        )
    return direct


def _coefficients(n: int) -> list[tuple[int, float, float]]:
    """Per-bit coefficients of the section formulas.

    For each set bit n_k of n (most significant first) returns
    (n_k, c_double, c_single) where c_double multiplies the L(2^(n_k+1))
    term and c_single the L(2^(n_k)) term.
    """
    exps = []
    m = int(n)
    while m:
        b = m.bit_length() - 1
        exps.append(b)
        m -= 1 << b
    p = len(exps)
    out = []
    for k, nk in enumerate(exps):
        inner = math.fsum(2.0 ** (exps[j] - nk) for j in range(k + 1, p))
        c_double = inner if k < p - 1 else 0.0
        c_single = 1.0 - 2.0 * inner
        out.append((nk, c_double, c_single))
    return out


def greedy_energy_exact(lam: float, n: int) -> float:
    """Energy H(alpha_n) of the first n greedy points via the set-bit
    formula.  Valid for 0 < lam < 2 and, as a boundary regression case
    backed by the lam = 2 closed forms, for lam = 2."""
    _require_lambda(lam, closed_upper=True)
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    total = 0.0
    for nk, c_double, c_single in _coefficients(n):
        if c_double:
            total += c_double * roots_energy(lam, 1 << (nk + 1))
        total += c_single * roots_energy(lam, 1 << nk)
    return total


def greedy_extremal_potential(lam: float, n: int) -> float:
    """U_n(a_n): the maximal potential value reached at step n, equal to
    the sum of midpoint potentials over the set bits of n."""
    _require_lambda(lam)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return math.fsum(
        midpoint_potential(lam, 1 << nk) for nk, _, _ in _coefficients(n)
    )


def section_energy_gap(lam: float, n: int) -> float:
    """H(alpha_n) - n^2 I, assembled cancellation-free from per-point
    deficits of the constituent root configurations."""
    _require_lambda(lam)
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    total = 0.0
    for nk, c_double, c_single in _coefficients(n):
        if c_double:
            m = 1 << (nk + 1)
            total += c_double * m * roots_energy_gap(lam, m)
        m = 1 << nk
        total += c_single * m * roots_energy_gap(lam, m)
    return total


def extremal_potential_gap(lam: float, n: int) -> float:
    """U_n(a_n) - n I, strictly inside (0, I) for every n >= 1."""
    _require_lambda(lam)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    total = 0.0
    for nk, _, _ in _coefficients(n):
        m = 1 << nk
        total += roots_energy_gap(lam, 2 * m) - roots_energy_gap(lam, m)
    return total


def kappa(lam: float, n: int) -> float:
    """Growth normalization of the second-order energy term: n^(1-lam)
    below lam = 1, log n at lam = 1, constant above."""
    if lam < 1.0:
        return n ** (1.0 - lam)
    if lam == 1.0:
        return math.log(n)
    return 1.0


def second_order_series(lam: float, n_max: int) -> list[SequenceRecord]:
    """Second-order records for every 2 <= n <= n_max.

    Each record carries the raw potential and energy values together with
    the normalized energy deficit (H - n^2 I)/kappa(n) and the potential
    gap U_n(a_n) - n I.
    """
    _require_lambda(lam)
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    i_circle = continuous_energy(lam, 1)
    # warm the per-power cache in increasing order
    for j in range(n_max.bit_length() + 1):
        roots_energy_gap(lam, 1 << j)
    records = []
    for n in range(2, n_max + 1):
        e_gap = section_energy_gap(lam, n)
        p_gap = extremal_potential_gap(lam, n)
        records.append(
            SequenceRecord(
                index=n,
                angle=_bit_reversal_turn(n),
                potential_value=n * i_circle + p_gap,
                energy=n * n * i_circle + e_gap,
                second_order=e_gap / kappa(lam, n),
                potential_gap=p_gap,
            )
        )
    return records
