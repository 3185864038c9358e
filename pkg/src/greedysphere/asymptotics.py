"""Second-order limit machinery for the circle.

For 0 < lam < 1 the normalized energy deficit (H - N^2 I)/N^(1-lam) has
subsequential limits G(theta; lam) * c where c is the second-order
constant and theta ranges over the limit-ratio vectors of binary
exponents.  Those vectors are exactly parameterized by odd integers M:
writing M = 2^(t_1) + ... + 2^(t_{r-1}) + 1, the vector is
(2^(t_1)/M, ..., 2^(t_{r-1})/M, 1/M, 0, ..., 0), realized along
N = M * 2^j.  The supremum of G over the family governs the liminf and
is approached here by exhaustive enumeration of odd M up to a bound; the
gap to the true supremum is an open bound, not asserted.

For lam = 1 the subsequences N_r(p) = (2^(rp) - 1)/(2^r - 1) give the
closed-form limits -(2^r - 2)/(r (2^r - 1)) * pi/(3 log 2), minimized at
r = 2.  For 1 < lam < 2 the liminf is bounded by the series constant
s_lam built from the per-power energy deficits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .binary import decompose
from .circle_exact import roots_energy_gap
from .specfun import continuous_energy, maximal_energy, second_order_constant

__all__ = [
    "ThetaVector",
    "theta_from_odd",
    "g_function",
    "g_function_dlambda",
    "GBarResult",
    "g_bar",
    "s_lambda",
    "s_lambda_terms",
    "subsequence_limit_lambda1",
    "LimitReport",
    "limit_report",
]


@dataclass(frozen=True)
class ThetaVector:
    """Limit-ratio vector of binary exponents, exact as fractions.

    Entries sum to 1, each is at least twice its successor, and zeros
    occupy a trailing block only.  ``generator`` is the odd integer
    whose set bits produced the vector.
    """

    entries: tuple[Fraction, ...]
    generator: int

    def __post_init__(self) -> None:
        if not self.entries or self.entries[0] <= 0:
            raise ValueError("leading entry must be positive")
        if sum(self.entries) != 1:
            raise ValueError(f"entries must sum to 1, got {self.entries}")
        for a, b in zip(self.entries, self.entries[1:]):
            if b > 0 and a < 2 * b:
                raise ValueError(f"ratio condition violated in {self.entries}")
            if a == 0 and b > 0:
                raise ValueError(f"zeros must be trailing in {self.entries}")

    @property
    def p(self) -> int:
        return len(self.entries)


def theta_from_odd(m: int, p: int) -> ThetaVector:
    """Vector (2^(t_1)/M, ..., 1/M, 0, ..., 0) of length p from odd M."""
    if m < 1 or m % 2 == 0:
        raise ValueError(f"generator must be a positive odd integer, got {m}")
    exps = decompose(m).exponents
    if len(exps) > p:
        raise ValueError(f"M={m} has {len(exps)} set bits, more than p={p}")
    entries = tuple(Fraction(1 << e, m) for e in exps) + (Fraction(0),) * (p - len(exps))
    return ThetaVector(entries, m)


def g_function(theta: ThetaVector, lam: float) -> float:
    """G(theta; lam) = sum_k theta_k^(-lam) (2(2^-lam - 1) T_k + theta_k),
    T_k the tail sum past k; zero entries contribute nothing.  Positive on
    the whole family, with G(theta; 0) = 1."""
    if not 0.0 <= lam < 1.0:
        raise ValueError(f"g_function requires 0 <= lam < 1, got {lam}")
    c = 2.0 * (2.0 ** (-lam) - 1.0)
    total = 0.0
    tail = Fraction(0)
    for k in range(theta.p - 1, -1, -1):
        th = theta.entries[k]
        if th > 0:
            thf = float(th)
            total += thf ** (-lam) * (c * float(tail) + thf)
        tail += th
    return total


def g_function_dlambda(theta: ThetaVector, lam: float) -> float:
    """Analytic d/dlam of g_function at fixed theta."""
    if not 0.0 <= lam < 1.0:
        raise ValueError(f"g_function_dlambda requires 0 <= lam < 1, got {lam}")
    ln2 = math.log(2.0)
    total = 0.0
    tail = Fraction(0)
    for k in range(theta.p - 1, -1, -1):
        th = theta.entries[k]
        if th > 0:
            thf = float(th)
            lnth = math.log(thf)
            t = float(tail)
            # d/dlam [ 2(2^-lam - 1) thf^-lam t + thf^(1-lam) ]
            total += 2.0 * t * thf ** (-lam) * (
                -ln2 * 2.0 ** (-lam) - (2.0 ** (-lam) - 1.0) * lnth
            )
            total += -lnth * thf ** (1.0 - lam)
        tail += th
    return total


@dataclass(frozen=True)
class GBarResult:
    """Enumerated supremum of G: best value, the odd witness, the bound."""

    value: float
    witness: int
    m_bound: int


def g_bar(lam: float, m_bound: int) -> GBarResult:
    """Maximum of G over vectors generated by odd M <= m_bound.

    For M with set bits at positions b the value collapses to

        G = M^(lam-1) sum_b 2^(-lam b) (2(2^-lam - 1)(M mod 2^b) + 2^b)

    which enumerates in one vectorized pass per bit position.  The result
    never decreases as the bound grows and exceeds 1 for 0 < lam < 1
    already at the M = 3 witness; it is a lower bound for the true
    supremum, which need not be attained at any finite M.
    """
    if not 0.0 < lam < 1.0:
        raise ValueError(f"g_bar requires 0 < lam < 1, got {lam}")
    if m_bound < 3:
        raise ValueError(f"m_bound must be >= 3, got {m_bound}")
    m = np.arange(1, m_bound + 1, 2, dtype=np.int64)
    acc = np.zeros(m.shape, dtype=float)
    c = 2.0 * (2.0 ** (-lam) - 1.0)
    for b in range(int(m_bound).bit_length()):
        has_bit = ((m >> b) & 1) == 1
        low = (m[has_bit] & ((1 << b) - 1)).astype(float)
        acc[has_bit] += 2.0 ** (-lam * b) * (c * low + float(1 << b))
    values = m.astype(float) ** (lam - 1.0) * acc
    best = int(np.argmax(values))
    return GBarResult(float(values[best]), int(m[best]), m_bound)


_S_EXACT_MAX = 20


def s_lambda_terms(lam: float, k_max: int) -> list[float]:
    """Terms (1/3)(1 + (-1)^k 2^(1-k)) (L(2^k) - 2^(2k) I) for k = 0..k_max.

    The first term is the negated continuous circle energy; the second is
    zero.  Each deficit comes from the cancellation-free gap engine.
    """
    if not 1.0 < lam < 2.0:
        raise ValueError(f"s_lambda requires 1 < lam < 2, got {lam}")
    out = []
    for k in range(k_max + 1):
        m = 1 << k
        coeff = (1.0 + (-1.0) ** k * 2.0 ** (1 - k)) / 3.0
        out.append(coeff * m * roots_energy_gap(lam, m))
    return out


def s_lambda(lam: float, tolerance: float) -> float:
    """Series constant bounding the liminf of H - N^2 I for 1 < lam < 2.

    Terms with 2^k <= 2^20 are evaluated exactly; beyond that the deficit
    is replaced by its second-order model c * 2^(k(1-lam)) whose total is
    a closed-form geometric expression.  The replacement error, bounded
    through the observed O(2^(-2k)) convergence of the normalized deficit,
    must undercut ``tolerance``.  The result lies below the negated
    continuous circle energy.
    """
    if not 1.0 < lam < 2.0:
        raise ValueError(f"s_lambda requires 1 < lam < 2, got {lam}")
    if not tolerance > 0.0:
        raise ValueError("tolerance must be positive")
    c = second_order_constant(lam)
    k_exact = _S_EXACT_MAX
    terms = s_lambda_terms(lam, k_exact)
    # empirical constant of the O(M^-2) gap between R(M) and its limit
    drift = max(
        abs(roots_energy_gap(lam, 1 << k) * 2.0 ** (lam * k) - c) * 4.0**k
        for k in range(8, 13)
    )
    q = 2.0 ** (1.0 - lam)
    tail_bound = drift * (2.0 / 3.0) * (q / 4.0) ** (k_exact + 1) / (1.0 - q / 4.0)
    if tail_bound >= tolerance:
        raise ValueError(
            f"cannot certify tolerance {tolerance}; residual bound {tail_bound}"
        )
    tail = (c / 3.0) * (
        q ** (k_exact + 1) / (1.0 - q)
        + 2.0 * (-(2.0 ** (-lam))) ** (k_exact + 1) / (1.0 + 2.0 ** (-lam))
    )
    return math.fsum(terms) + tail


def subsequence_limit_lambda1(r: int) -> float:
    """Limit of (H - N^2 I)/log N along N_r(p) = (2^(rp)-1)/(2^r-1) at
    lam = 1: the closed form -(2^r - 2)/(r (2^r - 1)) * pi/(3 log 2).
    Zero at r = 1; minimized at r = 2 where it equals -pi/(9 log 2)."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    return -(2.0**r - 2.0) / (r * (2.0**r - 1.0)) * math.pi / (3.0 * math.log(2.0))


@dataclass(frozen=True)
class LimitReport:
    """Predicted asymptotics of the greedy energy and potential sequences.

    ``energy_limsup``/``energy_liminf`` refer to (H - N^2 f) / kappa(N)
    with f the first-order constant; for lam >= 2 the deficit is exactly
    periodic and the parity fields hold its two values instead.  Liminf
    entries marked as bounds are one-sided (the matching equality is not
    asserted).
    """

    lam: float
    regime: str
    first_order: float
    kappa_description: str
    energy_limsup: float | None = None
    energy_liminf: float | None = None
    energy_liminf_is_bound: bool = False
    gbar_witness: int | None = None
    potential_gap_bounds: tuple[float, float] | None = None
    energy_deficit_even: float | None = None
    energy_deficit_odd: float | None = None
    potential_excess_even: float | None = None
    potential_excess_odd: float | None = None


def limit_report(lam: float, gbar_bound: int = 1 << 20, s_tolerance: float = 1e-8) -> LimitReport:
    """Collated limit predictions for the given exponent."""
    if not lam > 0.0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if lam >= 2.0:
        half = maximal_energy(lam)
        return LimitReport(
            lam=lam,
            regime="two-point collapse" if lam > 2.0 else "boundary",
            first_order=half,
            kappa_description="1",
            energy_deficit_even=0.0,
            energy_deficit_odd=-half,
            potential_excess_even=0.0,
            potential_excess_odd=half,
        )
    i_circle = continuous_energy(lam, 1)
    c = second_order_constant(lam)
    if lam < 1.0:
        enum = g_bar(lam, gbar_bound)
        return LimitReport(
            lam=lam,
            regime="sub-critical",
            first_order=i_circle,
            kappa_description="N^(1-lambda)",
            energy_limsup=c,
            energy_liminf=enum.value * c,
            energy_liminf_is_bound=True,
            gbar_witness=enum.witness,
            potential_gap_bounds=(0.0, i_circle),
        )
    if lam == 1.0:
        return LimitReport(
            lam=lam,
            regime="critical",
            first_order=i_circle,
            kappa_description="log N",
            energy_limsup=0.0,
            energy_liminf=subsequence_limit_lambda1(2),
            energy_liminf_is_bound=True,
            potential_gap_bounds=(0.0, i_circle),
        )
    return LimitReport(
        lam=lam,
        regime="super-critical",
        first_order=i_circle,
        kappa_description="1",
        energy_limsup=0.0,
        energy_liminf=s_lambda(lam, s_tolerance),
        energy_liminf_is_bound=True,
        potential_gap_bounds=(0.0, i_circle),
    )
