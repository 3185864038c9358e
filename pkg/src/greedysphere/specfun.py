"""Special-function constants used by the energy formulas.

Everything here is a plain double-precision function of one or two
arguments: the gamma function, the zeta function on the negative ray
(-2, 0), the continuous chord-power energy of the uniform measure on
S^d, and the constant governing second-order energy asymptotics on the
circle.
"""

from __future__ import annotations

import math

__all__ = [
    "gamma",
    "zeta_neg",
    "continuous_energy",
    "maximal_energy",
    "second_order_constant",
]

# Lanczos coefficients, g = 7, 9 terms.  Relative error below 1e-13 on
# (0, 50] (checked against math.gamma in the test suite).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma(x: float) -> float:
    """Gamma function for real x > 0 via the Lanczos approximation."""
    if not x > 0.0:
        raise ValueError(f"gamma requires x > 0, got {x}")
    if x > 141.0:
        # double overflow threshold is ~171.6; stay clear of the
        # t**(z+0.5) intermediate blowing up first
        raise OverflowError(f"gamma({x}) exceeds double range of this implementation")
    z = x - 1.0
    series = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        series += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * series


def _zeta_one_plus(s: float, terms: int = 36) -> float:
    """zeta(s) for s > 1 through the alternating eta series.

    Uses the Cohen / Rodriguez Villegas / Zagier acceleration of
    eta(s) = sum (-1)^(k-1) k^(-s); with n terms the error decays like
    (3 + sqrt(8))^(-n), so 36 terms leave an error far below 1e-12
    uniformly on s in (1, 3).
    """
    n = terms
    d = (3.0 + math.sqrt(8.0)) ** n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    acc = 0.0
    for k in range(n):
        c = b - c
        acc += c * (k + 1.0) ** (-s)
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    eta = acc / d
    return eta / (1.0 - 2.0 ** (1.0 - s))


def zeta_neg(lam: float) -> float:
    """zeta(-lam) for 0 < lam < 2.

    Evaluated through the functional equation
    zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
    at s = -lam, with zeta(1 + lam) from the accelerated eta series.
    The result is strictly negative on this range.
    """
    if not 0.0 < lam < 2.0:
        raise ValueError(f"zeta_neg requires 0 < lam < 2, got {lam}")
    return (
        2.0 ** (-lam)
        * math.pi ** (-lam - 1.0)
        * math.sin(-math.pi * lam / 2.0)
        * gamma(1.0 + lam)
        * _zeta_one_plus(1.0 + lam)
    )


def continuous_energy(lam: float, d: int) -> float:
    """Chord-power energy I_lam of the uniform measure on S^d, 0 < lam < 2.

    Computed from the gamma-quotient closed form

        Gamma((d+1)/2) Gamma(d+lam) / (Gamma((d+lam+1)/2) Gamma(d+lam/2)).

    The equivalent form 2^(d+lam-1)/sqrt(pi) *
    Gamma((d+1)/2) Gamma((d+lam)/2) / Gamma(d+lam/2) is evaluated as well
    and the two must agree to 1e-12 (relative); a disagreement signals a
    broken gamma implementation and raises ArithmeticError.
    """
    if not 0.0 < lam < 2.0:
        raise ValueError(
            f"continuous_energy requires 0 < lam < 2, got {lam}; "
            "use maximal_energy for lam >= 2"
        )
    if d < 1 or int(d) != d:
        raise ValueError(f"dimension must be a positive integer, got {d}")
    d = int(d)
    a = gamma((d + 1) / 2.0) * gamma(d + lam) / (gamma((d + lam + 1) / 2.0) * gamma(d + lam / 2.0))
    b = (
        2.0 ** (d + lam - 1.0)
        / math.sqrt(math.pi)
        * gamma((d + 1) / 2.0)
        * gamma((d + lam) / 2.0)
        / gamma(d + lam / 2.0)
    )
    if abs(a - b) > 1e-12 * abs(a):
        raise ArithmeticError(
            f"closed forms of the continuous energy disagree: {a!r} vs {b!r}"
        )
    return a


def maximal_energy(lam: float) -> float:
    """Largest achievable mean chord-power energy for lam >= 2, equal to 2^(lam-1)."""
    if not lam >= 2.0:
        raise ValueError(f"maximal_energy requires lam >= 2, got {lam}")
    return 2.0 ** (lam - 1.0)


def second_order_constant(lam: float) -> float:
    """(2 pi)^lam * 2 zeta(-lam): the limit of the normalized second-order
    energy deficit of equally spaced circle points.  Strictly negative on
    0 < lam < 2."""
    if not 0.0 < lam < 2.0:
        raise ValueError(f"second_order_constant requires 0 < lam < 2, got {lam}")
    return (2.0 * math.pi) ** lam * 2.0 * zeta_neg(lam)
