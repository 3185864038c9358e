"""Binary decomposition of an integer and the combinatorial square identity.

The exact circle-energy formulas are indexed by the set bits of N written
most significant first, N = 2^(n_1) + ... + 2^(n_p) with n_1 > ... > n_p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["BinaryRep", "decompose", "square_identity_check"]


@dataclass(frozen=True)
class BinaryRep:
    """Set-bit exponents of a positive integer, strictly decreasing."""

    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.exponents:
            raise ValueError("empty exponent list")
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"negative exponent in {self.exponents}")
        if any(a <= b for a, b in zip(self.exponents, self.exponents[1:])):
            raise ValueError(f"exponents not strictly decreasing: {self.exponents}")

    @property
    def tau(self) -> int:
        """Number of ones in the binary representation."""
        return len(self.exponents)

    def reconstruct(self) -> int:
        return sum(1 << e for e in self.exponents)


def decompose(n: int) -> BinaryRep:
    """Set bits of n >= 1, most significant first."""
    if n < 1:
        raise ValueError(f"decompose requires n >= 1, got {n}")
    n = int(n)
    exps = []
    while n:
        b = n.bit_length() - 1
        exps.append(b)
        n -= 1 << b
    return BinaryRep(tuple(exps))


def square_identity_check(n: int) -> bool:
    """Verify in exact rational arithmetic that

        n^2 = sum_{k<p} (sum_{j>k} 2^(n_j - n_k)) 2^(2(n_k+1))
            + sum_{k<=p} (1 - sum_{j>k} 2^(n_j - n_k + 1)) 2^(2 n_k)

    over the decomposition of n.  True for every n >= 2.
    """
    if n < 2:
        raise ValueError(f"square_identity_check requires n >= 2, got {n}")
    exps = decompose(n).exponents
    p = len(exps)
    total = Fraction(0)
    for k in range(p):
        nk = exps[k]
        inner = sum(Fraction(2) ** (exps[j] - nk) for j in range(k + 1, p))
        if k < p - 1:
            total += inner * Fraction(2) ** (2 * (nk + 1))
        total += (1 - 2 * inner) * Fraction(2) ** (2 * nk)
    return total == n * n
