"""Exact integer and rational combinatorics.

Every closed-form stability constant in this package is built from the
functions here. Nothing in this module touches floating point: integers are
Python ints and rationals are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "binom",
    "d_coeff_sum",
    "d_coeff_closed",
    "ratio_sequence",
    "peak_indices",
]


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), zero when k lies outside [0, n]."""
    if n < 0:
        raise ValueError(f"binom requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _check_nk(n: int, k: int) -> None:
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")


def d_coeff_sum(n: int, k: int) -> int:
    """Bernstein coefficient bound d_{n,k} evaluated from its defining sum.

    d_{n,k} = sum_{j=0}^{min(k, n-k)} C(n, 2j) C(n-2j, k-j) 4^j
    """
    _check_nk(n, k)
    return sum(
        binom(n, 2 * j) * binom(n - 2 * j, k - j) * 4**j
        for j in range(min(k, n - k) + 1)
    )


def d_coeff_closed(n: int, k: int) -> int:
    """Closed form of d_{n,k}, namely C(2n, 2k)."""
    _check_nk(n, k)
    return math.comb(2 * n, 2 * k)


def ratio_sequence(m: int) -> list[Fraction]:
    """Return [a_0, ..., a_m] with a_k = C(2m, 2k) / C(m, k).

    The Bernstein-Schurer and Kantorovich-Schurer constants are the maximum of
    this sequence (times a fixed weight for the latter).
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return [Fraction(math.comb(2 * m, 2 * k), math.comb(m, k)) for k in range(m + 1)]


def peak_indices(m: int) -> set[int]:
    """All indices k at which ratio_sequence(m) attains its maximum."""
    seq = ratio_sequence(m)
    top = max(seq)
    return {k for k, a in enumerate(seq) if a == top}
