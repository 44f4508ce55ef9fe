"""Independent oracles used across the test suite.

Everything here is deliberately implemented by a different route than the
library (truncated power-series algebra instead of binomial sums), so an
agreement between the two is meaningful.
"""
from __future__ import annotations

import random
from fractions import Fraction


def series_mul(a, b, trunc):
    """Truncated product of two power series given as coefficient lists."""
    out = [Fraction(0)] * (trunc + 1)
    for i, ai in enumerate(a[: trunc + 1]):
        if not ai:
            continue
        for j, bj in enumerate(b[: trunc + 1 - i]):
            if bj:
                out[i + j] += ai * bj
    return out


def series_pow(base, n, trunc):
    """base**n as a truncated power series, by repeated multiplication."""
    out = [Fraction(1)] + [Fraction(0)] * trunc
    for _ in range(n):
        out = series_mul(out, base, trunc)
    return out


def geom_map_series(trunc):
    """Power series of x/(1-x) up to degree trunc: [0, 1, 1, 1, ...]."""
    return [Fraction(0)] + [Fraction(1)] * trunc


def compose_with_geom_map(poly_coeffs, trunc):
    """Expand p(x/(1-x)) as a power series truncated at degree trunc,
    via Horner on truncated series (no binomial coefficients involved)."""
    inner = geom_map_series(trunc)
    out = [Fraction(0)] * (trunc + 1)
    for c in reversed(list(poly_coeffs)):
        out = series_mul(out, inner, trunc)
        out[0] += Fraction(c)
    return out


def double_sum_form(coeffs, k, m):
    """Unreduced double-sum form of the k-th shifted-coefficient partial:

        (-1)**k * sum_{s=1..m} c_s * sum_{n=s..m} C(n, k) * C(n-1, s-1)

    evaluated with a plain math.comb loop.
    """
    import math

    def comb0(n, r):
        return math.comb(n, r) if 0 <= r <= n else 0

    acc = Fraction(0)
    for s in range(1, m + 1):
        inner = sum(comb0(n, k) * comb0(n - 1, s - 1) for n in range(s, m + 1))
        acc += Fraction(coeffs[s]) * inner
    return acc if k % 2 == 0 else -acc


def random_fraction_vector(rng: random.Random, length: int, bound: int = 50):
    """Pseudorandom nonzero-ish Fraction vector for round-trip tests."""
    return tuple(
        Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        for _ in range(length)
    )
