"""Truncated formal power series with exact rational coefficients.

A :class:`TruncatedSeries` stores the coefficients of ``t^0 .. t^N`` and
nothing else; coefficients above ``N`` are unknown rather than zero, so two
series can only be combined when they share the same ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import TruncationMismatch

DEFAULT_TRUNCATION = 40


@dataclass(frozen=True)
class TruncatedSeries:
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("a truncated series needs at least the constant coefficient")
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def truncation_degree(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def from_coefficients(cls, coeffs: Iterable, N: int) -> "TruncatedSeries":
        """Pad (with zeros) or cut ``coeffs`` to exactly ``N + 1`` entries."""
        if N < 0:
            raise ValueError(f"truncation degree must be >= 0, got {N}")
        out = [Fraction(0)] * (N + 1)
        for d, c in enumerate(coeffs):
            if d > N:
                break
            out[d] = Fraction(c)
        return cls(tuple(out))

    @classmethod
    def zero(cls, N: int) -> "TruncatedSeries":
        return cls.from_coefficients((), N)

    @classmethod
    def one(cls, N: int) -> "TruncatedSeries":
        return cls.from_coefficients((1,), N)

    def __getitem__(self, degree: int) -> Fraction:
        if not 0 <= degree <= self.truncation_degree:
            raise IndexError(
                f"degree {degree} outside 0..{self.truncation_degree}")
        return self.coefficients[degree]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, other.scale(-1))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def __neg__(self) -> "TruncatedSeries":
        return self.scale(-1)

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries(tuple(c * a for a in self.coefficients))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self.coefficients)
        return f"TruncatedSeries([{terms}], N={self.truncation_degree})"


def _check_same_truncation(a: TruncatedSeries, b: TruncatedSeries) -> int:
    if a.truncation_degree != b.truncation_degree:
        raise TruncationMismatch(
            f"truncation degrees differ: {a.truncation_degree} vs {b.truncation_degree}")
    return a.truncation_degree


def series_from_ranks(ranks: Mapping[int, int], N: int) -> TruncatedSeries:
    """Generating function ``sum_d ranks[d] t^d`` cut at degree ``N``.

    The constant term is always 0 and degrees above ``N`` are dropped.
    """
    if N < 0:
        raise ValueError(f"truncation degree must be >= 0, got {N}")
    out = [Fraction(0)] * (N + 1)
    for degree, rank in ranks.items():
        if 1 <= degree <= N:
            out[degree] = Fraction(rank)
    return TruncatedSeries(tuple(out))


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_same_truncation(a, b)
    return TruncatedSeries(tuple(x + y for x, y in zip(a.coefficients, b.coefficients)))


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common degree."""
    N = _check_same_truncation(a, b)
    # Sparse operand outside: factors like (1 - t^k)^l are mostly zeros.
    if sum(1 for c in a.coefficients if c) > sum(1 for c in b.coefficients if c):
        a, b = b, a
    bc = b.coefficients
    out = [Fraction(0)] * (N + 1)
    for i, ai in enumerate(a.coefficients):
        if not ai:
            continue
        for j in range(N - i + 1):
            bj = bc[j]
            if bj:
                out[i + j] += ai * bj
    return TruncatedSeries(tuple(out))


def series_reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse modulo ``t^(N+1)``.

    Uses the triangular recurrence ``b_0 = 1/a_0``,
    ``b_k = -(1/a_0) * sum_{i=1..k} a_i b_{k-i}``.
    """
    ac = a.coefficients
    if ac[0] == 0:
        raise ZeroDivisionError("series has zero constant term and no reciprocal")
    N = a.truncation_degree
    inv0 = 1 / ac[0]
    b = [inv0] + [Fraction(0)] * N
    support = [i for i in range(1, N + 1) if ac[i]]
    for k in range(1, N + 1):
        acc = Fraction(0)
        for i in support:
            if i > k:
                break
            acc += ac[i] * b[k - i]
        b[k] = -inv0 * acc
    return TruncatedSeries(tuple(b))
