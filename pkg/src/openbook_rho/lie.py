"""Ranks of free graded Lie algebras.

Degrees are loop-space degrees: a sphere ``S^n`` contributes a generator in
degree ``n - 1``.  The ranks ``l_k`` of the free graded Lie algebra ``L(W)``
are pinned down by the Poincare-Birkhoff-Witt identity

    prod_{k odd} (1 + t^k)^{l_k} * prod_{k even} (1 - t^k)^{-l_k} = 1 / (1 - W(t))

which is solved one degree at a time.
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from typing import Iterator

from .errors import IntegralityError
from .series import TruncatedSeries, series_from_ranks, series_mul, series_reciprocal


class GradedRanks(Mapping):
    """Immutable map ``degree -> rank`` with positive degrees and positive ranks.

    Zero ranks are dropped on construction, so an absent degree means rank 0
    and ``ranks[d]`` returns 0 for any positive ``d`` not in the support.
    Compares equal to any mapping with the same nonzero entries.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[int, int] | None = None):
        clean = {}
        for degree, rank in (entries or {}).items():
            if isinstance(degree, bool) or not isinstance(degree, int):
                raise TypeError(f"degree must be an int, got {degree!r}")
            if isinstance(rank, bool) or not isinstance(rank, int):
                raise TypeError(f"rank at degree {degree} must be an int, got {rank!r}")
            if degree < 1:
                raise ValueError(f"degrees must be >= 1, got {degree}")
            if rank < 0:
                raise ValueError(f"rank at degree {degree} is negative: {rank}")
            if rank:
                clean[degree] = rank
        self._entries = dict(sorted(clean.items()))

    def __getitem__(self, degree: int) -> int:
        return self._entries.get(degree, 0)

    def __contains__(self, degree) -> bool:
        return degree in self._entries

    def __iter__(self) -> Iterator[int]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __hash__(self) -> int:
        return hash(tuple(self._entries.items()))

    def __repr__(self) -> str:
        return f"GradedRanks({self._entries!r})"

    def __add__(self, other: Mapping[int, int]) -> "GradedRanks":
        out = dict(self._entries)
        for d, r in other.items():
            out[d] = out.get(d, 0) + r
        return GradedRanks(out)

    def shift(self, k: int) -> "GradedRanks":
        """Move every entry ``k`` degrees up (down if ``k < 0``).

        Entries that would land in degree < 1 are an error, never dropped.
        """
        return GradedRanks({d + k: r for d, r in self._entries.items()})

    def truncate(self, N: int) -> "GradedRanks":
        return GradedRanks({d: r for d, r in self._entries.items() if d <= N})

    def total(self) -> int:
        return sum(self._entries.values())

    @property
    def top_degree(self) -> int:
        return max(self._entries, default=0)

    def to_dict(self) -> dict[int, int]:
        return dict(self._entries)


def _factor_power(k: int, exponent: int, N: int) -> TruncatedSeries:
    """The PBW factor for ``exponent`` copies of degree ``k``, i.e.
    ``(1 + t^k)^e`` for odd ``k`` and ``(1 - t^k)^(-e)`` for even ``k``.

    ``exponent`` may be negative, giving the inverse factor.
    """
    # (1 + s t^k)^p with (s, p) = (1, e) for odd k, (-1, -e) for even k.
    sign, power = (1, exponent) if k % 2 else (-1, -exponent)
    coeffs = [Fraction(0)] * (N + 1)
    c = Fraction(1)
    j = 0
    while k * j <= N:
        coeffs[k * j] = c
        c = c * (power - j) / (j + 1) * sign
        j += 1
        if c == 0:
            break
    return TruncatedSeries(tuple(coeffs))


def free_lie_ranks(generators: Mapping[int, int], N: int) -> GradedRanks:
    """Ranks of the free graded Lie algebra on ``generators`` in degrees 1..N.

    >>> dict(free_lie_ranks({1: 1}, 8))
    {1: 1, 2: 1}
    """
    if N < 1:
        raise ValueError(f"truncation degree must be >= 1, got {N}")
    gens = GradedRanks(generators)
    # Remaining part of 1/(1 - W) after dividing out factors found so far;
    # it is always 1 + O(t^k) when degree k is examined.
    remaining = series_reciprocal(TruncatedSeries.one(N) - series_from_ranks(gens, N))
    ranks = {}
    for k in range(1, N + 1):
        lk = remaining[k]
        if lk.denominator != 1 or lk < 0:
            raise IntegralityError(
                f"degree {k}: extracted Lie rank {lk} is not a nonnegative integer")
        lk = int(lk)
        if lk:
            ranks[k] = lk
            remaining = series_mul(remaining, _factor_power(k, -lk, N))
    return GradedRanks(ranks)


def pbw_series(lie_ranks: Mapping[int, int], N: int) -> TruncatedSeries:
    """Reassemble the enveloping-algebra Poincare series from Lie ranks."""
    out = TruncatedSeries.one(N)
    for k, lk in GradedRanks(lie_ranks).items():
        if k > N:
            raise ValueError(f"Lie rank at degree {k} exceeds truncation {N}")
        out = series_mul(out, _factor_power(k, lk, N))
    return out


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError(f"mobius is defined for n >= 1, got {n}")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def witt_number(m: int, k: int) -> int:
    """Number of Lyndon words of length ``k`` over ``m`` letters,
    ``(1/k) * sum_{d | k} mobius(d) * m^(k/d)``."""
    if m < 1 or k < 1:
        raise ValueError(f"need m >= 1 and k >= 1, got m={m}, k={k}")
    total = sum(mobius(d) * m ** (k // d) for d in range(1, k + 1) if k % d == 0)
    q, r = divmod(total, k)
    assert r == 0, (m, k, total)
    return q
