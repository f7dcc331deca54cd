"""Rational homotopy models of pages, fibres and bindings.

Four kinds of model are supported: a point, a sphere, a finite wedge of
spheres, and a rationally elliptic space given directly by the ranks of its
rational homotopy groups.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from scipy.optimize import bisect

from .errors import ModelError
from .lie import GradedRanks, free_lie_ranks


@dataclass(frozen=True)
class Contractible:
    pass


@dataclass(frozen=True)
class Sphere:
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ModelError(f"sphere dimension must be an integer >= 1, got {self.n!r}")


@dataclass(frozen=True)
class WedgeOfSpheres:
    """Wedge of spheres; ``dims`` is a multiset, stored sorted."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(sorted(self.dims))
        if not dims:
            raise ModelError("a wedge needs at least one sphere")
        for d in dims:
            if isinstance(d, bool) or not isinstance(d, int) or d < 1:
                raise ModelError(f"sphere dimension must be an integer >= 1, got {d!r}")
        object.__setattr__(self, "dims", dims)


@dataclass(frozen=True)
class EllipticRanks:
    """A rationally elliptic space given by the ranks of pi_*(X) (x) Q."""

    ranks: GradedRanks

    def __post_init__(self):
        ranks = GradedRanks(self.ranks)
        if ranks and min(ranks) < 2:
            raise ModelError("elliptic rank data must start in degree >= 2")
        object.__setattr__(self, "ranks", ranks)


SpaceModel = Union[Contractible, Sphere, WedgeOfSpheres, EllipticRanks]


def wedge(dims: Iterable[int]) -> SpaceModel:
    """Wedge of spheres with the empty and singleton cases normalized."""
    dims = tuple(dims)
    if not dims:
        return Contractible()
    if len(dims) == 1:
        return Sphere(dims[0])
    return WedgeOfSpheres(dims)


def normalize(model: SpaceModel) -> SpaceModel:
    if isinstance(model, WedgeOfSpheres) and len(model.dims) == 1:
        return Sphere(model.dims[0])
    return model


def sphere_dims(model: SpaceModel) -> tuple[int, ...]:
    """Sphere dimensions of a point/sphere/wedge model (empty for a point)."""
    if isinstance(model, Contractible):
        return ()
    if isinstance(model, Sphere):
        return (model.n,)
    if isinstance(model, WedgeOfSpheres):
        return model.dims
    raise ModelError("elliptic rank data is not a wedge of spheres")


def _require_simply_connected(dims):
    if any(d == 1 for d in dims):
        raise ModelError(
            "model contains a 1-sphere; loop-space ranks need a simply connected space")


def loop_ranks(model: SpaceModel, N: int) -> GradedRanks:
    """Ranks of pi_*(Omega X) (x) Q in degrees 1..N."""
    if N < 1:
        raise ValueError(f"truncation degree must be >= 1, got {N}")
    model = normalize(model)
    if isinstance(model, Contractible):
        return GradedRanks()
    if isinstance(model, EllipticRanks):
        return model.ranks.shift(-1).truncate(N)
    if isinstance(model, Sphere):
        n = model.n
        _require_simply_connected((n,))
        if n % 2:
            return GradedRanks({n - 1: 1}).truncate(N)
        return GradedRanks({n - 1: 1, 2 * n - 2: 1}).truncate(N)
    if isinstance(model, WedgeOfSpheres):
        _require_simply_connected(model.dims)
        return free_lie_ranks(Counter(d - 1 for d in model.dims), N)
    raise TypeError(f"not a space model: {model!r}")


def space_ranks(model: SpaceModel, N: int) -> GradedRanks:
    """Ranks of pi_*(X) (x) Q in degrees 1..N."""
    if N < 2:
        raise ValueError(f"truncation degree must be >= 2, got {N}")
    model = normalize(model)
    if isinstance(model, EllipticRanks):
        return model.ranks.truncate(N)
    if model == Sphere(1):
        return GradedRanks({1: 1})
    return loop_ranks(model, N - 1).shift(1)


def suspend(model: SpaceModel, k: int = 1) -> SpaceModel:
    """k-fold suspension of a point, sphere or wedge of spheres."""
    if k < 1:
        raise ValueError(f"suspension order must be >= 1, got {k}")
    if isinstance(model, EllipticRanks):
        raise ModelError(
            "cannot suspend a model given only by rational homotopy ranks")
    if isinstance(model, Contractible):
        return model
    return wedge(d + k for d in sphere_dims(model))


def is_rationally_elliptic(model: SpaceModel) -> bool:
    if isinstance(model, WedgeOfSpheres):
        return len(model.dims) == 1
    if isinstance(model, (Contractible, Sphere, EllipticRanks)):
        return True
    raise TypeError(f"not a space model: {model!r}")


class GrowthClass(enum.Enum):
    POLYNOMIAL_OR_FINITE = "polynomial_or_finite"
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class GrowthReport:
    """``partial_sums[d]`` is the total rank of pi_i(X) (x) Q over i <= d,
    for d = 0..N."""

    partial_sums: tuple[int, ...]
    classification: GrowthClass
    growth_base: Optional[float] = None
    ranks: GradedRanks = field(default_factory=GradedRanks, compare=False)

    def __post_init__(self):
        if (self.growth_base is None) != (self.classification is GrowthClass.POLYNOMIAL_OR_FINITE):
            raise ValueError("growth_base is present exactly for exponential growth")
        if self.growth_base is not None and not self.growth_base > 1:
            raise ValueError(f"growth base must exceed 1, got {self.growth_base}")


GROWTH_RTOL = 1e-12


def growth_base_from_generators(generators: Mapping[int, int]) -> float:
    """1/R for R the root in (0, 1) of ``1 - sum_k g_k t^k``, where ``g_k``
    counts loop-space generators in degree ``k``."""
    gens = {k: c for k, c in generators.items() if c}
    if sum(gens.values()) < 2 or min(gens) < 1:
        raise ModelError("growth base needs a wedge of >= 2 simply connected spheres")

    def f(t):
        return 1.0 - sum(c * t ** k for k, c in gens.items())

    root = bisect(f, 0.0, 1.0, xtol=1e-300, rtol=GROWTH_RTOL, maxiter=2000)
    return 1.0 / root


def wedge_growth_base(dims: Iterable[int]) -> float:
    """Exponential growth rate of pi_*(X) (x) Q for a wedge of spheres."""
    return growth_base_from_generators(Counter(d - 1 for d in dims))


def growth_estimate(model: SpaceModel, N: int) -> GrowthReport:
    if N < 10:
        raise ValueError(f"growth estimate needs truncation >= 10, got {N}")
    if not isinstance(model, (Sphere, WedgeOfSpheres)):
        raise ModelError("growth estimate is defined for spheres and wedges of spheres")
    model = normalize(model)
    ranks = space_ranks(model, N)
    partial, acc = [], 0
    for d in range(N + 1):
        acc += ranks[d] if d >= 1 else 0
        partial.append(acc)
    if sum(1 for s in partial if s) < 3:
        raise ValueError(
            f"truncation {N} leaves fewer than 3 nonzero partial sums; increase it")
    if isinstance(model, WedgeOfSpheres):
        return GrowthReport(tuple(partial), GrowthClass.EXPONENTIAL,
                            wedge_growth_base(model.dims), ranks)
    return GrowthReport(tuple(partial), GrowthClass.POLYNOMIAL_OR_FINITE, None, ranks)
