"""Milnor open books of isolated hypersurface singularities.

The page of the Milnor open book of ``S^{2n+1}`` at an isolated critical point
is a wedge of ``mu`` copies of ``S^n``.  For ``mu >= 2`` the page is rationally
hyperbolic while the sphere is elliptic, which rules out a monodromy that is
both of finite rational-homotopy order and nilpotent on homology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import ModelError
from .openbook import MonodromyHypothesis, OpenBookSpec, Unverified
from .spaces import SpaceModel, growth_base_from_generators, wedge

# Largest multiplicity for which the page is built as an explicit wedge.
MAX_PAGE_SPHERES = 10_000


@dataclass(frozen=True)
class BrieskornExponents:
    """Exponents of ``z_1^{a_1} + ... + z_{n+1}^{a_{n+1}}``."""

    exponents: tuple[int, ...]
    n: int

    def __post_init__(self):
        exps = tuple(self.exponents)
        object.__setattr__(self, "exponents", exps)
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ModelError(f"n must be an integer >= 1, got {self.n!r}")
        if len(exps) != self.n + 1:
            raise ModelError(f"need n + 1 = {self.n + 1} exponents, got {len(exps)}")
        for a in exps:
            if isinstance(a, bool) or not isinstance(a, int) or a < 2:
                raise ModelError(f"every exponent must be an integer >= 2, got {a!r}")


def brieskorn_multiplicity(b: BrieskornExponents) -> int:
    """Milnor number ``prod (a_i - 1)`` of the origin."""
    return math.prod(a - 1 for a in b.exponents)


def milnor_page(mu: int, n: int) -> SpaceModel:
    """Model of a Milnor page: the wedge of ``mu`` copies of ``S^n``."""
    if n < 2:
        raise ModelError(f"Milnor page dimension must be >= 2, got n={n}")
    if mu < 0:
        raise ModelError(f"multiplicity must be >= 0, got {mu}")
    if mu > MAX_PAGE_SPHERES:
        raise ModelError(
            f"multiplicity {mu} exceeds {MAX_PAGE_SPHERES}; page model too large to build")
    return wedge([n] * mu)


@dataclass(frozen=True)
class MonodromyReport:
    exponents: tuple[int, ...]
    n: int
    mu: int
    obstruction: bool
    page_hyperbolic: bool
    growth_base: Optional[float]
    conclusions: tuple[str, ...] = field(default=())
    reason: str = ""


NO_FINITE_ORDER = ("no power h^m of the monodromy is rationally homotopic to the identity "
                   "(for a Brieskorn polynomial: h has infinite order)")
NON_NILPOTENT = "the monodromy h acts non-nilpotently on H_*(V; Z)"
FIBRE_NOT_SPHERE = ("the homotopy fibre of the binding inclusion dV -> V is not "
                    "rationally homotopy equivalent to a sphere")


def monodromy_constraint_report(b: BrieskornExponents) -> MonodromyReport:
    """What the elliptic/hyperbolic dichotomy forces on the Milnor monodromy."""
    mu = brieskorn_multiplicity(b)
    hyperbolic = mu >= 2
    base = growth_base_from_generators({b.n - 1: mu}) if hyperbolic and b.n >= 2 else None
    if mu <= 1 or b.n < 3:
        why = "multiplicity mu <= 1" if mu <= 1 else f"n = {b.n} < 3"
        return MonodromyReport(b.exponents, b.n, mu, False, hyperbolic, base,
                               reason=f"no obstruction: {why}")
    reason = (f"S^{2 * b.n + 1} is rationally elliptic, but the page, a wedge of "
              f"{mu} copies of S^{b.n}, is rationally hyperbolic; a finite-order, "
              f"nilpotent monodromy would force the open book to be hyperbolic")
    return MonodromyReport(
        b.exponents, b.n, mu, True, hyperbolic, base,
        conclusions=(f"either {NO_FINITE_ORDER}, or {NON_NILPOTENT}", FIBRE_NOT_SPHERE),
        reason=reason)


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination.

    Every intermediate entry is an exact integer (a minor of the input).
    """
    a = [list(row) for row in matrix]
    size = len(a)
    if any(len(row) != size for row in a):
        raise ValueError("matrix is not square")
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, size):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, size):
                q, r = divmod(row_i[j] * akk - aik * row_k[j], prev)
                assert r == 0
                row_i[j] = q
            row_i[k] = 0
        prev = akk
    return sign * a[-1][-1]


@dataclass(frozen=True)
class VariationMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ModelError("variation matrix must be square of size >= 1")
        for r in rows:
            for x in r:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise ModelError(f"variation matrix entries must be integers, got {x!r}")
        object.__setattr__(self, "entries", rows)

    @property
    def size(self) -> int:
        return len(self.entries)


def variation_is_iso(v: VariationMatrix) -> bool:
    """True iff Var is invertible over Z, i.e. det = +-1."""
    return abs(bareiss_determinant(v.entries)) == 1


def boundary_connected_sum_variation(v: VariationMatrix) -> VariationMatrix:
    """Variation of ``h # h`` on the boundary connected sum: ``diag(v, v)``."""
    mu = v.size
    top = [list(r) + [0] * mu for r in v.entries]
    bottom = [[0] * mu + list(r) for r in v.entries]
    return VariationMatrix(tuple(map(tuple, top + bottom)))


def milnor_openbook_spec(b: BrieskornExponents,
                         monodromy: MonodromyHypothesis = Unverified(),
                         fibre: Optional[SpaceModel] = None) -> OpenBookSpec:
    """The Milnor open book of ``S^{2n+1}`` for a Brieskorn polynomial.

    The binding fibre is not known in general, so ``fibre`` stays ``None``
    unless the caller supplies a model; classification then reports it
    as unavailable.
    """
    if b.n < 3:
        raise ModelError(f"the Milnor open book pipeline needs n >= 3, got n={b.n}")
    return OpenBookSpec(
        ambient_dim=2 * b.n + 1,
        page=milnor_page(brieskorn_multiplicity(b), b.n),
        fibre=fibre,
        monodromy=monodromy,
        page_simply_connected=True,
        boundary_nilpotent_connected=True,
        total_simply_connected=True,
    )

