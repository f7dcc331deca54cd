"""Rational homotopy of open books from their pages and binding fibres.

An open book ``M = (dV x D^2) u V_h`` is described here by models of its
page ``V`` and of the homotopy fibre ``F`` of the binding inclusion
``dV -> V``.  When the monodromy acts trivially on rational homotopy of the
double (or some power of it does, with a nilpotent action on ``pi_*(V)``),
the loop space splits rationally as ``Omega M ~ Omega V x Omega Sigma^2 F``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from .errors import ModelError, NotClassifiableError
from .lie import GradedRanks
from .spaces import (
    Contractible,
    EllipticRanks,
    SpaceModel,
    Sphere,
    is_rationally_elliptic,
    loop_ranks,
    normalize,
    space_ranks,
    sphere_dims,
    suspend,
)


@dataclass(frozen=True)
class IdentityOnRationalHomotopy:
    """The extended monodromy ``e(h)`` induces the identity on pi_*(DV) (x) Q."""


@dataclass(frozen=True)
class FiniteHomotopyOrder:
    """``e(h)_*^m`` is the identity, and ``h`` acts nilpotently on pi_*(V) when
    ``nilpotent_action`` holds.

    ``nilpotence_source`` records whether nilpotence was established on
    homotopy groups directly or only on homology; the latter is accepted but
    flagged in reports.
    """

    m: int
    nilpotent_action: bool
    nilpotence_source: str = "homotopy"

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, int) or self.m < 1:
            raise ModelError(f"monodromy order m must be a positive integer, got {self.m!r}")
        if self.nilpotence_source not in ("homotopy", "homology"):
            raise ModelError(
                f"nilpotence_source must be 'homotopy' or 'homology', got {self.nilpotence_source!r}")


@dataclass(frozen=True)
class Unverified:
    """Nothing is known about the monodromy."""


MonodromyHypothesis = Union[IdentityOnRationalHomotopy, FiniteHomotopyOrder, Unverified]


@dataclass(frozen=True)
class OpenBookSpec:
    """Homotopy data of an open book.

    ``fibre`` is ``None`` when no model of the binding fibre is available;
    such a spec is valid input but never classifiable.  The hypothesis flags
    are caller assertions and default to False.
    """

    ambient_dim: int
    page: SpaceModel
    fibre: Optional[SpaceModel]
    monodromy: MonodromyHypothesis = Unverified()
    page_simply_connected: bool = False
    boundary_nilpotent_connected: bool = False
    total_simply_connected: bool = False


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


def _page_has_circle(page: SpaceModel) -> bool:
    if isinstance(page, EllipticRanks):
        return False
    return 1 in sphere_dims(page)


def validate_spec(spec: OpenBookSpec) -> list[Violation]:
    """Every hypothesis of the splitting/dichotomy results that ``spec`` fails.

    An empty list means the spec can be classified.
    """
    out = []
    if spec.ambient_dim < 3:
        out.append(Violation("ambient_dim", f"ambient dimension {spec.ambient_dim} is < 3"))
    if spec.fibre is None:
        out.append(Violation(
            "fibre_unavailable",
            "no model of the homotopy fibre of the binding inclusion was supplied"))
    elif isinstance(spec.fibre, Contractible):
        out.append(Violation(
            "fibre_contractible",
            "the binding-inclusion fibre cannot be rationally contractible: "
            "H^{n-1}(V, dV; Z) = Z, so dV -> V is not a rational equivalence"))
    elif isinstance(spec.fibre, EllipticRanks):
        out.append(Violation(
            "fibre_not_suspendable",
            "the fibre must be a sphere or wedge of spheres so that its double "
            "suspension is determined"))
    if not spec.page_simply_connected:
        out.append(Violation("page_not_simply_connected", "the page V must be simply connected"))
    elif _page_has_circle(spec.page):
        out.append(Violation(
            "page_not_simply_connected",
            "page is claimed simply connected but its model contains a 1-sphere"))
    if not spec.boundary_nilpotent_connected:
        out.append(Violation(
            "boundary_not_nilpotent",
            "the binding dV must be connected and nilpotent"))
    if not spec.total_simply_connected:
        out.append(Violation(
            "total_not_simply_connected", "the open book M must be simply connected"))
    mono = spec.monodromy
    if isinstance(mono, Unverified):
        out.append(Violation(
            "monodromy_unverified",
            "neither monodromy hypothesis holds: need e(h)_* = id on pi_*(DV) (x) Q (a), "
            "or e(h)_*^m = id with h acting nilpotently on pi_*(V) (b)"))
    elif isinstance(mono, FiniteHomotopyOrder) and not mono.nilpotent_action:
        out.append(Violation(
            "monodromy_not_nilpotent",
            f"e(h)_*^{mono.m} = id is not enough: h must also act nilpotently on pi_*(V)"))
    return out


def _require_classifiable(spec: OpenBookSpec) -> None:
    violations = validate_spec(spec)
    if violations:
        raise NotClassifiableError([str(v) for v in violations])


def notes(spec: OpenBookSpec) -> list[str]:
    """Non-blocking remarks about how the hypotheses were supplied."""
    mono = spec.monodromy
    if isinstance(mono, FiniteHomotopyOrder) and mono.nilpotence_source == "homology":
        return [
            "nilpotence of the monodromy was supplied on homology only; it is taken "
            "to hold on pi_*(V) via nilpotence of the mapping torus, not re-derived here"]
    return []


def double_loop_ranks(page: SpaceModel, fibre: SpaceModel, N: int) -> GradedRanks:
    """Ranks of pi_*(Omega DV) (x) Q from ``Omega DV ~ Omega V x Omega Sigma F``."""
    return loop_ranks(page, N) + loop_ranks(suspend(fibre, 1), N)


def openbook_loop_ranks(spec: OpenBookSpec, N: int) -> GradedRanks:
    """Ranks of pi_*(Omega M) (x) Q from ``Omega M ~ Omega V x Omega Sigma^2 F``.

    Raises NotClassifiableError unless every hypothesis holds.  Under a
    finite-order monodromy the answer is the same as for the identity: the
    m-fold cover of the mapping torus is a rational equivalence onto it.
    """
    _require_classifiable(spec)
    return loop_ranks(spec.page, N) + loop_ranks(suspend(spec.fibre, 2), N)


def homotopy_ranks(spec: OpenBookSpec, N: int) -> GradedRanks:
    """Ranks of pi_*(M) (x) Q in degrees 1..N."""
    _require_classifiable(spec)
    return space_ranks(spec.page, N) + space_ranks(suspend(spec.fibre, 2), N)


class HyperbolicReason(enum.Enum):
    PAGE_HYPERBOLIC = "page_hyperbolic"
    FIBRE_NOT_A_SPHERE = "fibre_not_a_sphere"
    BOTH = "both"


@dataclass(frozen=True)
class Elliptic:
    l: int
    ranks: GradedRanks


@dataclass(frozen=True)
class Hyperbolic:
    reason: HyperbolicReason


@dataclass(frozen=True)
class NotClassifiable:
    missing: tuple[str, ...]


DichotomyVerdict = Union[Elliptic, Hyperbolic, NotClassifiable]


def classify_dichotomy(spec: OpenBookSpec, N: int = 40) -> DichotomyVerdict:
    """Decide whether the open book is rationally elliptic or hyperbolic.

    Elliptic exactly when the page is elliptic and the fibre is rationally a
    single sphere ``S^l``; then pi_*(M) (x) Q = pi_*(V) (x) Q + pi_*(S^{l+2}) (x) Q.
    """
    violations = validate_spec(spec)
    if violations:
        return NotClassifiable(tuple(str(v) for v in violations))
    fibre = normalize(spec.fibre)
    page_elliptic = is_rationally_elliptic(spec.page)
    fibre_sphere = isinstance(fibre, Sphere)
    if page_elliptic and fibre_sphere:
        ranks = space_ranks(spec.page, N) + space_ranks(Sphere(fibre.n + 2), N)
        return Elliptic(fibre.n, ranks)
    if not page_elliptic and not fibre_sphere:
        return Hyperbolic(HyperbolicReason.BOTH)
    if not page_elliptic:
        return Hyperbolic(HyperbolicReason.PAGE_HYPERBOLIC)
    return Hyperbolic(HyperbolicReason.FIBRE_NOT_A_SPHERE)


def grove_halperin_test(fibre_is_rational_sphere: bool, binding_elliptic: bool) -> bool:
    """With a rational-sphere binding fibre, M is elliptic iff the binding is."""
    if not fibre_is_rational_sphere:
        raise ModelError("the comparison only applies when the binding fibre is a rational sphere")
    return bool(binding_elliptic)
