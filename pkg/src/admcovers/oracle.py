"""Independent verification engines.

Two of them: an exhaustive monodromy search answering whether a single
smooth component can realize a behavior at all (re-exported from the
monodromy module so every existence question has one import site), and
a bounded enumerator that finds the smallest constructible cover
degree for a two-component curve by walking every shape cheapest
first.

The enumerator's completeness rests on the shape structure: a cover of
the two-component curve restricts to one behavior per side, routes
each side's designated fiber through the single exit toward the other
side, and realizes every node as glued, rerouted at one matched
branch, or rerouted at neither.  Shapes enumerate exactly these
choices, each is built at its bookkept degree, and the converse
inequalities double-check every hit.  Skipped designations (no node
glued outright, rerouted branches colliding in one fiber) never hide a
cheaper cover: gluing needs at least one shared node, and a collision
forces the extra sheets the same plans already price in elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from .covers import CoverMap, TwoComponentFrame, frame_from_curve
from .curves import CurveGraph
from .gonality import delta_degree_constraint
from .monodromy import (
    SEARCH_DEGREE_CAP,
    HurwitzDatum,
    HurwitzResult,
    SearchBoundExceeded,
    hurwitz_exists,
    hurwitz_necessary,
)
from .profiles import ComponentProfile, ProfileError, behavior_to_hurwitz
from .shapes import (
    CoverShape,
    ShapeError,
    check_profiles,
    construct_shape,
    enumerate_shapes,
)
from .surgery import SurgeryError

__all__ = [
    "SEARCH_DEGREE_CAP",
    "EnumerationBudget",
    "HurwitzDatum",
    "HurwitzResult",
    "OracleError",
    "OracleOutcome",
    "SearchBoundExceeded",
    "hurwitz_exists",
    "hurwitz_necessary",
    "min_admissible_degree",
    "verify_converse_inequalities",
]


class OracleError(RuntimeError):
    """A constructed cover failed a proven necessary condition; the
    construction and the checks disagree, so neither can be trusted."""


@dataclass(frozen=True)
class EnumerationBudget:
    """How far the enumerator is allowed to look: a hard degree cap,
    and optionally a bound on how many shapes to attempt."""

    degree_cap: int = SEARCH_DEGREE_CAP
    shape_limit: int | None = None

    def __post_init__(self) -> None:
        if self.degree_cap < 1:
            raise ValueError("the degree cap must be positive")
        if self.shape_limit is not None and self.shape_limit < 1:
            raise ValueError("the shape limit must be positive")


@dataclass(frozen=True)
class OracleOutcome:
    """What the enumerator concluded.

    "exact" carries the smallest constructible degree with its witness
    and shape.  "above-cap" means every realizable shape costs more
    than the cap.  "undecided" means the search cannot be trusted as a
    minimum: incomplete profiles, a truncated shape budget, or no
    realizable shape at all.
    """

    status: str
    degree: int | None = None
    witness: CoverMap | None = None
    shape: CoverShape | None = None


def min_admissible_degree(
    curve: CurveGraph,
    p1: ComponentProfile,
    p2: ComponentProfile,
    budget: EnumerationBudget | None = None,
) -> OracleOutcome:
    """Smallest degree at which the profiles glue to an admissible
    cover of the two-component curve, by exhaustive search.

    Shapes are walked cheapest first; a shape counts only if the
    monodromy search certifies both behaviors on their components and
    the construction actually goes through.  The first hit is the
    minimum.  Every hit is re-checked against the converse inequalities
    and the full-degree constraint, and a violation raises rather than
    skips: it would mean the artifact disagrees with itself.
    """
    budget = budget or EnumerationBudget()
    for p in (p1, p2):
        if p.gonality < 2:
            raise ProfileError(
                f"component {p.component} is rational; "
                f"the enumeration needs non-rational components"
            )
    if budget.degree_cap < max(p1.gonality, p2.gonality):
        raise ValueError("the degree cap sits below a component gonality")
    frame = frame_from_curve(curve, p1.component, p2.component)
    check_profiles(frame, p1, p2)
    if not (p1.complete and p2.complete):
        return OracleOutcome("undecided")
    shapes = enumerate_shapes(frame, p1, p2)
    certified: dict[HurwitzDatum, bool] = {}

    def realizable(genus: int, behavior) -> bool:
        datum = behavior_to_hurwitz(genus, behavior)
        if datum not in certified:
            certified[datum] = hurwitz_necessary(datum) and hurwitz_exists(datum).exists
        return certified[datum]

    attempted = 0
    for shape in shapes:
        if shape.cost > budget.degree_cap:
            break
        if budget.shape_limit is not None and attempted >= budget.shape_limit:
            return OracleOutcome("undecided")
        attempted += 1
        b1 = p1.behaviors[shape.behavior1]
        b2 = p2.behaviors[shape.behavior2]
        if not realizable(p1.genus, b1) or not realizable(p2.genus, b2):
            continue
        try:
            cm = construct_shape(frame, p1, p2, shape)
        except (ShapeError, SurgeryError):
            continue
        if not verify_converse_inequalities(cm, frame):
            raise OracleError(
                f"shape {shape.describe()} built a cover violating the "
                f"converse inequalities"
            )
        if not delta_degree_constraint(cm, frame):
            raise OracleError(
                f"shape {shape.describe()} built a cover violating the "
                f"full-degree node constraint"
            )
        return OracleOutcome("exact", shape.cost, cm, shape)
    if any(shape.cost > budget.degree_cap for shape in shapes):
        return OracleOutcome("above-cap")
    return OracleOutcome("undecided")


def verify_converse_inequalities(
    cover: CoverMap, frame: TwoComponentFrame
) -> bool:
    """Degree inequalities every cover of a two-component curve must
    satisfy, from the restriction degrees and node branch images:
    coinciding images force the degrees to add; distinct images force
    one sheet per extra image on each side; and single images on both
    sides force the glued-degree bound with the per-node index minima.
    """
    k = cover.degree
    part1 = cover.part(frame.comp1)
    part2 = cover.part(frame.comp2)
    images1 = {cover.image_of(pt1) for pt1, _ in frame.pairs}
    images2 = {cover.image_of(pt2) for _, pt2 in frame.pairs}
    if part1.target == part2.target:
        return k >= part1.degree + part2.degree
    if k < part1.degree + len(images1) - 1:
        return False
    if k < part2.degree + len(images2) - 1:
        return False
    if len(images1) == 1 and len(images2) == 1:
        saved = sum(
            min(cover.index_of(pt1), cover.index_of(pt2))
            for pt1, pt2 in frame.pairs
        )
        if k < part1.degree + part2.degree - saved:
            return False
    return True
