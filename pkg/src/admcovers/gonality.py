"""Gonality bounds and the low-gonality classification of stable
curves with two smooth components.

Three strengths of information, in increasing order of input demanded:
an additive upper bound needing only per-piece gonalities, a sharper
bound needing the behaviors whose node branches all share one fiber,
and the exact one-node value plus the full case analysis at degrees
two and three, which need complete behavior data to be conclusive.

The classifiers take the analytic facts about each smooth component as
a profile and reduce everything else to arithmetic over the declared
indices and conjugation classes; every positive verdict is backed by a
constructed cover of the claimed degree.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .covers import (
    CoverMap,
    TwoComponentFrame,
    frame_from_curve,
    lemma_tj_points,
)
from .curves import CurveGraph
from .profiles import ComponentProfile, MapBehavior, ProfileError
from .shapes import (
    ShapeError,
    check_profiles,
    construct_shape,
    enumerate_shapes,
)
from .surgery import SurgeryError


# -- upper bounds ------------------------------------------------------


def generic_upper_bound(curve: CurveGraph, gonalities: Mapping[str, int]) -> int:
    """Sum of component gonalities, plus one per node, minus two per
    gluing step.  Needs nothing beyond the gonality numbers, and is
    correspondingly the weakest bound on offer."""
    ids = set(curve.component_ids())
    if set(gonalities) != ids:
        raise ValueError("gonalities must cover exactly the components")
    for cid in sorted(ids):
        if gonalities[cid] < 1:
            raise ValueError(f"component {cid}: gonality must be positive")
    for node in curve.nodes:
        if node.branch_a[0] == node.branch_b[0]:
            raise ValueError(
                f"node {node.nid} joins a component to itself; "
                f"the bound needs smooth components"
            )
    if not curve.is_connected():
        raise ValueError("the curve must be connected")
    p = len(curve.components)
    return sum(gonalities.values()) + len(curve.nodes) - 2 * (p - 1)


def generic_upper_bound_subcurves(
    curve: CurveGraph, side: Iterable[str], gon_side: int, gon_rest: int
) -> int:
    """Two-subcurve form of the additive bound: the subcurve gonalities
    sum, plus the number of joining nodes, minus two.  Nodes internal
    to either side are free; each side must be connected."""
    if gon_side < 1 or gon_rest < 1:
        raise ValueError("subcurve gonalities must be positive")
    inside = frozenset(side)
    outside, joining = curve.subcurve_complement(inside)
    for half in (inside, outside):
        if not _connected_within(curve, half):
            raise ValueError("both subcurves must be connected")
    return gon_side + gon_rest + len(joining) - 2


def _connected_within(curve: CurveGraph, cids: frozenset[str]) -> bool:
    adjacent: dict[str, set[str]] = {cid: set() for cid in cids}
    for node in curve.nodes:
        a, b = node.branch_a[0], node.branch_b[0]
        if a in cids and b in cids:
            adjacent[a].add(b)
            adjacent[b].add(a)
    start = min(cids)
    seen = {start}
    queue = [start]
    while queue:
        for other in adjacent[queue.pop()]:
            if other not in seen:
                seen.add(other)
                queue.append(other)
    return len(seen) == len(cids)


def two_component_bound(
    curve: CurveGraph, p1: ComponentProfile, p2: ComponentProfile
) -> int | None:
    """Best gluing of gonal behaviors whose node branches all share one
    fiber: the gonalities sum, minus the largest total of per-node
    index minima over such behavior pairs.

    Returns None when either profile lists no gonal behavior with all
    node branches conjugated, since then no pair is available to glue.
    An incomplete profile can only make the returned bound weaker,
    never wrong.
    """
    frame = frame_from_curve(curve, p1.component, p2.component)
    check_profiles(frame, p1, p2)
    pooled1 = [b for b in p1.gonal_behaviors() if len(b.classes) == 1]
    pooled2 = [b for b in p2.gonal_behaviors() if len(b.classes) == 1]
    best: int | None = None
    for b1 in pooled1:
        for b2 in pooled2:
            e = sum(
                min(b1.index_of(pt1), b2.index_of(pt2))
                for pt1, pt2 in frame.pairs
            )
            if best is None or e > best:
                best = e
    if best is None:
        return None
    return p1.gonality + p2.gonality - best


def exact_gonality_one_node(gon1: int, gon2: int, e1: int, e2: int) -> int:
    """Gonality of a two-component curve with a single node, from the
    component gonalities and the largest index each side's gonal maps
    attain at its branch: gon1 + gon2 - min(e1, e2)."""
    for gon, e in ((gon1, e1), (gon2, e2)):
        if gon < 1:
            raise ValueError("gonality must be positive")
        if not 1 <= e <= gon:
            raise ValueError(f"branch index {e} outside 1..{gon}")
    return gon1 + gon2 - min(e1, e2)


# -- lower bounds ------------------------------------------------------


def component_lower_bound(
    curve: CurveGraph, profiles: Iterable[ComponentProfile]
) -> int:
    """Largest gonality among the profiled smooth components; the whole
    curve can never do better than a piece."""
    ids = set(curve.component_ids())
    best = 1
    for profile in profiles:
        if profile.component not in ids:
            raise ValueError(f"no component {profile.component} on the curve")
        best = max(best, profile.gonality)
    return best


def delta_degree_constraint(cover: CoverMap, frame: TwoComponentFrame) -> bool:
    """Necessary conditions on a cover one of whose distinguished
    components absorbs the full degree: the degree must reach the node
    count, and at every node whose branches both sit over their exit
    points, the full-degree side's index must dominate.

    Vacuously true when both restrictions have smaller degree.  A
    full-degree restriction alongside coinciding component images is
    reported as a violation outright: the images force the degree to
    exceed either restriction.
    """
    k = cover.degree
    parts = (cover.part(frame.comp1), cover.part(frame.comp2))
    full = [i for i, part in enumerate(parts) if part.degree == k]
    if not full:
        return True
    if parts[0].target == parts[1].target:
        return False
    if k < len(frame.pairs):
        return False
    q1, q2 = lemma_tj_points(cover, frame)
    for pt1, pt2 in frame.pairs:
        if cover.image_of(pt1) != q1 or cover.image_of(pt2) != q2:
            continue
        e1, e2 = cover.index_of(pt1), cover.index_of(pt2)
        if 0 in full and e1 < e2:
            return False
        if 1 in full and e2 < e1:
            return False
    return True


# -- classification ----------------------------------------------------


@dataclass(frozen=True)
class ClassificationResult:
    """Verdict plus every case label it rests on.

    Verdicts: "hyperelliptic" and "trigonal" are exact gonality values;
    "neither-at-<=3" means gonality at least four; "undecided" means
    the profiles are too incomplete to pin the value down.  The witness
    is a constructed admissible cover of the claimed degree for the
    positive verdicts, and for an undecided result with matched cases
    it still certifies the degree as an upper bound.
    """

    verdict: str
    cases: tuple[str, ...]
    witness: CoverMap | None


@dataclass(frozen=True)
class _SideView:
    """One behavior's node data in frame order: plain tuples the case
    predicates can do arithmetic on."""

    degree: int
    indices: tuple[int, ...]
    classes: tuple[int, ...]

    def conjugated(self) -> bool:
        return len(set(self.classes)) == 1

    def split(self) -> tuple[int, ...]:
        return tuple(sorted(Counter(self.classes).values(), reverse=True))


def _side_view(
    frame: TwoComponentFrame, behavior: MapBehavior, side: int
) -> _SideView:
    indices = tuple(behavior.index_of(pair[side]) for pair in frame.pairs)
    classes = tuple(behavior.class_index_of(pair[side]) for pair in frame.pairs)
    return _SideView(behavior.degree, indices, classes)


def _hyp_one_node(a: _SideView, b: _SideView) -> bool:
    """One node, each branch doubly ramified under a two-sheeted map."""
    return (
        len(a.indices) == 1
        and a.degree == 2 == b.degree
        and a.indices == (2,) == b.indices
    )


def _hyp_two_nodes(a: _SideView, b: _SideView) -> bool:
    """Two nodes, each side's branches an unramified conjugated pair
    under a two-sheeted map."""
    return (
        len(a.indices) == 2
        and a.degree == 2 == b.degree
        and a.conjugated()
        and b.conjugated()
        and a.indices == (1, 1) == b.indices
    )


def _tri_one_node_plain(a: _SideView, b: _SideView) -> bool:
    """One node, two-sheeted maps both sides, some branch unramified."""
    return (
        len(a.indices) == 1
        and a.degree == 2 == b.degree
        and min(a.indices[0], b.indices[0]) == 1
    )


def _tri_one_node_mixed(a: _SideView, b: _SideView) -> bool:
    """One node, a doubly ramified two-sheeted branch against a
    three-sheeted branch of index two or three."""
    return (
        len(a.indices) == 1
        and a.degree == 2
        and a.indices == (2,)
        and b.degree == 3
        and b.indices[0] in (2, 3)
    )


def _tri_one_node_total(a: _SideView, b: _SideView) -> bool:
    """One node, both branches totally ramified under three sheets."""
    return (
        len(a.indices) == 1
        and a.degree == 3 == b.degree
        and a.indices == (3,) == b.indices
    )


def _tri_two_nodes_pooled_mixed(a: _SideView, b: _SideView) -> bool:
    """Two nodes, both sides conjugated: an unramified two-sheeted pair
    against a three-sheeted pair of indices one or two."""
    return (
        len(a.indices) == 2
        and a.degree == 2
        and a.conjugated()
        and a.indices == (1, 1)
        and b.degree == 3
        and b.conjugated()
        and all(e in (1, 2) for e in b.indices)
    )


def _tri_two_nodes_pooled_three(a: _SideView, b: _SideView) -> bool:
    """Two nodes, both sides three-sheeted conjugated pairs of indices
    one and two, matching indices across each node."""
    return (
        len(a.indices) == 2
        and a.degree == 3 == b.degree
        and a.conjugated()
        and b.conjugated()
        and sorted(a.indices) == [1, 2] == sorted(b.indices)
        and a.indices == b.indices
    )


def _tri_two_nodes_spread_two(a: _SideView, b: _SideView) -> bool:
    """Two nodes, a two-sheeted side with separated branches against a
    three-sheeted conjugated pair of indices one and two, the index-two
    branches sharing a node."""
    if not (len(a.indices) == 2 and a.degree == 2 and not a.conjugated()):
        return False
    if not (b.degree == 3 and b.conjugated() and sorted(b.indices) == [1, 2]):
        return False
    heavy = b.indices.index(2)
    return a.indices[heavy] == 2


def _tri_two_nodes_pooled_spread(a: _SideView, b: _SideView) -> bool:
    """Two nodes, an unramified conjugated two-sheeted pair against a
    two-sheeted side with separated branches."""
    return (
        len(a.indices) == 2
        and a.degree == 2 == b.degree
        and a.conjugated()
        and a.indices == (1, 1)
        and not b.conjugated()
    )


def _tri_two_nodes_spread_both(a: _SideView, b: _SideView) -> bool:
    """Two nodes, both two-sheeted sides separated, with some node
    doubly ramified on both of its branches."""
    return (
        len(a.indices) == 2
        and a.degree == 2 == b.degree
        and not a.conjugated()
        and not b.conjugated()
        and any(ea == eb == 2 for ea, eb in zip(a.indices, b.indices))
    )


def _tri_three_nodes_pooled(a: _SideView, b: _SideView) -> bool:
    """Three nodes, both sides three-sheeted with all branches
    conjugated and unramified."""
    return (
        len(a.indices) == 3
        and a.degree == 3 == b.degree
        and a.conjugated()
        and b.conjugated()
    )


def _tri_three_nodes_pair_pooled(a: _SideView, b: _SideView) -> bool:
    """Three nodes, a two-sheeted side with one conjugated pair and one
    branch apart, against a fully conjugated three-sheeted side."""
    return (
        len(a.indices) == 3
        and a.degree == 2
        and a.split() == (2, 1)
        and b.degree == 3
        and b.conjugated()
    )


def _tri_three_nodes_pair_both(a: _SideView, b: _SideView) -> bool:
    """Three nodes, both two-sheeted sides carrying one conjugated pair
    and one branch apart."""
    return (
        len(a.indices) == 3
        and a.degree == 2 == b.degree
        and a.split() == (2, 1)
        and b.split() == (2, 1)
    )


_HYPERELLIPTIC_CASES = (
    ("Thm 5.3 (i)", _hyp_one_node, True),
    ("Thm 5.3 (ii)", _hyp_two_nodes, True),
)

_TRIGONAL_CASES = (
    ("Thm 5.6 (i)(a)", _tri_one_node_plain, True),
    ("Thm 5.6 (i)(b)", _tri_one_node_mixed, False),
    ("Thm 5.6 (i)(c)", _tri_one_node_total, True),
    ("Thm 5.6 (ii)(a)", _tri_two_nodes_pooled_mixed, False),
    ("Thm 5.6 (ii)(b)", _tri_two_nodes_pooled_three, True),
    ("Thm 5.6 (ii)(c)", _tri_two_nodes_spread_two, False),
    ("Thm 5.6 (ii)(d)", _tri_two_nodes_pooled_spread, False),
    ("Thm 5.6 (ii)(e)", _tri_two_nodes_spread_both, True),
    ("Thm 5.6 (iii)(a)", _tri_three_nodes_pooled, True),
    ("Thm 5.6 (iii)(b)", _tri_three_nodes_pair_pooled, False),
    ("Thm 5.6 (iii)(c)", _tri_three_nodes_pair_both, True),
)


def _matched_cases(cases, views1, views2) -> tuple[str, ...]:
    labels = []
    for label, predicate, symmetric in cases:
        hit = any(
            predicate(a, b) or (not symmetric and predicate(b, a))
            for a in views1
            for b in views2
        )
        if hit:
            labels.append(label)
    return tuple(labels)


def _witness(
    frame: TwoComponentFrame,
    p1: ComponentProfile,
    p2: ComponentProfile,
    degree: int,
) -> CoverMap | None:
    for shape in enumerate_shapes(frame, p1, p2, cap=degree):
        if shape.cost != degree:
            continue
        try:
            return construct_shape(frame, p1, p2, shape)
        except (ShapeError, SurgeryError):
            continue
    return None


def classify(
    curve: CurveGraph, p1: ComponentProfile, p2: ComponentProfile
) -> ClassificationResult:
    """Case analysis of two- and three-sheeted covers for a curve with
    two smooth non-rational components.

    The hyperelliptic cases are checked first; on a match the verdict
    is settled by the constructed two-sheeted witness.  Otherwise the
    trigonal cases are scanned.  A trigonal match is conclusive when
    gonality two is excluded, which holds as soon as a component has
    gonality three, or the curve has three or more nodes, or complete
    profiles rule the hyperelliptic cases out; with incomplete profiles
    short of that, the match is reported but the verdict stays
    undecided.  No match at all is conclusive when the gonalities or
    the node count already exceed the case lists, or when both profiles
    are complete.
    """
    for p in (p1, p2):
        if p.gonality < 2:
            raise ProfileError(
                f"component {p.component} is rational; "
                f"the case analysis needs non-rational components"
            )
    frame = frame_from_curve(curve, p1.component, p2.component)
    check_profiles(frame, p1, p2)
    delta = len(frame.pairs)
    complete = p1.complete and p2.complete
    views1 = tuple(_side_view(frame, b, 0) for b in p1.behaviors)
    views2 = tuple(_side_view(frame, b, 1) for b in p2.behaviors)

    if p1.gonality == 2 == p2.gonality:
        hyp = _matched_cases(_HYPERELLIPTIC_CASES, views1, views2)
        if hyp:
            return ClassificationResult(
                "hyperelliptic", hyp, _witness(frame, p1, p2, 2)
            )
    not_hyperelliptic = (
        delta >= 3 or max(p1.gonality, p2.gonality) >= 3 or complete
    )
    if p1.gonality <= 3 and p2.gonality <= 3:
        tri = _matched_cases(_TRIGONAL_CASES, views1, views2)
        if tri:
            witness = _witness(frame, p1, p2, 3)
            verdict = "trigonal" if not_hyperelliptic else "undecided"
            return ClassificationResult(verdict, tri, witness)
    if max(p1.gonality, p2.gonality) >= 4 or delta >= 4 or complete:
        return ClassificationResult("neither-at-<=3", (), None)
    return ClassificationResult("undecided", (), None)


def classify_hyperelliptic(
    curve: CurveGraph, p1: ComponentProfile, p2: ComponentProfile
) -> ClassificationResult:
    """Classification with the two-sheeted cases in focus: verdict
    "hyperelliptic" exactly when both gonalities are two and a behavior
    pair realizes one of the two cases."""
    return classify(curve, p1, p2)


def classify_trigonal(
    curve: CurveGraph, p1: ComponentProfile, p2: ComponentProfile
) -> ClassificationResult:
    """Classification with the three-sheeted cases in focus: verdict
    "trigonal" exactly when the hyperelliptic cases fail, some behavior
    pair matches one of the eleven cases, and gonality two is excluded
    by the profiles or the curve's shape."""
    return classify(curve, p1, p2)
