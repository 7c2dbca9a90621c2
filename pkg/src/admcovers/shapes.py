"""Cover shapes over a curve with two smooth components.

A shape fixes one behavior per component and designates one fiber
class on each side: the designated fibers are the ones routed through
the chain connecting the two target lines.  Each node of the curve is
then realized one of three ways, read off from where its branch points
sit:

* `a`: both branches in their designated fibers.  The node is glued
  outright and saves min(e, e') sheets.
* `b1`/`b2`: exactly the named side's branch is designated.  The node
  is rerouted through the other branch's image at unchanged degree.
* `c`: neither branch is designated.  The node costs one extra sheet
  laid isomorphically over the whole target.

The resulting degree is k_1 + k_2 - (type-a savings) + (type-c count),
and `construct_shape` certifies it by actually building the cover.
"""

from __future__ import annotations

from dataclasses import dataclass

from .covers import (
    ComponentMapDatum,
    CoverMap,
    FiberPoint,
    TargetTree,
    TwoComponentFrame,
    branch_budget,
    is_admissible,
)
from .curves import Component, CurveGraph
from .profiles import ComponentProfile, MapBehavior, ProfileError
from .surgery import (
    GluePiece,
    NameAllocator,
    NodeIncidence,
    glue_covers,
    glue_node_on_cover,
    to_admissible,
)


class ShapeError(ValueError):
    """The shape cannot be realized by the implemented constructions."""


def realize_behavior(
    cid: str, genus: int, behavior: MapBehavior, names: NameAllocator
) -> tuple[CoverMap, tuple[str, ...]]:
    """A smooth cover with the behavior's fiber structure: one fresh
    rational target, one target point per class, anonymous indices
    realized at generated points, and the rest of the branch budget
    left as generic simple points.  Returns the cover and the target
    point of each class, in class order."""
    extra = branch_budget(genus, behavior.degree) - behavior.declared_multiplicity()
    if extra < 0:
        raise ProfileError("behavior exceeds the branch budget")
    target = names.fresh(f"{cid}:B")
    class_points: list[str] = []
    fibers: list[tuple[str, tuple[FiberPoint, ...]]] = []
    source_points: list[str] = []
    for j, cls in enumerate(behavior.classes):
        qj = names.fresh(f"{cid}:c{j}")
        class_points.append(qj)
        fiber = list(cls.branches)
        for index in cls.anonymous:
            fiber.append(FiberPoint(names.fresh(f"{cid}:m"), index))
        source_points.extend(fp.point for fp in fiber)
        fibers.append((qj, tuple(fiber)))
    source = CurveGraph((Component(cid, genus, tuple(source_points)),), ())
    tree = TargetTree(
        CurveGraph((Component(target, 0, tuple(class_points)),), ())
    )
    part = ComponentMapDatum(
        cid, target, behavior.degree, tuple(fibers), extra
    )
    return CoverMap(source, tree, (part,)), tuple(class_points)


@dataclass(frozen=True)
class CoverShape:
    """Indices into the two profiles' behaviors and classes, with the
    per-node realization plan and the resulting degree."""

    behavior1: int
    behavior2: int
    class1: int
    class2: int
    node_plan: tuple[tuple[str, int, int], ...]
    cost: int

    def describe(self) -> str:
        kinds = ",".join(kind for kind, _, _ in self.node_plan)
        return (
            f"behaviors ({self.behavior1},{self.behavior2}) "
            f"classes ({self.class1},{self.class2}) "
            f"nodes [{kinds}] degree {self.cost}"
        )


def check_profiles(
    frame: TwoComponentFrame, p1: ComponentProfile, p2: ComponentProfile
) -> None:
    """Raise unless the profiles sit on the frame's components and
    their behaviors name exactly the node branches."""
    for profile, comp, side in ((p1, frame.comp1, 0), (p2, frame.comp2, 1)):
        if profile.component != comp:
            raise ProfileError(
                f"profile for {profile.component} does not match {comp}"
            )
        expected = tuple(sorted(pair[side] for pair in frame.pairs))
        if profile.behaviors and profile.branch_points() != expected:
            raise ProfileError(
                f"behaviors on {comp} must name exactly the node branches "
                f"{expected}"
            )


def plan_shape(
    frame: TwoComponentFrame,
    p1: ComponentProfile,
    p2: ComponentProfile,
    i1: int,
    i2: int,
    c1: int,
    c2: int,
) -> CoverShape | None:
    """The shape for the given behavior and class choices, or None if
    it falls outside the implemented constructions: no node glued
    outright, two rerouted branches sharing a fiber, or a rerouted
    branch sitting in a fiber that expansion would consume."""
    b1, b2 = p1.behaviors[i1], p2.behaviors[i2]
    plan: list[tuple[str, int, int]] = []
    saving = 0
    extra_sheets = 0
    off: tuple[list[str], list[str]] = ([], [])
    for pt1, pt2 in frame.pairs:
        e1, e2 = b1.index_of(pt1), b2.index_of(pt2)
        in1 = b1.class_index_of(pt1) == c1
        in2 = b2.class_index_of(pt2) == c2
        if in1 and in2:
            kind = "a"
            saving += min(e1, e2)
        elif in1:
            kind = "b1"
            off[1].append(pt2)
        elif in2:
            kind = "b2"
            off[0].append(pt1)
        else:
            kind = "c"
            extra_sheets += 1
            off[0].append(pt1)
            off[1].append(pt2)
        plan.append((kind, e1, e2))
    if not any(kind == "a" for kind, _, _ in plan):
        return None
    for behavior, points in zip((b1, b2), off):
        classes = [behavior.class_index_of(pt) for pt in points]
        if len(set(classes)) != len(classes):
            return None
        if any(behavior.classes[j].multiplicity() >= 2 for j in classes):
            return None
    cost = b1.degree + b2.degree - saving + extra_sheets
    return CoverShape(i1, i2, c1, c2, tuple(plan), cost)


def enumerate_shapes(
    frame: TwoComponentFrame,
    p1: ComponentProfile,
    p2: ComponentProfile,
    cap: int | None = None,
) -> tuple[CoverShape, ...]:
    """All realizable shapes, cheapest first; ties broken by behavior
    and class indices."""
    check_profiles(frame, p1, p2)
    shapes: list[CoverShape] = []
    for i1, b1 in enumerate(p1.behaviors):
        for i2, b2 in enumerate(p2.behaviors):
            for c1 in range(len(b1.classes)):
                for c2 in range(len(b2.classes)):
                    shape = plan_shape(frame, p1, p2, i1, i2, c1, c2)
                    if shape is None:
                        continue
                    if cap is not None and shape.cost > cap:
                        continue
                    shapes.append(shape)
    shapes.sort(
        key=lambda s: (s.cost, s.behavior1, s.behavior2, s.class1, s.class2)
    )
    return tuple(shapes)


def construct_shape(
    frame: TwoComponentFrame,
    p1: ComponentProfile,
    p2: ComponentProfile,
    shape: CoverShape,
) -> CoverMap:
    """Build the admissible cover the shape promises.

    Pipeline: realize both behaviors, glue the type-a nodes through
    the designated fibers, expand away excess smooth ramification,
    then reroute type-b nodes at unchanged degree and type-c nodes at
    one extra sheet each.  The result is checked against the shape's
    own bookkeeping: admissible, degree equal to the cost, and a dual
    graph contracting to the frame's curve."""
    check_profiles(frame, p1, p2)
    b1, b2 = p1.behaviors[shape.behavior1], p2.behaviors[shape.behavior2]
    names = NameAllocator(
        {frame.comp1, frame.comp2}
        | {pt for pair in frame.pairs for pt in pair}
        | set(b1.branch_points())
        | set(b2.branch_points())
    )
    cover1, points1 = realize_behavior(frame.comp1, p1.genus, b1, names)
    cover2, points2 = realize_behavior(frame.comp2, p2.genus, b2, names)
    designated = (points1[shape.class1], points2[shape.class2])
    slots: tuple[list[FiberPoint], list[FiberPoint]] = ([], [])
    incidences: list[NodeIncidence] = []
    for j, ((kind, e1, e2), (pt1, pt2)) in enumerate(
        zip(shape.node_plan, frame.pairs)
    ):
        if kind != "a":
            continue
        slots[0].append(FiberPoint(pt1, e1))
        slots[1].append(FiberPoint(pt2, e2))
        incidences.append(
            NodeIncidence(names.fresh(f"n{j}"), (0, pt1), (1, pt2), min(e1, e2))
        )
    pieces = []
    for cover, q, slot in zip((cover1, cover2), designated, slots):
        fiber = cover.parts[0].fiber_over(q) or ()
        taken = {fp.point for fp in slot}
        remainder = tuple(fp for fp in fiber if fp.point not in taken)
        pieces.append(GluePiece(cover, q, tuple(slot), remainder))
    cm = to_admissible(glue_covers(pieces, incidences))
    for mode in ("matched", "unmatched"):
        for j, ((kind, _, _), (pt1, pt2)) in enumerate(
            zip(shape.node_plan, frame.pairs)
        ):
            if (mode == "matched") != (kind in ("b1", "b2")):
                continue
            if kind == "a":
                continue
            cm = glue_node_on_cover(cm, frame, pt1, pt2, mode, node_hint=f"n{j}")
    if cm.degree != shape.cost:
        raise ShapeError(
            f"construction produced degree {cm.degree}, shape promised {shape.cost}"
        )
    if not is_admissible(cm):
        raise ShapeError("construction produced a non-admissible cover")
    if not contracts_to_frame(cm, frame):
        raise ShapeError("construction does not contract to the frame's curve")
    return cm


def contracts_to_frame(cover: CoverMap, frame: TwoComponentFrame) -> bool:
    """Whether the source curve is stably equivalent to the frame's:
    contracting every rational component that meets the rest in at
    most two points must leave exactly the two components joined by
    one node per frame pair."""
    genus = {c.cid: c.genus for c in cover.source.components}
    edges: list[list[str]] = [
        [n.branch_a[0], n.branch_b[0]] for n in cover.source.nodes
    ]
    keep = {frame.comp1, frame.comp2}
    changed = True
    while changed:
        changed = False
        degree: dict[str, int] = {cid: 0 for cid in genus}
        for a, b in edges:
            degree[a] += 1
            degree[b] += 1
        for cid in sorted(genus):
            if cid in keep or genus[cid] != 0:
                continue
            incident = [e for e in edges if cid in e]
            if any(e[0] == e[1] for e in incident):
                return False
            if degree[cid] == 0:
                return False
            if degree[cid] == 1:
                edges.remove(incident[0])
                del genus[cid]
                changed = True
                break
            if degree[cid] == 2:
                ends = [e[0] if e[1] == cid else e[1] for e in incident]
                for e in incident:
                    edges.remove(e)
                edges.append([ends[0], ends[1]])
                del genus[cid]
                changed = True
                break
    if set(genus) != keep:
        return False
    if len(edges) != len(frame.pairs):
        return False
    return all(set(e) == keep for e in edges)
