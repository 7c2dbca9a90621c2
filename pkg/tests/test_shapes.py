"""Shape calculus: behavior realization, per-node plans, enumeration
order, and certified construction."""

from __future__ import annotations

import pytest

from admcovers.covers import frame_from_curve, is_admissible, is_quasi_admissible
from admcovers.profiles import ProfileError
from admcovers.shapes import (
    CoverShape,
    check_profiles,
    construct_shape,
    contracts_to_frame,
    enumerate_shapes,
    plan_shape,
    realize_behavior,
)
from admcovers.surgery import NameAllocator
from helpers import chain_curve, classed, gonal_profile, pooled, profile


def grid_frame(delta: int):
    return frame_from_curve(chain_curve(delta), "X", "Y")


# -- realization --------------------------------------------------------


def test_realize_behavior_structure():
    behavior = classed(3, [[("p", 3)], [("q", 1)]])
    cover, class_points = realize_behavior(
        "X", 2, behavior, NameAllocator({"X", "p", "q"})
    )
    assert len(class_points) == 2
    assert cover.degree == 3
    assert len(cover.target.curve.components) == 1
    assert cover.image_of("p") == class_points[0]
    assert cover.index_of("p") == 3
    assert cover.image_of("q") == class_points[1]
    # Anonymous indices of the second class became generated points.
    fiber = cover.parts[0].fiber_over(class_points[1])
    assert sorted(fp.index for fp in fiber) == [1, 1, 1]
    # Budget 8, declared multiplicity 2.
    assert cover.parts[0].extra_simple == 6
    assert is_quasi_admissible(cover)
    assert not is_admissible(cover)


def test_realize_behavior_rejects_overfull():
    heavy = classed(2, [[("p", 2)], [("q", 2)], [("r", 2)]])
    with pytest.raises(ProfileError, match="exceeds the branch budget"):
        realize_behavior("R", 0, heavy, NameAllocator())


# -- profile checks -----------------------------------------------------


def test_check_profiles():
    frame = grid_frame(1)
    p1 = gonal_profile("X", ["x1"], 2, 2)
    p2 = gonal_profile("Y", ["y1"], 2, 2)
    check_profiles(frame, p1, p2)
    with pytest.raises(ProfileError, match="does not match"):
        check_profiles(frame, p2, p1)
    stray = profile("Y", 2, 2, [pooled(2, ["y9"], [2])])
    with pytest.raises(ProfileError, match="name exactly the node branches"):
        check_profiles(frame, p1, stray)
    empty = profile("Y", 2, 2, [], complete=False)
    check_profiles(frame, p1, empty)


# -- planning -----------------------------------------------------------


def test_plan_single_node():
    frame = grid_frame(1)
    p1 = gonal_profile("X", ["x1"], 2, 2)
    p2 = gonal_profile("Y", ["y1"], 3, 3)
    shape = plan_shape(frame, p1, p2, 0, 0, 0, 0)
    assert shape is not None
    assert shape.node_plan == (("a", 2, 3),)
    assert shape.cost == 2 + 3 - 2


def test_plan_mixed_kinds():
    frame = grid_frame(2)
    p1 = profile("X", 2, 2, [pooled(2, ["x1", "x2"], [1, 1])])
    p2 = profile("Y", 2, 2, [classed(2, [[("y1", 2)], [("y2", 2)]])])
    shape = plan_shape(frame, p1, p2, 0, 0, 0, 0)
    assert shape is not None
    assert [kind for kind, _, _ in shape.node_plan] == ["a", "b1"]
    assert shape.cost == 2 + 2 - 1
    mirrored = frame_from_curve(chain_curve(2), "Y", "X")
    flipped = plan_shape(mirrored, p2, p1, 0, 0, 0, 0)
    assert [kind for kind, _, _ in flipped.node_plan] == ["a", "b2"]


def test_plan_needs_a_glued_node():
    frame = grid_frame(2)
    p1 = profile("X", 2, 2, [classed(2, [[("x1", 2)], [("x2", 2)]])])
    p2 = profile("Y", 2, 2, [classed(2, [[("y1", 2)], [("y2", 2)]])])
    assert plan_shape(frame, p1, p2, 0, 0, 0, 1) is None
    assert plan_shape(frame, p1, p2, 0, 0, 0, 0) is not None


def test_plan_rejects_shared_offside_class():
    frame = grid_frame(3)
    p1 = profile("X", 3, 3, [classed(3, [[("x1", 3)], [("x2", 1), ("x3", 1)]])])
    p2 = profile("Y", 2, 2, [pooled(3, ["y1", "y2", "y3"], [1, 1, 1])])
    assert plan_shape(frame, p1, p2, 0, 0, 0, 0) is None


def test_plan_rejects_heavy_offside_class():
    frame = grid_frame(2)
    p1 = profile("X", 3, 3, [classed(3, [[("x1", 3)], [("x2", 3)]])])
    p2 = profile("Y", 2, 2, [pooled(3, ["y1", "y2"], [1, 1])])
    assert plan_shape(frame, p1, p2, 0, 0, 0, 0) is None
    light = profile("X", 3, 3, [classed(3, [[("x1", 3)], [("x2", 1)]])])
    shape = plan_shape(frame, light, p2, 0, 0, 0, 0)
    assert shape is not None
    assert shape.cost == 3 + 3 - 1


def test_describe_format():
    shape = CoverShape(0, 1, 0, 0, (("a", 2, 2), ("b2", 1, 2)), 4)
    assert shape.describe() == "behaviors (0,1) classes (0,0) nodes [a,b2] degree 4"


# -- enumeration --------------------------------------------------------


def test_enumeration_order_and_cap():
    frame = grid_frame(1)
    p1 = profile("X", 2, 2, [pooled(2, ["x1"], [2]), pooled(3, ["x1"], [3])])
    p2 = profile("Y", 2, 2, [pooled(2, ["y1"], [2]), pooled(3, ["y1"], [3])])
    shapes = enumerate_shapes(frame, p1, p2)
    assert [s.cost for s in shapes] == [2, 3, 3, 3]
    assert (shapes[0].behavior1, shapes[0].behavior2) == (0, 0)
    assert [(s.behavior1, s.behavior2) for s in shapes[1:]] == [(0, 1), (1, 0), (1, 1)]
    capped = enumerate_shapes(frame, p1, p2, cap=2)
    assert len(capped) == 1
    with pytest.raises(ProfileError):
        enumerate_shapes(frame, p2, p1)


# -- construction -------------------------------------------------------


def test_construct_single_node_shape():
    frame = grid_frame(1)
    p1 = gonal_profile("X", ["x1"], 2, 2)
    p2 = gonal_profile("Y", ["y1"], 3, 3)
    shape = plan_shape(frame, p1, p2, 0, 0, 0, 0)
    cover = construct_shape(frame, p1, p2, shape)
    assert cover.degree == shape.cost == 3
    assert is_admissible(cover)
    assert contracts_to_frame(cover, frame)


def test_construct_mixed_shape():
    frame = grid_frame(2)
    p1 = profile("X", 2, 2, [pooled(2, ["x1", "x2"], [1, 1])])
    p2 = profile("Y", 2, 2, [classed(2, [[("y1", 2)], [("y2", 2)]])])
    shape = plan_shape(frame, p1, p2, 0, 0, 0, 0)
    cover = construct_shape(frame, p1, p2, shape)
    assert cover.degree == shape.cost == 3
    assert is_admissible(cover)
    assert contracts_to_frame(cover, frame)


def test_construct_staircase_shape():
    # Split pairs on both gonality-2 sides: the only realizable shape
    # glues the middle node and reroutes the outer two.
    frame = grid_frame(3)
    p1 = profile("X", 2, 2, [classed(2, [[("x1", 1), ("x2", 1)], [("x3", 2)]])])
    p2 = profile("Y", 2, 2, [classed(2, [[("y1", 2)], [("y2", 1), ("y3", 1)]])])
    shapes = enumerate_shapes(frame, p1, p2)
    assert len(shapes) == 1
    best = shapes[0]
    assert best.cost == 3
    assert (best.class1, best.class2) == (0, 1)
    assert [kind for kind, _, _ in best.node_plan] == ["b1", "a", "b2"]
    cover = construct_shape(frame, p1, p2, best)
    assert cover.degree == 3
    assert is_admissible(cover)
    assert contracts_to_frame(cover, frame)


def test_contracts_to_frame_counts_edges():
    frame = grid_frame(1)
    p1 = gonal_profile("X", ["x1"], 2, 2)
    p2 = gonal_profile("Y", ["y1"], 2, 2)
    cover = construct_shape(frame, p1, p2, plan_shape(frame, p1, p2, 0, 0, 0, 0))
    from admcovers.covers import TwoComponentFrame

    wider = TwoComponentFrame("X", "Y", (("x1", "y1"), ("x2", "y2")))
    assert not contracts_to_frame(cover, wider)
    renamed = TwoComponentFrame("X", "Z", (("x1", "z1"),))
    assert not contracts_to_frame(cover, renamed)
