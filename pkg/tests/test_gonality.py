"""Bounds, the exact one-node value, and the case analysis at degrees
two and three."""

import pytest

from admcovers.covers import (
    ComponentMapDatum,
    CoverMap,
    FiberPoint,
    TargetTree,
    frame_from_curve,
    is_admissible,
)
from admcovers.curves import Component, CurveGraph, NodeRecord
from admcovers.gonality import (
    classify,
    classify_hyperelliptic,
    classify_trigonal,
    component_lower_bound,
    delta_degree_constraint,
    exact_gonality_one_node,
    generic_upper_bound,
    generic_upper_bound_subcurves,
    two_component_bound,
)
from admcovers.oracle import verify_converse_inequalities
from admcovers.profiles import ProfileError

from helpers import chain_curve, classed, gonal_profile, pooled, profile


def three_chain():
    """Path A - B - C, all components of genus two."""
    return CurveGraph(
        (
            Component("A", 2, ("a1",)),
            Component("B", 2, ("b1", "b2")),
            Component("C", 2, ("c1",)),
        ),
        (
            NodeRecord("n1", ("A", "a1"), ("B", "b1")),
            NodeRecord("n2", ("B", "b2"), ("C", "c1")),
        ),
    )


# -- additive upper bound ----------------------------------------------


def test_generic_upper_bound_values():
    assert generic_upper_bound(chain_curve(1), {"X": 2, "Y": 2}) == 3
    assert generic_upper_bound(chain_curve(2), {"X": 2, "Y": 3}) == 5
    assert generic_upper_bound(three_chain(), {"A": 2, "B": 2, "C": 2}) == 4


def test_generic_upper_bound_input_checks():
    curve = chain_curve(1)
    with pytest.raises(ValueError, match="cover exactly the components"):
        generic_upper_bound(curve, {"X": 2})
    with pytest.raises(ValueError, match="cover exactly the components"):
        generic_upper_bound(curve, {"X": 2, "Y": 2, "Z": 2})
    with pytest.raises(ValueError, match="gonality must be positive"):
        generic_upper_bound(curve, {"X": 0, "Y": 2})


def test_generic_upper_bound_rejects_singular_components():
    looped = CurveGraph(
        (Component("X", 1, ("p", "q")),),
        (NodeRecord("n1", ("X", "p"), ("X", "q")),),
    )
    with pytest.raises(ValueError, match="joins a component to itself"):
        generic_upper_bound(looped, {"X": 2})


def test_generic_upper_bound_rejects_disconnected():
    apart = CurveGraph((Component("X", 2, ()), Component("Y", 2, ())), ())
    with pytest.raises(ValueError, match="must be connected"):
        generic_upper_bound(apart, {"X": 2, "Y": 2})


def test_subcurve_bound():
    curve = three_chain()
    # one joining node between {A, B} and {C}
    assert generic_upper_bound_subcurves(curve, {"A", "B"}, 3, 2) == 4
    with pytest.raises(ValueError, match="must be positive"):
        generic_upper_bound_subcurves(curve, {"A"}, 0, 2)
    with pytest.raises(ValueError, match="must be connected"):
        generic_upper_bound_subcurves(curve, {"A", "C"}, 2, 2)


def test_subcurve_bound_counts_every_joining_node():
    banana = CurveGraph(
        (Component("X", 1, ("x1", "x2")), Component("Y", 1, ("y1", "y2"))),
        (
            NodeRecord("n1", ("X", "x1"), ("Y", "y1")),
            NodeRecord("n2", ("X", "x2"), ("Y", "y2")),
        ),
    )
    assert generic_upper_bound_subcurves(banana, {"X"}, 2, 2) == 4


# -- conjugated-behavior bound -----------------------------------------


def test_two_component_bound_one_node():
    curve = chain_curve(1)
    p1 = gonal_profile("X", ("x1",), 2, 2)
    p2 = gonal_profile("Y", ("y1",), 2, 2)
    assert two_component_bound(curve, p1, p2) == 2


def test_two_component_bound_two_nodes():
    curve = chain_curve(2)
    p1 = profile("X", 2, 2, [pooled(2, ("x1", "x2"), (1, 1))])
    p2 = profile("Y", 3, 3, [pooled(3, ("y1", "y2"), (1, 2))])
    assert two_component_bound(curve, p1, p2) == 3


def test_two_component_bound_three_nodes():
    curve = chain_curve(3)
    p1 = profile("X", 3, 3, [pooled(3, ("x1", "x2", "x3"), (1, 1, 1))])
    p2 = profile("Y", 3, 3, [pooled(3, ("y1", "y2", "y3"), (1, 1, 1))])
    assert two_component_bound(curve, p1, p2) == 3


def test_two_component_bound_takes_the_best_pair():
    curve = chain_curve(1)
    p1 = profile(
        "X", 2, 2, [pooled(2, ("x1",), (1,)), pooled(2, ("x1",), (2,))]
    )
    p2 = profile("Y", 2, 2, [pooled(2, ("y1",), (2,))])
    assert two_component_bound(curve, p1, p2) == 2


def test_two_component_bound_ignores_split_fibers():
    curve = chain_curve(2)
    split_x = profile("X", 2, 2, [classed(2, [[("x1", 1)], [("x2", 1)]])])
    whole_y = profile("Y", 2, 2, [pooled(2, ("y1", "y2"), (1, 1))])
    assert two_component_bound(curve, split_x, whole_y) is None
    whole_x = profile("X", 2, 2, [pooled(2, ("x1", "x2"), (1, 1))])
    split_y = profile("Y", 2, 2, [classed(2, [[("y1", 1)], [("y2", 1)]])])
    assert two_component_bound(curve, whole_x, split_y) is None


def test_two_component_bound_checks_the_profiles():
    curve = chain_curve(1)
    good = gonal_profile("X", ("x1",), 2, 2)
    wrong_point = profile("Y", 2, 2, [pooled(2, ("y9",), (2,))])
    with pytest.raises(ProfileError, match="name exactly the node branches"):
        two_component_bound(curve, good, wrong_point)


# -- exact one-node gonality -------------------------------------------


def test_exact_one_node_values():
    assert exact_gonality_one_node(2, 2, 2, 2) == 2
    assert exact_gonality_one_node(2, 3, 2, 3) == 3
    assert exact_gonality_one_node(3, 3, 1, 1) == 5


def test_exact_one_node_symmetry():
    for g1 in (2, 3):
        for g2 in (2, 3):
            for e1 in range(1, g1 + 1):
                for e2 in range(1, g2 + 1):
                    assert exact_gonality_one_node(
                        g1, g2, e1, e2
                    ) == exact_gonality_one_node(g2, g1, e2, e1)


def test_exact_one_node_input_checks():
    with pytest.raises(ValueError, match="gonality must be positive"):
        exact_gonality_one_node(0, 2, 1, 1)
    with pytest.raises(ValueError, match=r"branch index 0 outside 1\.\.2"):
        exact_gonality_one_node(2, 2, 0, 1)
    with pytest.raises(ValueError, match=r"branch index 4 outside 1\.\.3"):
        exact_gonality_one_node(2, 3, 1, 4)


# -- lower bound and the full-degree constraint ------------------------


def test_component_lower_bound():
    curve = chain_curve(1)
    p1 = gonal_profile("X", ("x1",), 2, 1)
    p2 = gonal_profile("Y", ("y1",), 3, 1)
    assert component_lower_bound(curve, [p1, p2]) == 3
    assert component_lower_bound(curve, []) == 1
    stray = gonal_profile("Z", ("x1",), 2, 1)
    with pytest.raises(ValueError, match="no component Z"):
        component_lower_bound(curve, [stray])


def _two_sided_cover(delta, x_fibers, y_fibers, x_points, y_points, extras=()):
    """Hand-built cover of a chain curve: X onto TX, Y onto TY, plus one
    rational copy per entry of `extras` riding along on the named side."""
    components = [
        Component("X", 2, tuple(x_points)),
        Component("Y", 2, tuple(y_points)),
    ]
    nodes = [
        NodeRecord(f"n{j}", ("X", f"x{j}"), ("Y", f"y{j}"))
        for j in range(1, delta + 1)
    ]
    parts = [
        ComponentMapDatum("X", "TX", sum(fp.index for fp in x_fibers[0][1]),
                          tuple(x_fibers)),
        ComponentMapDatum("Y", "TY", sum(fp.index for fp in y_fibers[0][1]),
                          tuple(y_fibers)),
    ]
    tx_points = [q for q, _ in x_fibers]
    ty_points = [q for q, _ in y_fibers]
    for i, (side, anchor, q) in enumerate(extras):
        cid = f"R{i}"
        pid = f"r{i}"
        components.append(Component(cid, 0, (pid,)))
        nodes.append(NodeRecord(f"m{i}", (side, anchor), (cid, pid)))
        target = "TX" if side == "X" else "TY"
        parts.append(
            ComponentMapDatum(cid, target, 1, ((q, (FiberPoint(pid, 1),)),))
        )
    target = TargetTree(
        CurveGraph(
            (
                Component("TX", 0, tuple(tx_points)),
                Component("TY", 0, tuple(ty_points)),
            ),
            (NodeRecord("q", ("TX", tx_points[0]), ("TY", ty_points[0])),),
        )
    )
    return CoverMap(CurveGraph(tuple(components), tuple(nodes)), target, tuple(parts))


def test_full_degree_constraint_is_vacuous_without_a_full_side():
    # degree 3 overall, both restrictions of degree 2
    cover = _two_sided_cover(
        1,
        [("s1", (FiberPoint("x1", 2),)), ("s2", (FiberPoint("x2", 2),))],
        [("t1", (FiberPoint("y1", 2),)), ("t2", (FiberPoint("y2", 2),))],
        ("x1", "x2"),
        ("y1", "y2"),
        extras=[("X", "x2", "s2"), ("Y", "y2", "t2")],
    )
    frame = frame_from_curve(chain_curve(1), "X", "Y")
    assert cover.degree == 3
    assert delta_degree_constraint(cover, frame)


def test_full_degree_constraint_needs_degree_at_least_delta():
    fibers = lambda names, qs: [
        (q, (FiberPoint(p, 3),)) for q, p in zip(qs, names)
    ]
    cover = _two_sided_cover(
        4,
        fibers(("x1", "x2", "x3", "x4"), ("s1", "s2", "s3", "s4")),
        fibers(("y1", "y2", "y3", "y4"), ("t1", "t2", "t3", "t4")),
        ("x1", "x2", "x3", "x4"),
        ("y1", "y2", "y3", "y4"),
    )
    frame = frame_from_curve(chain_curve(4), "X", "Y")
    assert cover.degree == 3
    assert not delta_degree_constraint(cover, frame)


def test_full_degree_constraint_passes_at_small_delta():
    cover = _two_sided_cover(
        2,
        [("s1", (FiberPoint("x1", 3),)), ("s2", (FiberPoint("x2", 3),))],
        [("t1", (FiberPoint("y1", 3),)), ("t2", (FiberPoint("y2", 3),))],
        ("x1", "x2"),
        ("y1", "y2"),
    )
    frame = frame_from_curve(chain_curve(2), "X", "Y")
    assert delta_degree_constraint(cover, frame)


def test_full_degree_constraint_compares_indices_at_matched_nodes():
    # X carries the whole degree yet its branch at the doubly-matched
    # node is lighter than Y's
    cover = _two_sided_cover(
        1,
        [("s1", (FiberPoint("x1", 1), FiberPoint("xa", 1), FiberPoint("xb", 1)))],
        [("t1", (FiberPoint("y1", 2),)), ("t2", (FiberPoint("y2", 2),))],
        ("x1", "xa", "xb"),
        ("y1", "y2"),
        extras=[("Y", "y2", "t2")],
    )
    frame = frame_from_curve(chain_curve(1), "X", "Y")
    assert cover.degree == 3
    assert cover.part("X").degree == 3
    assert not delta_degree_constraint(cover, frame)


def test_full_degree_constraint_accepts_dominating_indices():
    cover = _two_sided_cover(
        1,
        [("s1", (FiberPoint("x1", 3),))],
        [("t1", (FiberPoint("y1", 2),)), ("t2", (FiberPoint("y2", 2),))],
        ("x1",),
        ("y1", "y2"),
        extras=[("Y", "y2", "t2")],
    )
    frame = frame_from_curve(chain_curve(1), "X", "Y")
    assert delta_degree_constraint(cover, frame)


# -- classification -----------------------------------------------------


def run_case(delta, p1, p2):
    curve = chain_curve(delta, g1=p1.genus, g2=p2.genus)
    result = classify(curve, p1, p2)
    assert classify_hyperelliptic(curve, p1, p2) == result
    assert classify_trigonal(curve, p1, p2) == result
    return result, frame_from_curve(curve, "X", "Y")


def assert_witnessed(result, frame, degree):
    assert result.witness is not None
    assert result.witness.degree == degree
    assert is_admissible(result.witness)
    assert verify_converse_inequalities(result.witness, frame)
    assert delta_degree_constraint(result.witness, frame)


def test_hyperelliptic_one_node():
    result, frame = run_case(
        1,
        profile("X", 2, 2, [pooled(2, ("x1",), (2,))]),
        profile("Y", 2, 2, [pooled(2, ("y1",), (2,))]),
    )
    assert result.verdict == "hyperelliptic"
    assert result.cases == ("Thm 5.3 (i)",)
    assert_witnessed(result, frame, 2)


def test_hyperelliptic_two_nodes():
    result, frame = run_case(
        2,
        profile("X", 2, 2, [pooled(2, ("x1", "x2"), (1, 1))]),
        profile("Y", 2, 2, [pooled(2, ("y1", "y2"), (1, 1))]),
    )
    assert result.verdict == "hyperelliptic"
    assert result.cases == ("Thm 5.3 (ii)",)
    assert_witnessed(result, frame, 2)


def test_trigonal_one_node_two_sheets():
    result, frame = run_case(
        1,
        profile("X", 2, 2, [pooled(2, ("x1",), (1,))]),
        profile("Y", 2, 2, [pooled(2, ("y1",), (2,))]),
    )
    assert result.verdict == "trigonal"
    assert result.cases == ("Thm 5.6 (i)(a)",)
    assert_witnessed(result, frame, 3)


def test_trigonal_one_node_mixed_degrees():
    for e2 in (2, 3):
        result, frame = run_case(
            1,
            profile("X", 2, 2, [pooled(2, ("x1",), (2,))]),
            profile("Y", 3, 3, [pooled(3, ("y1",), (e2,))]),
        )
        assert result.verdict == "trigonal"
        assert result.cases == ("Thm 5.6 (i)(b)",)
        assert_witnessed(result, frame, 3)


def test_trigonal_one_node_totally_ramified():
    result, frame = run_case(
        1,
        profile("X", 3, 3, [pooled(3, ("x1",), (3,))]),
        profile("Y", 3, 3, [pooled(3, ("y1",), (3,))]),
    )
    assert result.verdict == "trigonal"
    assert result.cases == ("Thm 5.6 (i)(c)",)
    assert_witnessed(result, frame, 3)


def test_trigonal_two_nodes_pooled_mixed():
    result, frame = run_case(
        2,
        profile("X", 2, 2, [pooled(2, ("x1", "x2"), (1, 1))]),
        profile("Y", 3, 3, [pooled(3, ("y1", "y2"), (1, 2))]),
    )
    assert result.verdict == "trigonal"
    assert result.cases == ("Thm 5.6 (ii)(a)",)
    assert_witnessed(result, frame, 3)


def test_trigonal_two_nodes_both_three_sheeted():
    result, frame = run_case(
        2,
        profile("X", 3, 3, [pooled(3, ("x1", "x2"), (1, 2))]),
        profile("Y", 3, 3, [pooled(3, ("y1", "y2"), (1, 2))]),
    )
    assert result.verdict == "trigonal"
    assert result.cases == ("Thm 5.6 (ii)(b)",)
    assert_witnessed(result, frame, 3)


def test_trigonal_two_nodes_aligned_heavy_branches():
    result, frame = run_case(
        2,
        profile("X", 2, 2, [classed(2, [[("x1", 1)], [("x2", 2)]])]),
        profile("Y", 3, 3, [pooled(3, ("y1", "y2"), (1, 2))]),
    )
    assert result.verdict == "trigonal"
    assert result.cases == ("Thm 5.6 (ii)(c)",)
    assert_witnessed(result, frame, 3)


def test_trigonal_two_nodes_misaligned_heavy_branches():
    # the index-2 branches sit at different nodes, so the matching
    # clause fails and nothing else applies
    result, _ = run_case(
        2,
        profile("X", 2, 2, [classed(2, [[("x1", 2)], [("x2", 1)]])]),
        profile("Y", 3, 3, [pooled(3, ("y1", "y2"), (1, 2))]),
    )
    assert result.verdict == "neither-at-<=3"
    assert result.cases == ()
    assert result.witness is None


def test_trigonal_two_nodes_pooled_against_spread():
    result, frame = run_case(
        2,
        profile("X", 2, 2, [pooled(2, ("x1", "x2"), (1, 1))]),
        profile("Y", 2, 2, [classed(2, [[("y1", 1)], [("y2", 2)]])]),
    )
    assert result.verdict == "trigonal"
    assert result.cases == ("Thm 5.6 (ii)(d)",)
    assert_witnessed(result, frame, 3)


def test_trigonal_two_nodes_spread_both_sides():
    result, frame = run_case(
        2,
        profile("X", 2, 2, [classed(2, [[("x1", 1)], [("x2", 2)]])]),
        profile("Y", 2, 2, [classed(2, [[("y1", 1)], [("y2", 2)]])]),
    )
    assert result.verdict == "trigonal"
    assert result.cases == ("Thm 5.6 (ii)(e)",)
    assert_witnessed(result, frame, 3)


def test_trigonal_three_nodes_pooled():
    result, frame = run_case(
        3,
        profile("X", 3, 3, [pooled(3, ("x1", "x2", "x3"), (1, 1, 1))]),
        profile("Y", 3, 3, [pooled(3, ("y1", "y2", "y3"), (1, 1, 1))]),
    )
    assert result.verdict == "trigonal"
    assert result.cases == ("Thm 5.6 (iii)(a)",)
    assert_witnessed(result, frame, 3)


def test_trigonal_three_nodes_pair_against_pooled():
    result, frame = run_case(
        3,
        profile("X", 2, 2, [classed(2, [[("x1", 1), ("x2", 1)], [("x3", 2)]])]),
        profile("Y", 3, 3, [pooled(3, ("y1", "y2", "y3"), (1, 1, 1))]),
    )
    assert result.verdict == "trigonal"
    assert result.cases == ("Thm 5.6 (iii)(b)",)
    assert_witnessed(result, frame, 3)


def test_trigonal_three_nodes_pair_on_both_sides():
    result, frame = run_case(
        3,
        profile("X", 2, 2, [classed(2, [[("x1", 1), ("x2", 1)], [("x3", 2)]])]),
        profile("Y", 2, 2, [classed(2, [[("y1", 2)], [("y2", 1), ("y3", 1)]])]),
    )
    assert result.verdict == "trigonal"
    assert result.cases == ("Thm 5.6 (iii)(c)",)
    assert_witnessed(result, frame, 3)


def test_classification_lists_every_matching_case():
    result, frame = run_case(
        2,
        profile(
            "X",
            2,
            2,
            [
                pooled(2, ("x1", "x2"), (1, 1)),
                classed(2, [[("x1", 1)], [("x2", 2)]]),
            ],
        ),
        profile("Y", 3, 3, [pooled(3, ("y1", "y2"), (1, 2))]),
    )
    assert result.verdict == "trigonal"
    assert result.cases == ("Thm 5.6 (ii)(a)", "Thm 5.6 (ii)(c)")
    assert_witnessed(result, frame, 3)


def test_rational_components_are_rejected():
    curve = chain_curve(1, g1=0)
    p1 = profile("X", 0, 1, [pooled(1, ("x1",), (1,))])
    p2 = gonal_profile("Y", ("y1",), 2, 2)
    with pytest.raises(ProfileError, match="component X is rational"):
        classify(curve, p1, p2)


def test_four_nodes_exceed_the_case_lists():
    result, _ = run_case(
        4,
        profile("X", 2, 2, [classed(2, [[(f"x{j}", 1)] for j in range(1, 5)])]),
        profile("Y", 2, 2, [classed(2, [[(f"y{j}", 1)] for j in range(1, 5)])]),
    )
    assert result.verdict == "neither-at-<=3"
    assert result.cases == ()
    assert result.witness is None


def test_high_gonality_settles_without_behaviors():
    result, _ = run_case(
        1,
        profile("X", 5, 4, [pooled(4, ("x1",), (1,))], complete=False),
        profile("Y", 5, 4, [pooled(4, ("y1",), (1,))], complete=False),
    )
    assert result.verdict == "neither-at-<=3"


def test_incomplete_profiles_with_no_match_stay_undecided():
    split3 = lambda names: classed(2, [[(p, 1)] for p in names])
    p1 = profile("X", 2, 2, [split3(("x1", "x2", "x3"))], complete=False)
    p2 = profile("Y", 2, 2, [split3(("y1", "y2", "y3"))], complete=False)
    result, _ = run_case(3, p1, p2)
    assert result.verdict == "undecided"
    assert result.cases == ()

    full1 = profile("X", 2, 2, p1.behaviors)
    full2 = profile("Y", 2, 2, p2.behaviors)
    settled, _ = run_case(3, full1, full2)
    assert settled.verdict == "neither-at-<=3"


def test_incomplete_profiles_leave_a_trigonal_match_undecided():
    # a matched case certifies degree three as attainable, but with
    # incomplete degree-2 data gonality two cannot be excluded
    result, frame = run_case(
        1,
        profile("X", 2, 2, [pooled(2, ("x1",), (1,))], complete=False),
        profile("Y", 2, 2, [pooled(2, ("y1",), (1,))], complete=False),
    )
    assert result.verdict == "undecided"
    assert result.cases == ("Thm 5.6 (i)(a)",)
    assert_witnessed(result, frame, 3)


def test_self_node_blocks_the_frame():
    kinked = CurveGraph(
        (Component("X", 2, ("x1", "p", "q")), Component("Y", 2, ("y1",))),
        (
            NodeRecord("n1", ("X", "x1"), ("Y", "y1")),
            NodeRecord("n2", ("X", "p"), ("X", "q")),
        ),
    )
    p1 = gonal_profile("X", ("x1",), 2, 2)
    p2 = gonal_profile("Y", ("y1",), 2, 2)
    with pytest.raises(ValueError, match="self-node"):
        classify(kinked, p1, p2)


def test_one_node_verdicts_match_the_exact_formula():
    sides = [(g, e) for g in (2, 3) for e in range(1, g + 1)]
    for g1, e1 in sides:
        for g2, e2 in sides:
            p1 = gonal_profile("X", ("x1",), g1, e1)
            p2 = gonal_profile("Y", ("y1",), g2, e2)
            curve = chain_curve(1, g1=p1.genus, g2=p2.genus)
            value = exact_gonality_one_node(g1, g2, e1, e2)
            result = classify(curve, p1, p2)
            if value == 2:
                assert result.verdict == "hyperelliptic"
            elif value == 3:
                assert result.verdict == "trigonal"
            else:
                assert result.verdict == "neither-at-<=3"
            assert component_lower_bound(curve, [p1, p2]) <= value
            assert value <= two_component_bound(curve, p1, p2)
            assert value <= generic_upper_bound(curve, {"X": g1, "Y": g2})
