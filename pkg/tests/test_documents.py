"""The plain-text document format: round trips in both directions and
the diagnostics it raises."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from admcovers.covers import CoverMap, ComponentMapDatum, FiberPoint, TargetTree
from admcovers.curves import Component, CurveGraph, NodeRecord
from admcovers.documents import (
    CurveDocument,
    DocumentError,
    describe_cover,
    parse_document,
    serialize_document,
)
from admcovers.profiles import ComponentProfile
from helpers import chain_curve, classed, pooled, profile

CANONICAL = """\
component id=X genus=2 gonality=2
component id=Y genus=3 gonality=3
node id=n1 branches=X.x1,Y.y1
node id=n2 branches=X.x2,Y.y2
behavior id=X degree=2 fiber=x1:2|x2:2
behavior id=Y degree=3 fiber=y1:1,y2:1 extra=1
"""


def built_document() -> CurveDocument:
    curve = chain_curve(2, 2, 3)
    return CurveDocument(
        curve,
        (
            profile("X", 2, 2, [classed(2, [[("x1", 2)], [("x2", 2)]])]),
            profile("Y", 3, 3, [pooled(3, ["y1", "y2"], [1, 1])]),
        ),
    )


def test_serialize_then_parse_is_identity():
    doc = built_document()
    assert parse_document(serialize_document(doc)) == doc


def test_parse_then_serialize_is_identity_on_canonical_text():
    assert serialize_document(parse_document(CANONICAL)) == CANONICAL


def test_record_kinds_interleave_freely():
    # Node order fixes point order, so only the interleaving of kinds
    # is free: merge the kind groups in random order, keeping each
    # group's own sequence.
    groups = {}
    for line in CANONICAL.strip().splitlines():
        groups.setdefault(line.split()[0], []).append(line)
    rng = random.Random(7)
    reference = parse_document(CANONICAL)
    for _ in range(12):
        pools = {kind: list(lines) for kind, lines in groups.items()}
        merged = []
        while pools:
            kind = rng.choice(sorted(pools))
            merged.append(pools[kind].pop(0))
            if not pools[kind]:
                del pools[kind]
        assert parse_document("\n".join(merged)) == reference


def test_comments_and_blanks_skipped():
    noisy = "# leading comment\n\n" + CANONICAL.replace(
        "node id=n1", "  # indented comment\nnode id=n1"
    )
    assert parse_document(noisy) == parse_document(CANONICAL)


def test_qualified_fiber_points_accepted_and_normalized():
    qualified = CANONICAL.replace("fiber=x1:2|x2:2", "fiber=X.x1:2|X.x2:2")
    doc = parse_document(qualified)
    assert doc == parse_document(CANONICAL)
    assert "X.x1:2" not in serialize_document(doc)


def test_complete_flag_round_trips():
    bare = "component id=C genus=2 gonality=2\n"
    doc = parse_document(bare)
    assert doc.profiles[0].complete is False
    assert serialize_document(doc) == bare

    overridden = "component id=C genus=2 gonality=2 complete=yes\n"
    doc = parse_document(overridden)
    assert doc.profiles[0].complete is True
    assert serialize_document(doc) == overridden

    listed = CANONICAL.replace(
        "component id=X genus=2 gonality=2",
        "component id=X genus=2 gonality=2 complete=no",
    )
    doc = parse_document(listed)
    assert doc.profile("X").complete is False
    assert doc.profile("Y").complete is True
    assert serialize_document(doc) == listed


def test_component_without_gonality_gets_no_profile():
    doc = parse_document("component id=C genus=2\n")
    assert doc.profiles == ()
    assert doc.profile("C") is None


def test_multiclass_fiber_round_trips():
    curve = chain_curve(3)
    split = classed(3, [[("x1", 1)], [("x2", 1), ("x3", 1)]])
    doc = CurveDocument(
        curve,
        (
            profile("X", 2, 2, [split]),
            profile("Y", 2, 2, [classed(2, [[("y1", 2)], [("y2", 2)], [("y3", 2)]])]),
        ),
    )
    text = serialize_document(doc)
    assert "fiber=x1:1|x2:1,x3:1 extra=1,1|1" in text
    assert parse_document(text) == doc


# -- diagnostics --------------------------------------------------------


def expect_error(text: str, fragment: str, line: int | None = None) -> DocumentError:
    with pytest.raises(DocumentError) as excinfo:
        parse_document(text)
    assert fragment in str(excinfo.value), str(excinfo.value)
    if line is not None:
        assert excinfo.value.line == line
    return excinfo.value


def test_unknown_record_kind():
    expect_error("widget id=X\n", "unknown record kind 'widget'", line=1)


def test_malformed_token():
    expect_error("component id\n", "expected key=value, got 'id'", line=1)


def test_unknown_key():
    err = expect_error(
        "component id=X genus=2 color=red\n", "does not take key 'color'"
    )
    assert err.column is not None


def test_duplicate_key():
    expect_error("component id=X genus=2 genus=3\n", "duplicate key 'genus'")


def test_missing_required_key():
    expect_error("component id=X\n", "component record needs genus=")
    expect_error("behavior id=X degree=2\n", "behavior record needs fiber=")


def test_bad_name_and_bad_int():
    expect_error("component id=X.Y genus=2\n", "not a plain name")
    expect_error("component id=X genus=two\n", "genus='two' is not an integer")
    expect_error("component id=X genus=-1\n", "genus=-1 is below 0")


def test_component_declared_twice():
    expect_error(
        "component id=X genus=2\ncomponent id=X genus=3\n",
        "component X declared twice",
        line=2,
    )


def test_node_errors():
    base = "component id=X genus=2\ncomponent id=Y genus=2\n"
    expect_error(
        base + "node id=n branches=X.x1,Y.y1\nnode id=n branches=X.x2,Y.y2\n",
        "node n declared twice",
        line=4,
    )
    expect_error(base + "node id=n branches=X.x1\n", "exactly two")
    expect_error(base + "node id=n branches=X.x1,y1\n", "not a component.point")
    expect_error(
        base + "node id=n branches=X.x1,Z.z1\n",
        "dangling point reference: no component Z",
    )
    expect_error(
        base
        + "node id=n1 branches=X.x1,Y.y1\nnode id=n2 branches=X.x1,Y.y2\n",
        "point X.x1 used by two nodes",
        line=4,
    )
    expect_error(
        base + "node id=n branches=X.p,X.p\n", "point X.p used by two nodes"
    )


def test_empty_document():
    err = expect_error("# nothing here\n", "declares no components", line=0)
    assert str(err).startswith("document:")


def test_behavior_errors():
    base = (
        "component id=X genus=2 gonality=2\n"
        "component id=Y genus=2 gonality=2\n"
        "node id=n1 branches=X.x1,Y.y1\n"
    )
    expect_error(
        base + "behavior id=Z degree=2 fiber=z1:2\n",
        "dangling point reference: no component Z",
    )
    expect_error(
        base.replace(" gonality=2\nc", "\nc", 1)
        + "behavior id=X degree=2 fiber=x1:2\n",
        "declares no gonality",
    )
    expect_error(base + "behavior id=X degree=0 fiber=x1:2\n", "degree=0 is below 1")
    expect_error(
        base + "behavior id=X degree=2 fiber=x1:2 extra=1|1\n",
        "extra lists 2 groups, fiber has 1",
    )
    expect_error(base + "behavior id=X degree=2 fiber=x1:2|\n", "empty fiber class")
    expect_error(base + "behavior id=X degree=2 fiber=x1\n", "not a point:index pair")
    expect_error(
        base + "behavior id=X degree=2 fiber=Y.y1:2\n",
        "fiber point Y.y1 does not lie on component X",
    )
    expect_error(
        base + "behavior id=X degree=2 fiber=x-1:2\n", "'x-1' is not a point name"
    )
    expect_error(
        base + "behavior id=X degree=2 fiber=x1:two\n", "index 'two' is not an integer"
    )
    expect_error(base + "behavior id=X degree=2 fiber=x1:0\n", "index 0 is below 1")
    expect_error(
        base + "behavior id=X degree=2 fiber=x2:2\n",
        "dangling point reference: no node on X uses x2",
    )
    expect_error(
        base + "behavior id=X degree=2 fiber=x1:1 extra=one\n",
        "extra index 'one' is not an integer",
    )
    expect_error(
        base + "behavior id=X degree=3 fiber=x1:2\n",
        "sums to 2, not the degree 3; each full fiber must sum to the degree",
    )
    expect_error(
        base + "behavior id=X degree=1 fiber=x1:1\n",
        "degree 1 is below the gonality 2 of X",
    )


def test_behavior_over_branch_budget():
    text = (
        "component id=X genus=0 gonality=2\n"
        "component id=Y genus=2 gonality=2\n"
        "node id=n1 branches=X.x1,Y.y1\n"
        "node id=n2 branches=X.x2,Y.y2\n"
        "node id=n3 branches=X.x3,Y.y3\n"
        "behavior id=X degree=2 fiber=x1:2|x2:2|x3:2\n"
    )
    expect_error(text, "exceeds the branch budget 2", line=6)


def test_behavior_branch_sets_must_agree():
    text = (
        "component id=X genus=2 gonality=2\n"
        "component id=Y genus=2 gonality=2\n"
        "node id=n1 branches=X.x1,Y.y1\n"
        "node id=n2 branches=X.x2,Y.y2\n"
        "behavior id=X degree=2 fiber=x1:1,x2:1\n"
        "behavior id=X degree=2 fiber=x1:2\n"
    )
    err = expect_error(text, "the one on line 5 names", line=6)
    assert "['x1']" in str(err)


def test_profile_error_surfaces_on_component_line():
    expect_error(
        "component id=X genus=2 gonality=1\n",
        "non-rational component has gonality >= 2",
        line=1,
    )
    expect_error(
        "component id=X genus=2 gonality=2 complete=maybe\n",
        "complete='maybe' is not yes or no",
    )


def test_error_rendering():
    err = DocumentError(4, "boom", column=7)
    assert str(err) == "line 4, column 7: boom"
    assert (err.line, err.column, err.message) == (4, 7, "boom")


# -- randomized round trip ---------------------------------------------


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 4),
    st.lists(st.tuples(st.integers(2, 4), st.booleans()), min_size=2, max_size=2),
    st.booleans(),
)
def test_random_documents_round_trip(delta, sides, with_behaviors):
    (g1, p1), (g2, p2) = sides
    curve = chain_curve(delta, g1, g2)
    profiles = []
    for cid, genus, wanted in (("X", g1, p1), ("Y", g2, p2)):
        if not wanted:
            continue
        points = [f"{cid.lower()}{j}" for j in range(1, delta + 1)]
        behaviors = []
        if with_behaviors:
            behaviors = [classed(2, [[(p, 2)] for p in points])]
        profiles.append(
            ComponentProfile(cid, genus, 2, tuple(behaviors), bool(behaviors))
        )
    doc = CurveDocument(curve, tuple(profiles))
    text = serialize_document(doc)
    assert parse_document(text) == doc
    assert serialize_document(parse_document(text)) == text


# -- cover dumps --------------------------------------------------------


def test_describe_cover_layout():
    source = CurveGraph(
        (Component("X", 2, ("x1",)), Component("Y", 2, ("y1",))),
        (NodeRecord("n1", ("X", "x1"), ("Y", "y1")),),
    )
    target = TargetTree(
        CurveGraph(
            (Component("T1", 0, ("t1",)), Component("T2", 0, ("t2",))),
            (NodeRecord("tn", ("T1", "t1"), ("T2", "t2")),),
        )
    )
    cover = CoverMap(
        source,
        target,
        (
            ComponentMapDatum("X", "T1", 2, (("t1", (FiberPoint("x1", 2),)),), 5),
            ComponentMapDatum("Y", "T2", 2, (("t2", (FiberPoint("y1", 2),)),), 5),
        ),
    )
    text = describe_cover(cover)
    assert text == describe_cover(cover)
    assert text.splitlines()[0] == "degree 2"
    assert "source X genus=2" in text
    assert "source-node n1 X.x1~Y.y1" in text
    assert "target-node tn T1.t1~T2.t2" in text
    assert "part X -> T1 degree=2" in text
    assert "  fiber t1 <- x1:2" in text
    assert "  extra-simple 5" in text
