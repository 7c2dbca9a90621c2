"""Finite maps from nodal curves onto rational target trees.

A cover is stored one source component at a time: each part records
the target component, the degree, the declared fibers (grouped by the
target point they sit over), and a count of further simple branch
points at unspecified generic positions.  Node-level consistency, the
four admissibility conditions, and Riemann-Hurwitz feasibility are
computed from the assembled CoverMap.

Conditions, in the order they are checked:

(1) the preimage of the target's singular locus is exactly the
    source's singular locus;
(2) every target subcurve carries at least three markers, counting
    nodes joining it to the complement and smooth branch multiplicity;
(3) the two branches of a source node share one ramification index;
(4) over each smooth target point there is at most one ramification
    point, of index two.

Quasi admissible means (1)-(3) plus per-part Riemann-Hurwitz
feasibility; admissible adds (4).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curves import CurveGraph, CurveStructureError, NodeRecord


class CoverStructureError(ValueError):
    """The data does not assemble into a finite map of nodal curves."""


@dataclass(frozen=True)
class FiberPoint:
    """A named source point with its ramification index."""

    point: str
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise CoverStructureError(f"point {self.point}: index {self.index} < 1")


Fiber = tuple[FiberPoint, ...]


@dataclass(frozen=True)
class ComponentMapDatum:
    """Restriction of a cover to one source component.

    `fibers` lists the declared fibers keyed by target point; a fiber,
    once declared, is complete (its indices sum to the degree).  Parts
    of the branch divisor that sit at generic unnamed positions are
    carried as a count of simple points in `extra_simple`.  A datum
    with `complete=False` is allowed to under-report branching; every
    consistency check then degrades from equality to inequality.
    """

    source: str
    target: str
    degree: int
    fibers: tuple[tuple[str, Fiber], ...] = ()
    extra_simple: int = 0
    complete: bool = True

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise CoverStructureError(f"part {self.source}: degree {self.degree} < 1")
        if self.extra_simple < 0:
            raise CoverStructureError(f"part {self.source}: negative extra_simple")
        seen_targets: set[str] = set()
        seen_points: set[str] = set()
        for q, fiber in self.fibers:
            if q in seen_targets:
                raise CoverStructureError(
                    f"part {self.source}: two fibers over {q}"
                )
            seen_targets.add(q)
            for fp in fiber:
                if fp.point in seen_points:
                    raise CoverStructureError(
                        f"part {self.source}: {fp.point} in two fibers"
                    )
                seen_points.add(fp.point)
                if fp.index > self.degree:
                    raise CoverStructureError(
                        f"part {self.source}: index {fp.index} exceeds degree"
                    )

    def fiber_over(self, q: str) -> Fiber | None:
        for key, fiber in self.fibers:
            if key == q:
                return fiber
        return None

    def declared_source_points(self) -> tuple[str, ...]:
        return tuple(fp.point for _, fiber in self.fibers for fp in fiber)

    def image_of(self, pid: str) -> str | None:
        """Target point of a declared source point."""
        for q, fiber in self.fibers:
            for fp in fiber:
                if fp.point == pid:
                    return q
        return None

    def index_of(self, pid: str) -> int:
        for _, fiber in self.fibers:
            for fp in fiber:
                if fp.point == pid:
                    return fp.index
        raise KeyError(f"part {self.source}: {pid} not declared")


def fiber_sum_check(datum: ComponentMapDatum) -> bool:
    """Every declared fiber's indices sum to the degree."""
    return all(
        sum(fp.index for fp in fiber) == datum.degree for _, fiber in datum.fibers
    )


def multiplicity(datum: ComponentMapDatum, q: str) -> int:
    """Branch multiplicity of a declared fiber: sum of (index - 1)."""
    fiber = datum.fiber_over(q)
    if fiber is None:
        raise ValueError(f"part {datum.source}: no declared fiber over {q}")
    return sum(fp.index - 1 for fp in fiber)


def branch_budget(genus: int, degree: int) -> int:
    """Total branch multiplicity of a degree-k map from a genus-g
    component onto a rational one: 2g + 2k - 2."""
    return 2 * genus + 2 * degree - 2


@dataclass(frozen=True)
class TargetTree:
    """A connected rational target: every component genus zero, dual
    graph a tree."""

    curve: CurveGraph

    def __post_init__(self) -> None:
        if not self.curve.is_connected():
            raise CurveStructureError("target must be connected")
        if any(c.genus != 0 for c in self.curve.components):
            raise CurveStructureError("target components must be rational")
        if len(self.curve.nodes) != len(self.curve.components) - 1:
            raise CurveStructureError("target dual graph must be a tree")


@dataclass(frozen=True)
class ConditionReport:
    """Boolean verdict plus one line per violation."""

    ok: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class CoverMap:
    """A finite map from a nodal source onto a rational target tree.

    Construction validates the structural glue: one part per source
    component, fibers keyed by actual target points and listing actual
    source points, fiber sums equal to part degrees, every source node
    branch declared exactly once, and one common degree over every
    target component.  The admissibility conditions are separate
    queries, so imperfect covers can be built and examined.
    """

    source: CurveGraph
    target: TargetTree
    parts: tuple[ComponentMapDatum, ...]
    _by_source: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "parts", tuple(sorted(self.parts, key=lambda p: p.source))
        )
        by_source: dict[str, ComponentMapDatum] = {}
        for part in self.parts:
            if part.source in by_source:
                raise CoverStructureError(f"two parts for component {part.source}")
            by_source[part.source] = part
        for comp in self.source.components:
            if comp.cid not in by_source:
                raise CoverStructureError(f"component {comp.cid} has no part")
        if set(by_source) != {c.cid for c in self.source.components}:
            raise CoverStructureError("part for a component not in the source")
        tgt = self.target.curve
        for part in self.parts:
            tgt_comp = tgt.component(part.target)
            src_comp = self.source.component(part.source)
            src_points = set(src_comp.points)
            for q, fiber in part.fibers:
                if q not in tgt_comp.points:
                    raise CoverStructureError(
                        f"part {part.source}: {q} is not a point of {part.target}"
                    )
                for fp in fiber:
                    if fp.point not in src_points:
                        raise CoverStructureError(
                            f"part {part.source}: {fp.point} not on the component"
                        )
            if not fiber_sum_check(part):
                raise CoverStructureError(
                    f"part {part.source}: a declared fiber does not sum to "
                    f"the degree"
                )
        for node in self.source.nodes:
            for cid, pid in node.branches:
                if by_source[cid].image_of(pid) is None:
                    raise CoverStructureError(
                        f"source node branch {pid} is not declared in a fiber"
                    )
        degrees: dict[str, int] = {}
        for part in self.parts:
            degrees[part.target] = degrees.get(part.target, 0) + part.degree
        for comp in tgt.components:
            if comp.cid not in degrees:
                raise CoverStructureError(f"target component {comp.cid} not covered")
        if len(set(degrees.values())) != 1:
            raise CoverStructureError(
                f"degree varies across target components: {sorted(degrees.items())}"
            )
        object.__setattr__(self, "_by_source", by_source)

    @property
    def degree(self) -> int:
        return sum(p.degree for p in self.parts if p.target == self.parts[0].target)

    def part(self, source_cid: str) -> ComponentMapDatum:
        try:
            return self._by_source[source_cid]
        except KeyError:
            raise KeyError(f"no part for component {source_cid}") from None

    def parts_onto(self, target_cid: str) -> tuple[ComponentMapDatum, ...]:
        return tuple(p for p in self.parts if p.target == target_cid)

    def image_of(self, pid: str) -> str | None:
        """Declared target point of a source point, if any."""
        cid = self.source.point_component(pid)
        return self._by_source[cid].image_of(pid)

    def index_of(self, pid: str) -> int:
        cid = self.source.point_component(pid)
        return self._by_source[cid].index_of(pid)

    def point_multiplicity(self, q: str) -> int:
        """Branch multiplicity at one target point, all parts combined."""
        w = self.target.curve.point_component(q)
        total = 0
        for part in self.parts_onto(w):
            fiber = part.fiber_over(q)
            if fiber is not None:
                total += sum(fp.index - 1 for fp in fiber)
        return total


def restrict(cover: CoverMap, source_cid: str) -> ComponentMapDatum:
    """The datum of one source component, exactly as stored."""
    return cover.part(source_cid)


def check_condition_1_and_3(cover: CoverMap) -> ConditionReport:
    """Nodes over nodes, matching indices on both branches.

    Checks, with one diagnostic per failure: every source node maps to
    the two branches of one target node with equal indices; every
    declared point over a target node branch is itself a source node
    branch; and every part whose target component carries a node branch
    declares the fiber there (an undeclared fiber would hide smooth
    preimages of a node).
    """
    violations: list[str] = []
    src, tgt = cover.source, cover.target.curve
    target_branches = {b for n in tgt.nodes for b in n.branches}
    for node in src.nodes:
        (ca, pa), (cb, pb) = node.branches
        qa = cover.part(ca).image_of(pa)
        qb = cover.part(cb).image_of(pb)
        image = {(cover.part(ca).target, qa), (cover.part(cb).target, qb)}
        if not any(set(t.branches) == image for t in tgt.nodes):
            violations.append(
                f"node {node.nid}: branches map to {sorted(image)}, "
                f"not the two branches of one target node"
            )
            continue
        ea = cover.part(ca).index_of(pa)
        eb = cover.part(cb).index_of(pb)
        if ea != eb:
            violations.append(
                f"node {node.nid}: branch indices differ ({ea} vs {eb})"
            )
    for part in cover.parts:
        node_points = [
            q
            for q in tgt.component(part.target).points
            if (part.target, q) in target_branches
        ]
        for q in node_points:
            fiber = part.fiber_over(q)
            if fiber is None:
                violations.append(
                    f"part {part.source}: no declared fiber over node point {q}"
                )
                continue
            for fp in fiber:
                if not src.is_node_branch(fp.point):
                    violations.append(
                        f"part {part.source}: smooth point {fp.point} "
                        f"lies over node point {q}"
                    )
    return ConditionReport(not violations, tuple(violations))


def _smooth_branch_total(cover: CoverMap, cids: frozenset[str]) -> int:
    """Branch multiplicity over the smooth target points of a subcurve,
    declared fibers plus generic simple points."""
    tgt = cover.target.curve
    node_branches = {b for n in tgt.nodes for b in n.branches}
    total = 0
    for part in cover.parts:
        if part.target not in cids:
            continue
        total += part.extra_simple
        for q, fiber in part.fibers:
            if (part.target, q) in node_branches:
                continue
            total += sum(fp.index - 1 for fp in fiber)
    return total


def violates_condition2(cover: CoverMap, cids: frozenset[str] | set[str]) -> bool:
    """True when the subcurve carries fewer than three markers:
    nodes joining it to the complement plus smooth branch multiplicity."""
    inside = frozenset(cids)
    tgt = cover.target.curve
    all_cids = set(tgt.component_ids())
    if not inside or not inside <= all_cids:
        raise ValueError("subcurve must be a nonempty set of target component ids")
    if inside == all_cids:
        joining = 0
    else:
        _, nodes = tgt.subcurve_complement(inside)
        joining = len(nodes)
    return joining + _smooth_branch_total(cover, inside) < 3


def check_condition2(cover: CoverMap) -> ConditionReport:
    """Condition (2) on every subcurve, reduced to single components.

    A union of components satisfies the bound as soon as each component
    does, so only the components themselves are checked.
    """
    violations = tuple(
        f"target component {cid} carries fewer than three markers"
        for cid in cover.target.curve.component_ids()
        if violates_condition2(cover, frozenset({cid}))
    )
    return ConditionReport(not violations, violations)


def check_condition4(cover: CoverMap) -> ConditionReport:
    """At most one ramification point, of index two, over each smooth
    target point.  Generic simple points count one each and never
    collide by construction."""
    violations: list[str] = []
    tgt = cover.target.curve
    node_branches = {b for n in tgt.nodes for b in n.branches}
    per_point: dict[str, int] = {}
    for part in cover.parts:
        for q, fiber in part.fibers:
            if (part.target, q) in node_branches:
                continue
            per_point[q] = per_point.get(q, 0) + sum(fp.index - 1 for fp in fiber)
    for q in sorted(per_point):
        if per_point[q] > 1:
            violations.append(
                f"smooth target point {q} has branch multiplicity {per_point[q]}"
            )
    return ConditionReport(not violations, tuple(violations))


def rh_feasible(cover: CoverMap) -> ConditionReport:
    """Riemann-Hurwitz accounting per part.

    Declared multiplicity plus generic simple points must equal
    2g + 2k - 2 for a complete part and never exceed it for an
    incomplete one.
    """
    violations: list[str] = []
    for part in cover.parts:
        genus = cover.source.component(part.source).genus
        budget = branch_budget(genus, part.degree)
        declared = (
            sum(multiplicity(part, q) for q, _ in part.fibers) + part.extra_simple
        )
        if part.complete and declared != budget:
            violations.append(
                f"part {part.source}: multiplicity {declared} != budget {budget}"
            )
        elif not part.complete and declared > budget:
            violations.append(
                f"part {part.source}: multiplicity {declared} > budget {budget}"
            )
    return ConditionReport(not violations, tuple(violations))


def is_quasi_admissible(cover: CoverMap) -> bool:
    """Conditions (1)-(3) plus Riemann-Hurwitz feasibility."""
    return bool(
        check_condition_1_and_3(cover)
        and check_condition2(cover)
        and rh_feasible(cover)
    )


def is_admissible(cover: CoverMap) -> bool:
    """Quasi admissible with only simple smooth ramification."""
    return is_quasi_admissible(cover) and bool(check_condition4(cover))


def explain_inadmissibility(cover: CoverMap) -> tuple[str, ...]:
    """All diagnostics from the four condition checks, in check order."""
    return (
        check_condition_1_and_3(cover).violations
        + check_condition2(cover).violations
        + rh_feasible(cover).violations
        + check_condition4(cover).violations
    )


@dataclass(frozen=True)
class TwoComponentFrame:
    """The two distinguished smooth components of a stable curve and,
    per original node, the pair of branch points (first component's
    first).  Surgery reroutes nodes through contractible chains; the
    frame keeps hold of the points so degree inequalities can be
    checked on whatever cover the construction produced."""

    comp1: str
    comp2: str
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        if self.comp1 == self.comp2:
            raise ValueError("the two components must differ")
        if not self.pairs:
            raise ValueError("a frame needs at least one node pair")
        flat = [p for pair in self.pairs for p in pair]
        if len(set(flat)) != len(flat):
            raise ValueError("node branch points must be pairwise distinct")


def frame_from_curve(curve: CurveGraph, comp1: str, comp2: str) -> TwoComponentFrame:
    """The frame of a curve with exactly the two named smooth
    components: per node, the branch pair oriented first-component
    first, ordered by node id."""
    if {c.cid for c in curve.components} != {comp1, comp2}:
        raise ValueError("curve must consist of exactly the two components")
    pairs = []
    for node in sorted(curve.nodes, key=lambda n: n.nid):
        sides = {node.branch_a[0]: node.branch_a[1], node.branch_b[0]: node.branch_b[1]}
        if set(sides) != {comp1, comp2}:
            raise ValueError(
                f"node {node.nid} does not join the two components; "
                f"a self-node makes a component singular"
            )
        pairs.append((sides[comp1], sides[comp2]))
    return TwoComponentFrame(comp1, comp2, tuple(pairs))


def lemma_tj_points(cover: CoverMap, frame: TwoComponentFrame) -> tuple[str, str]:
    """The designated exit points q_1, q_2 on the images of the two
    components: where the target tree path from the image of one
    component leaves toward the other.  Defined when the images differ.
    """
    b1 = cover.part(frame.comp1).target
    b2 = cover.part(frame.comp2).target
    if b1 == b2:
        raise ValueError("component images coincide; no exit points")
    tgt = cover.target.curve
    adj: dict[str, list[tuple[str, NodeRecord]]] = {c.cid: [] for c in tgt.components}
    for node in tgt.nodes:
        ca, cb = node.branch_a[0], node.branch_b[0]
        adj[ca].append((cb, node))
        adj[cb].append((ca, node))
    prev: dict[str, tuple[str, NodeRecord]] = {}
    queue = [b1]
    seen = {b1}
    while queue:
        current = queue.pop(0)
        if current == b2:
            break
        for other, node in adj[current]:
            if other not in seen:
                seen.add(other)
                prev[other] = (current, node)
                queue.append(other)
    path_nodes = []
    cursor = b2
    while cursor != b1:
        parent, node = prev[cursor]
        path_nodes.append(node)
        cursor = parent
    first = path_nodes[-1]
    last = path_nodes[0]
    q1 = first.branch_a[1] if first.branch_a[0] == b1 else first.branch_b[1]
    q2 = last.branch_a[1] if last.branch_a[0] == b2 else last.branch_b[1]
    return (q1, q2)
