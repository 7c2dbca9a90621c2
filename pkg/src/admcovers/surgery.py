"""Cover surgery: expansion, gluing, and node regluing.

Three constructions, all of which trade a cover for a cover:

* `to_admissible` removes excess smooth ramification from a quasi
  admissible cover by sprouting a rational component of the target at
  every smooth point of multiplicity two or more and lifting each
  fiber point onto its own rational tail, totally ramified at the new
  node.  Multiplicity d turns into d simple points on the tails.

* `glue_covers` joins covers of disjoint curves into a cover of the
  curve glued at prescribed nodes.  A new rational target component is
  threaded through the designated branch points; each node is routed
  through a connector of degree max(e, e') ramified to the two
  prescribed orders at its ends; leftover fiber points ride isomorphic
  or totally ramified tails; and isomorphic copies of the old targets
  fill every remaining sheet.  When the two-piece bookkeeping says the
  new component would carry no markers at all, it is contracted on the
  spot and the pieces are glued directly.

* `glue_node_on_cover` gives an admissible cover of a curve with one
  node separated the chance to descend to the glued curve: either at
  the same degree, when exactly one branch sits over its designated
  exit point, or at degree one higher, when neither does, by adding a
  full isomorphic sheet over the whole target and chaining the two
  branches through it.

Every construction returns a frozen CoverMap and re-validates what it
claims to produce.
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
    check_condition_1_and_3,
    is_admissible,
    is_quasi_admissible,
    lemma_tj_points,
)
from .curves import Component, CurveGraph, NodeRecord, relabel


class SurgeryError(ValueError):
    """The requested surgery is not defined for this input."""


class NameAllocator:
    """Deterministic fresh identifiers: the stem itself when unused,
    else the stem with the first free numeric suffix."""

    def __init__(self, used=()) -> None:
        self._used: set[str] = set(used)

    def claim(self, name: str) -> None:
        self._used.add(name)

    def fresh(self, stem: str) -> str:
        candidate = stem
        counter = 2
        while candidate in self._used:
            candidate = f"{stem}{counter}"
            counter += 1
        self._used.add(candidate)
        return candidate


class _Part:
    """Mutable twin of ComponentMapDatum used while building."""

    def __init__(self, datum: ComponentMapDatum) -> None:
        self.source = datum.source
        self.target = datum.target
        self.degree = datum.degree
        self.fibers: dict[str, list[FiberPoint]] = {
            q: list(fiber) for q, fiber in datum.fibers
        }
        self.extra_simple = datum.extra_simple
        self.complete = datum.complete

    def freeze(self) -> ComponentMapDatum:
        return ComponentMapDatum(
            self.source,
            self.target,
            self.degree,
            tuple((q, tuple(fiber)) for q, fiber in self.fibers.items()),
            self.extra_simple,
            self.complete,
        )


class _Workspace:
    """Mutable cover under construction.

    Components and parts keep insertion order; freeze() hands the data
    to the immutable types, whose validation then audits the surgery
    (fiber sums, declared node branches, one degree over every target
    component).
    """

    def __init__(self) -> None:
        self.src_comps: dict[str, tuple[int, list[str]]] = {}
        self.src_nodes: list[NodeRecord] = []
        self.tgt_comps: dict[str, tuple[int, list[str]]] = {}
        self.tgt_nodes: list[NodeRecord] = []
        self.parts: dict[str, _Part] = {}
        self.names = NameAllocator()

    @classmethod
    def from_cover(cls, cover: CoverMap) -> "_Workspace":
        ws = cls()
        ws.absorb_curve(cover.source, target=False)
        ws.absorb_curve(cover.target.curve, target=True)
        for part in cover.parts:
            ws.parts[part.source] = _Part(part)
        return ws

    def absorb_curve(self, curve: CurveGraph, target: bool) -> None:
        comps = self.tgt_comps if target else self.src_comps
        nodes = self.tgt_nodes if target else self.src_nodes
        for comp in curve.components:
            comps[comp.cid] = (comp.genus, list(comp.points))
            self.names.claim(comp.cid)
            for pid in comp.points:
                self.names.claim(pid)
        for node in curve.nodes:
            nodes.append(node)
            self.names.claim(node.nid)

    def add_src_component(self, cid: str, genus: int, points: list[str]) -> None:
        self.src_comps[cid] = (genus, points)

    def add_tgt_component(self, cid: str, genus: int, points: list[str]) -> None:
        self.tgt_comps[cid] = (genus, points)

    def add_src_point(self, cid: str, pid: str) -> None:
        self.src_comps[cid][1].append(pid)

    def add_tgt_point(self, cid: str, pid: str) -> None:
        self.tgt_comps[cid][1].append(pid)

    def add_src_node(self, nid: str, branch_a, branch_b) -> None:
        self.src_nodes.append(NodeRecord(nid, branch_a, branch_b))

    def add_tgt_node(self, nid: str, branch_a, branch_b) -> None:
        self.tgt_nodes.append(NodeRecord(nid, branch_a, branch_b))

    def parts_onto(self, target_cid: str) -> list[_Part]:
        return [p for p in self.parts.values() if p.target == target_cid]

    def materialize_fiber(self, part: _Part, q: str) -> list[FiberPoint]:
        """Declare the implicit unramified fiber of a part over q.

        Only meaningful when nothing is declared there yet; the part's
        sheets over q are generic, so they enter as degree many fresh
        points of index one.
        """
        if q in part.fibers:
            raise SurgeryError(f"part {part.source} already declares {q}")
        fresh = []
        for i in range(part.degree):
            pid = self.names.fresh(f"{part.source}:over:{q}")
            self.add_src_point(part.source, pid)
            fresh.append(FiberPoint(pid, 1))
        part.fibers[q] = fresh
        return fresh

    def sprout(
        self,
        q: str,
        groups: list[tuple[str, list[tuple[str, FiberPoint]]]],
    ) -> str:
        """Hang a new rational target component at the smooth point q
        and lift the whole fiber onto new source components.

        `groups` partitions the points over q (after materializing any
        undeclared fibers): each (stem, members) group becomes one new
        rational source component over the sprout, attached by a node
        at every member, ramified there to the member's index, with
        the rest of its branching generic and simple.  Returns the new
        target component id.
        """
        w = None
        for cid, part in self.parts.items():
            if q in part.fibers:
                w = part.target
                break
        if w is None:
            raise SurgeryError(f"no declared fiber over {q}")
        for part in sorted(self.parts_onto(w), key=lambda p: p.source):
            if q not in part.fibers:
                self.materialize_fiber(part, q)
        over_q: dict[str, tuple[str, FiberPoint]] = {}
        for part in self.parts_onto(w):
            for fp in part.fibers[q]:
                over_q[fp.point] = (part.source, fp)
        grouped_ids = {fp.point for _, members in groups for (_, fp) in members}
        singles = [
            over_q[pid] for pid in over_q if pid not in grouped_ids
        ]
        singles.sort(key=lambda item: (item[0], item[1].point))
        all_groups = list(groups) + [
            (f"{fp.point}:T", [(cid, fp)]) for cid, fp in singles
        ]
        for _, members in groups:
            for cid, fp in members:
                if over_q.get(fp.point) != (cid, fp):
                    raise SurgeryError(f"{fp.point} is not over {q} with index {fp.index}")

        e_cid = self.names.fresh(f"{q}:E")
        e_pt = self.names.fresh(f"{q}:e")
        self.add_tgt_component(e_cid, 0, [e_pt])
        self.add_tgt_node(self.names.fresh(f"{q}:nd"), (w, q), (e_cid, e_pt))
        for stem, members in all_groups:
            r_cid = self.names.fresh(stem)
            degree = sum(fp.index for _, fp in members)
            fiber = []
            points = []
            for cid, fp in members:
                att = self.names.fresh(f"{r_cid}:a")
                points.append(att)
                fiber.append(FiberPoint(att, fp.index))
                self.add_src_node(
                    self.names.fresh(f"{r_cid}:n"), (cid, fp.point), (r_cid, att)
                )
            self.add_src_component(r_cid, 0, points)
            datum = _Part(
                ComponentMapDatum(
                    r_cid,
                    e_cid,
                    degree,
                    ((e_pt, tuple(fiber)),),
                    branch_budget(0, degree) - sum(fp.index - 1 for _, fp in members),
                )
            )
            self.parts[r_cid] = datum
        return e_cid

    def add_target_copy(
        self, tree: CurveGraph, stem: str
    ) -> tuple[CurveGraph, dict[str, str]]:
        """A fresh isomorphic source copy of a target subtree: degree
        one on every component, every node fiber declared.  Returns the
        copy and the point-id mirror map."""
        mapping: dict[str, str] = {}

        def rename(old: str) -> str:
            if old not in mapping:
                mapping[old] = self.names.fresh(f"{stem}:{old}")
            return mapping[old]

        copy = relabel(tree, rename)
        for orig, mirrored in zip(tree.components, copy.components):
            self.add_src_component(mirrored.cid, orig.genus, list(mirrored.points))
            fibers = {}
            for node in tree.nodes:
                for cid, pid in node.branches:
                    if cid == orig.cid:
                        fibers[pid] = [FiberPoint(mapping[pid], 1)]
            self.parts[mirrored.cid] = _Part(
                ComponentMapDatum(
                    mirrored.cid,
                    orig.cid,
                    1,
                    tuple((q, tuple(f)) for q, f in fibers.items()),
                )
            )
        for node in copy.nodes:
            self.src_nodes.append(node)
        return copy, mapping

    def freeze(self) -> CoverMap:
        source = CurveGraph(
            tuple(
                Component(cid, genus, tuple(points))
                for cid, (genus, points) in self.src_comps.items()
            ),
            tuple(self.src_nodes),
        )
        target = CurveGraph(
            tuple(
                Component(cid, genus, tuple(points))
                for cid, (genus, points) in self.tgt_comps.items()
            ),
            tuple(self.tgt_nodes),
        )
        return CoverMap(
            source,
            TargetTree(target),
            tuple(part.freeze() for part in self.parts.values()),
        )


# -- expansion ---------------------------------------------------------


def to_admissible(cover: CoverMap) -> CoverMap:
    """Trade excess smooth ramification for simple points on tails.

    Every smooth target point of total multiplicity >= 2 sprouts a
    rational target component; each point of its fiber moves onto a
    tail totally ramified at the new node (degree-one tails for the
    unramified sheets).  Points of multiplicity <= 1 already satisfy
    the admissibility bound and stay put, so the map is returned
    unchanged exactly when no declared smooth point has multiplicity
    two or more.

    Original parts keep their data verbatim unless a new node lands on
    a fiber they left implicit, which forces that fiber's declaration.
    """
    if not is_quasi_admissible(cover):
        raise SurgeryError("expansion needs a quasi admissible cover")
    tgt = cover.target.curve
    node_branches = {b for n in tgt.nodes for b in n.branches}
    totals: dict[str, int] = {}
    order: list[str] = []
    for part in cover.parts:
        for q, fiber in part.fibers:
            if (part.target, q) in node_branches:
                continue
            if q not in totals:
                totals[q] = 0
                order.append(q)
            totals[q] += sum(fp.index - 1 for fp in fiber)
    sites = [q for q in sorted(order) if totals[q] >= 2]
    if not sites:
        return cover
    for q in sites:
        w = tgt.point_component(q)
        remaining = _smooth_markers_after(cover, w, set(sites))
        if tgt.node_branch_count(w) + len(
            [s for s in sites if tgt.point_component(s) == w]
        ) + remaining < 3:
            raise SurgeryError(
                f"expansion at {q} would leave target component {w} with "
                f"fewer than three markers; input outside the implemented regime"
            )
    ws = _Workspace.from_cover(cover)
    for q in sites:
        ws.sprout(q, [])
    result = ws.freeze()
    if not is_admissible(result):
        raise SurgeryError("expansion produced a non-admissible cover")
    return result


def _smooth_markers_after(cover: CoverMap, w: str, sites: set[str]) -> int:
    """Smooth branch multiplicity left on target component w once the
    listed points have been turned into nodes."""
    tgt = cover.target.curve
    node_branches = {b for n in tgt.nodes for b in n.branches}
    total = 0
    for part in cover.parts_onto(w):
        total += part.extra_simple
        for q, fiber in part.fibers:
            if (w, q) in node_branches or q in sites:
                continue
            total += sum(fp.index - 1 for fp in fiber)
    return total


# -- gluing ------------------------------------------------------------


@dataclass(frozen=True)
class GluePiece:
    """One cover entering a gluing, with its designated fiber split
    into node slots and leftover points.

    The designated point q is a smooth target point; its whole fiber
    must be declared and is exactly slots + remainder.  The piece must
    be quasi admissible, with one codified exception: a rational
    two-sheeted piece whose designated fiber is two unramified slots
    and whose two simple branch points both lie elsewhere.  That piece
    fails the subcurve inequality on its own but satisfies it inside
    every gluing, where both its markers survive.
    """

    cover: CoverMap
    q: str
    slots: tuple[FiberPoint, ...]
    remainder: tuple[FiberPoint, ...] = ()

    def __post_init__(self) -> None:
        tgt = self.cover.target.curve
        w = tgt.point_component(self.q)
        if tgt.is_node_branch(self.q):
            raise SurgeryError(f"designated point {self.q} is a node branch")
        declared: set[FiberPoint] = set()
        for part in self.cover.parts_onto(w):
            fiber = part.fiber_over(self.q)
            if fiber:
                declared.update(fiber)
        offered = set(self.slots) | set(self.remainder)
        if len(self.slots) + len(self.remainder) != len(offered):
            raise SurgeryError("slots and remainder overlap")
        if offered != declared or not self.slots:
            raise SurgeryError(
                f"slots + remainder must be exactly the declared fiber over "
                f"{self.q}"
            )
        for fp in offered:
            if self.cover.source.is_node_branch(fp.point):
                raise SurgeryError(f"fiber point {fp.point} is already a node")
        if is_quasi_admissible(self.cover):
            return
        if self._is_special_rational():
            return
        raise SurgeryError(
            "piece is not quasi admissible; a rational source of degree at "
            "most two admits no quasi admissible map, and the only shape "
            "accepted regardless is the two-sheeted rational piece with two "
            "unramified slots and two simple points elsewhere"
        )

    def _is_special_rational(self) -> bool:
        src = self.cover.source
        if len(src.components) != 1 or src.components[0].genus != 0:
            return False
        if self.cover.degree != 2 or len(self.slots) != 2 or self.remainder:
            return False
        if any(fp.index != 1 for fp in self.slots):
            return False
        part = self.cover.parts[0]
        smooth_extra = part.extra_simple + sum(
            sum(fp.index - 1 for fp in fiber)
            for q, fiber in part.fibers
            if q != self.q
        )
        return smooth_extra == 2 and bool(check_condition_1_and_3(self.cover))

    @property
    def degree(self) -> int:
        return self.cover.degree

    def slot(self, pid: str) -> FiberPoint:
        for fp in self.slots:
            if fp.point == pid:
                return fp
        raise KeyError(f"no slot {pid}")


@dataclass(frozen=True)
class NodeIncidence:
    """One node of the glued curve: which slot of which piece meets
    which slot of which other piece.  The target-side ramification
    order of the node is the minimum of the two slot indices; a caller
    supplying `e` is held to that value."""

    node: str
    end_a: tuple[int, str]
    end_b: tuple[int, str]
    e: int | None = None


def glue_covers(
    pieces: tuple[GluePiece, ...] | list[GluePiece],
    incidences: tuple[NodeIncidence, ...] | list[NodeIncidence],
) -> CoverMap:
    """Cover the curve glued from the pieces' sources at the incidences.

    Degree: sum of the piece degrees minus the sum over nodes of
    min(e, e').  The restriction to each original component is the
    original datum, field for field.
    """
    pieces = tuple(pieces)
    incidences = tuple(incidences)
    if len(pieces) < 2:
        raise SurgeryError("gluing needs at least two pieces")
    if not incidences:
        raise SurgeryError("gluing needs at least one incidence")
    _check_disjoint(pieces)
    slot_use: dict[tuple[int, str], int] = {}
    for n, inc in enumerate(incidences):
        for i, pid in (inc.end_a, inc.end_b):
            if not 0 <= i < len(pieces):
                raise SurgeryError(f"incidence {inc.node}: no piece {i}")
            try:
                pieces[i].slot(pid)
            except KeyError:
                raise SurgeryError(
                    f"incidence {inc.node}: piece {i} has no slot {pid}"
                ) from None
            if (i, pid) in slot_use:
                raise SurgeryError(f"slot {pid} used twice")
            slot_use[(i, pid)] = n
        if inc.end_a[0] == inc.end_b[0]:
            raise SurgeryError(
                f"incidence {inc.node}: both ends on piece {inc.end_a[0]}"
            )
        ea = pieces[inc.end_a[0]].slot(inc.end_a[1]).index
        eb = pieces[inc.end_b[0]].slot(inc.end_b[1]).index
        if inc.e is not None and inc.e != min(ea, eb):
            raise SurgeryError(
                f"incidence {inc.node}: e={inc.e} but the slot indices force "
                f"{min(ea, eb)}"
            )
    for i, piece in enumerate(pieces):
        for fp in piece.slots:
            if (i, fp.point) not in slot_use:
                raise SurgeryError(f"slot {fp.point} of piece {i} never glued")
    touched = {0}
    frontier = [0]
    adjacency: dict[int, set[int]] = {i: set() for i in range(len(pieces))}
    for inc in incidences:
        adjacency[inc.end_a[0]].add(inc.end_b[0])
        adjacency[inc.end_b[0]].add(inc.end_a[0])
    while frontier:
        for neighbor in adjacency[frontier.pop()]:
            if neighbor not in touched:
                touched.add(neighbor)
                frontier.append(neighbor)
    if len(touched) != len(pieces):
        raise SurgeryError("incidences do not connect the pieces")

    markers = sum(fp.index - 1 for p in pieces for fp in p.remainder)
    for inc in incidences:
        ea = pieces[inc.end_a[0]].slot(inc.end_a[1]).index
        eb = pieces[inc.end_b[0]].slot(inc.end_b[1]).index
        markers += abs(ea - eb)
    if len(pieces) == 2 and markers == 0:
        return _glue_contracted(pieces, incidences)
    return _glue_threaded(pieces, incidences)


def _check_disjoint(pieces: tuple[GluePiece, ...]) -> None:
    seen: set[str] = set()
    for piece in pieces:
        for curve in (piece.cover.source, piece.cover.target.curve):
            for comp in curve.components:
                ids = {comp.cid, *comp.points}
                if seen & ids:
                    raise SurgeryError(
                        f"pieces share identifiers: {sorted(seen & ids)}"
                    )
                seen |= ids


def _init_workspace(pieces: tuple[GluePiece, ...]) -> _Workspace:
    ws = _Workspace()
    for piece in pieces:
        ws.absorb_curve(piece.cover.source, target=False)
        ws.absorb_curve(piece.cover.target.curve, target=True)
        for part in piece.cover.parts:
            ws.parts[part.source] = _Part(part)
    return ws


def _glue_contracted(
    pieces: tuple[GluePiece, ...], incidences: tuple[NodeIncidence, ...]
) -> CoverMap:
    """Two pieces, no surviving markers on the would-be new component:
    glue the designated points to each other directly.  Slots become
    nodes slot-to-slot; every leftover unramified point picks up an
    isomorphic copy of the other piece's target."""
    ws = _init_workspace(pieces)
    w = [
        piece.cover.target.curve.point_component(piece.q) for piece in pieces
    ]
    ws.add_tgt_node(ws.names.fresh("q:nd"), (w[0], pieces[0].q), (w[1], pieces[1].q))
    for inc in incidences:
        (ia, pa), (ib, pb) = inc.end_a, inc.end_b
        ws.add_src_node(
            inc.node,
            (_owner(pieces[ia], pa), pa),
            (_owner(pieces[ib], pb), pb),
        )
    for i, piece in enumerate(pieces):
        other = pieces[1 - i]
        for fp in piece.remainder:
            copy, mapping = ws.add_target_copy(
                other.cover.target.curve, f"{fp.point}:cp"
            )
            mirror = mapping[other.q]
            ws.parts[copy.point_component(mirror)].fibers.setdefault(
                other.q, []
            ).append(FiberPoint(mirror, 1))
            ws.add_src_node(
                ws.names.fresh(f"{fp.point}:nd"),
                (_owner(piece, fp.point), fp.point),
                (copy.point_component(mirror), mirror),
            )
    result = ws.freeze()
    report = check_condition_1_and_3(result)
    if not report:
        raise SurgeryError(
            "contracted gluing failed its own audit: " + "; ".join(report.violations)
        )
    return result


def _owner(piece: GluePiece, pid: str) -> str:
    return piece.cover.source.point_component(pid)


def _glue_threaded(
    pieces: tuple[GluePiece, ...], incidences: tuple[NodeIncidence, ...]
) -> CoverMap:
    """The general gluing: thread a new rational target component
    through the designated points and route every node and leftover
    point over it."""
    ws = _init_workspace(pieces)
    bp = ws.names.fresh("Bp")
    qp = [ws.names.fresh(f"{bp}:q{i}") for i in range(len(pieces))]
    ws.add_tgt_component(bp, 0, list(qp))
    for i, piece in enumerate(pieces):
        w = piece.cover.target.curve.point_component(piece.q)
        ws.add_tgt_node(ws.names.fresh(f"{bp}:nd{i}"), (w, piece.q), (bp, qp[i]))

    def add_sheet(
        stem: str,
        over: dict[int, list[tuple[str, FiberPoint]]],
        degree: int,
    ) -> None:
        """One new source component over the new target component.

        `over` maps piece positions to the named points the sheet runs
        through at the corresponding designated fiber; everywhere else
        the sheet is unramified with an isomorphic copy of that piece's
        target hanging at each point.
        """
        cid = ws.names.fresh(stem)
        points: list[str] = []
        fibers: list[tuple[str, tuple[FiberPoint, ...]]] = []
        declared_mult = 0
        for i, piece in enumerate(pieces):
            fiber: list[FiberPoint] = []
            for owner_cid, fp in over.get(i, []):
                att = ws.names.fresh(f"{cid}:a")
                points.append(att)
                fiber.append(FiberPoint(att, fp.index))
                declared_mult += fp.index - 1
                ws.add_src_node(
                    ws.names.fresh(f"{cid}:n"), (owner_cid, fp.point), (cid, att)
                )
            filled = sum(f.index for f in fiber)
            for _ in range(degree - filled):
                pid = ws.names.fresh(f"{cid}:s")
                points.append(pid)
                fiber.append(FiberPoint(pid, 1))
                copy, mapping = ws.add_target_copy(
                    piece.cover.target.curve, f"{pid}:cp"
                )
                mirror = mapping[piece.q]
                ws.parts[copy.point_component(mirror)].fibers.setdefault(
                    piece.q, []
                ).append(FiberPoint(mirror, 1))
                ws.add_src_node(
                    ws.names.fresh(f"{pid}:nd"),
                    (cid, pid),
                    (copy.point_component(mirror), mirror),
                )
            fibers.append((qp[i], tuple(fiber)))
        ws.add_src_component(cid, 0, points)
        ws.parts[cid] = _Part(
            ComponentMapDatum(
                cid,
                bp,
                degree,
                tuple(fibers),
                branch_budget(0, degree) - declared_mult,
            )
        )

    for inc in incidences:
        (ia, pa), (ib, pb) = inc.end_a, inc.end_b
        fa, fb = pieces[ia].slot(pa), pieces[ib].slot(pb)
        add_sheet(
            f"{inc.node}:L",
            {
                ia: [(_owner(pieces[ia], pa), fa)],
                ib: [(_owner(pieces[ib], pb), fb)],
            },
            max(fa.index, fb.index),
        )
    for i, piece in enumerate(pieces):
        for fp in piece.remainder:
            add_sheet(
                f"{fp.point}:T",
                {i: [(_owner(piece, fp.point), fp)]},
                fp.index,
            )
    result = ws.freeze()
    report = check_condition_1_and_3(result)
    if not report:
        raise SurgeryError(
            "threaded gluing failed its own audit: " + "; ".join(report.violations)
        )
    return result


def gluing_hypotheses_hold(pieces: tuple[GluePiece, ...] | list[GluePiece]) -> bool:
    """The sufficient conditions under which the glued cover is quasi
    admissible: every piece has positive genus or degree at least
    three, and the component carrying each designated point either
    meets the rest of its target in two points or carries two further
    smooth branch multiplicity of its own."""
    for piece in pieces:
        source = piece.cover.source
        genus = source.genus() if source.is_connected() else 1
        if genus == 0 and piece.degree < 3:
            return False
        tgt = piece.cover.target.curve
        w = tgt.point_component(piece.q)
        if len(tgt.components) > 1:
            _, joining = tgt.subcurve_complement({w})
            if len(joining) >= 2:
                continue
        node_branches = {b for n in tgt.nodes for b in n.branches}
        smooth = 0
        for part in piece.cover.parts_onto(w):
            smooth += part.extra_simple
            for q, fiber in part.fibers:
                if q == piece.q or (w, q) in node_branches:
                    continue
                smooth += sum(fp.index - 1 for fp in fiber)
        if smooth < 2:
            return False
    return True


# -- node regluing -----------------------------------------------------


def glue_node_on_cover(
    cover: CoverMap,
    frame: TwoComponentFrame,
    pid1: str,
    pid2: str,
    mode: str,
    node_hint: str = "n",
) -> CoverMap:
    """Descend an admissible cover of the one-node-normalized curve to
    the glued curve.

    `matched`: exactly one of the two branch points sits over its
    component's designated exit point.  The other branch's image gains
    a sprouted target component, and one connector joins the free
    branch to a sheet of the matched branch's tail.  Same degree.

    `unmatched`: neither branch sits over its exit point.  A fully
    isomorphic extra sheet is laid over the whole target, and the two
    branches are chained through it by connectors at their separate
    images.  Degree grows by one.

    Both constructions contract to the curve with the extra node, and
    both return admissible covers of the same or incremented degree.
    """
    if mode not in ("matched", "unmatched"):
        raise SurgeryError(f"unknown mode {mode!r}")
    if not is_admissible(cover):
        raise SurgeryError("node regluing needs an admissible cover")
    for pid, comp in ((pid1, frame.comp1), (pid2, frame.comp2)):
        if cover.source.point_component(pid) != comp:
            raise SurgeryError(f"{pid} does not lie on {comp}")
    q1, q2 = lemma_tj_points(cover, frame)
    img1, img2 = cover.image_of(pid1), cover.image_of(pid2)
    if img1 is None or img2 is None:
        raise SurgeryError("both branch points must be declared in fibers")
    matched = (img1 == q1, img2 == q2)
    if all(matched):
        raise SurgeryError(
            "both branches sit over their exit points; this regluing is "
            "outside the implemented constructions"
        )
    free = tuple(not cover.source.is_node_branch(p) for p in (pid1, pid2))
    if mode == "matched":
        if not any(matched):
            raise SurgeryError("matched regluing needs one branch over its exit")
        # The branch over its exit sits over a target node, so it is a
        # node branch and carries a contracted tail; the other branch
        # must still be free for the connector to land on it.
        if matched[0]:
            if not free[1]:
                raise SurgeryError(f"{pid2} is already a node branch")
            return _reglue_matched(cover, frame.comp1, pid1, pid2, node_hint)
        if not free[0]:
            raise SurgeryError(f"{pid1} is already a node branch")
        return _reglue_matched(cover, frame.comp2, pid2, pid1, node_hint)
    if any(matched):
        raise SurgeryError("unmatched regluing needs both branches off their exits")
    if not all(free):
        raise SurgeryError("unmatched regluing needs both branches free")
    return _reglue_unmatched(cover, pid1, pid2, node_hint)


def _tail_components(cover: CoverMap, anchor_cid: str, pid: str) -> set[str]:
    """Source components reachable from pid's node without crossing the
    anchor component."""
    node = cover.source.node_at(pid)
    if node is None:
        raise SurgeryError(f"{pid} should be a node branch but is not")
    start = node.other_branch((anchor_cid, pid))[0]
    seen = {start}
    frontier = [start]
    while frontier:
        current = frontier.pop()
        for n in cover.source.nodes_on(current):
            for cid, _ in n.branches:
                if cid != anchor_cid and cid not in seen:
                    seen.add(cid)
                    frontier.append(cid)
    return seen


def _reglue_matched(
    cover: CoverMap, matched_cid: str, pid_m: str, pid_u: str, node_hint: str
) -> CoverMap:
    q_hat = cover.image_of(pid_u)
    tgt = cover.target.curve
    if tgt.is_node_branch(q_hat):
        raise SurgeryError(f"image {q_hat} of the free branch is not smooth")
    w = tgt.point_component(q_hat)
    tail = _tail_components(cover, matched_cid, pid_m)
    free_cid = cover.source.point_component(pid_u)
    if free_cid in tail:
        raise SurgeryError("the matched branch's chain reaches the other component")
    ws = _Workspace.from_cover(cover)
    carrier = None
    fallback = None
    for cid in sorted(tail):
        part = ws.parts[cid]
        if part.target != w:
            continue
        if q_hat in part.fibers:
            carrier = part
            break
        if fallback is None:
            fallback = part
    carrier = carrier or fallback
    if carrier is None:
        raise SurgeryError(
            f"no sheet of the matched branch's tail covers {w}; the "
            f"connector has nowhere to land"
        )
    if q_hat in carrier.fibers:
        fp_m = carrier.fibers[q_hat][0]
    else:
        fp_m = ws.materialize_fiber(carrier, q_hat)[0]
    if fp_m.point == pid_u:
        raise SurgeryError("the tail sheet and the free branch coincide")
    e_u = cover.index_of(pid_u)
    ws.sprout(
        q_hat,
        [
            (
                f"{node_hint}:R",
                [
                    (free_cid, FiberPoint(pid_u, e_u)),
                    (carrier.source, fp_m),
                ],
            )
        ],
    )
    result = ws.freeze()
    if result.degree != cover.degree or not is_admissible(result):
        raise SurgeryError("matched regluing failed its own audit")
    return result


def _reglue_unmatched(
    cover: CoverMap, pid1: str, pid2: str, node_hint: str
) -> CoverMap:
    tgt = cover.target.curve
    images = (cover.image_of(pid1), cover.image_of(pid2))
    for q in images:
        if tgt.is_node_branch(q):
            raise SurgeryError(f"image {q} of a free branch is not smooth")
    if images[0] == images[1]:
        raise SurgeryError("unmatched regluing needs branches over distinct points")
    ws = _Workspace.from_cover(cover)
    copy, mapping = ws.add_target_copy(tgt, f"{node_hint}:D")
    for leg, (pid, q_hat) in enumerate(zip((pid1, pid2), images)):
        w = tgt.point_component(q_hat)
        sheet = ws.parts[_copy_part_for(copy, tgt, w)]
        fp_d = ws.materialize_fiber(sheet, q_hat)[0]
        e = cover.index_of(pid)
        ws.sprout(
            q_hat,
            [
                (
                    f"{node_hint}:R{leg + 1}",
                    [
                        (cover.source.point_component(pid), FiberPoint(pid, e)),
                        (sheet.source, fp_d),
                    ],
                )
            ],
        )
    result = ws.freeze()
    if result.degree != cover.degree + 1 or not is_admissible(result):
        raise SurgeryError("unmatched regluing failed its own audit")
    return result


def _copy_part_for(copy: CurveGraph, tree: CurveGraph, target_cid: str) -> str:
    """The copied source component lying over one target component."""
    position = [c.cid for c in tree.components].index(target_cid)
    return copy.components[position].cid
