"""Plain-text descriptions of a nodal curve with behavior profiles.

A document is a sequence of records, one per line, grouped by leading
keyword.  Blank lines and lines starting with `#` are skipped; records
may appear in any order.

    component id=X genus=2 gonality=2
    component id=Y genus=3 gonality=3
    node id=n1 branches=X.x1,Y.y1
    behavior id=X degree=2 fiber=x1:2
    behavior id=Y degree=3 fiber=y1:1 extra=1,1

A component's points are the node branches referencing it, so `node`
records double as point declarations.  `fiber` lists one group per
conjugation class, groups separated by `|`, each group a comma list of
point:index pairs; `extra` supplies anonymous indices per class in the
same group order.  Fiber points may be written bare or qualified with
their component (`X.x1`).  A component with a `gonality` key gets a
profile; the profile is complete exactly when it lists behaviors,
unless `complete=yes|no` overrides that default.

Parsing and serializing are mutually inverse: `parse_document` after
`serialize_document` is the identity, and serializing a parsed
document reproduces it up to record order, comments, and spelling of
defaults.  Free points never mentioned by a node cannot be expressed,
so covers and curves built by hand may fall outside the format.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .covers import CoverMap, FiberPoint
from .curves import Component, CurveGraph, CurveStructureError, NodeRecord
from .profiles import (
    ComponentProfile,
    FiberClass,
    MapBehavior,
    ProfileError,
    behavior_to_hurwitz,
)
from .monodromy import hurwitz_necessary

_NAME = re.compile(r"[A-Za-z0-9_]+\Z")

_KEYS = {
    "component": {"id", "genus", "gonality", "complete"},
    "node": {"id", "branches"},
    "behavior": {"id", "degree", "fiber", "extra"},
}
_REQUIRED = {
    "component": ("id", "genus"),
    "node": ("id", "branches"),
    "behavior": ("id", "degree", "fiber"),
}


class DocumentError(ValueError):
    """The text does not describe a valid curve; carries the line."""

    def __init__(self, line: int, message: str, column: int | None = None):
        self.line = line
        self.column = column
        self.message = message
        where = f"line {line}" if line else "document"
        if column is not None:
            where += f", column {column}"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class CurveDocument:
    """A parsed document: the curve plus one profile per component
    that declared a gonality, in component order."""

    curve: CurveGraph
    profiles: tuple[ComponentProfile, ...] = ()

    def profile(self, cid: str) -> ComponentProfile | None:
        for p in self.profiles:
            if p.component == cid:
                return p
        return None


@dataclass
class _Record:
    line: int
    text: str
    kind: str
    fields: dict[str, str] = field(default_factory=dict)

    def column_of(self, token: str) -> int | None:
        at = self.text.find(token)
        return at + 1 if at >= 0 else None


def _tokenize(text: str) -> list[_Record]:
    records: list[_Record] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        kind, *tokens = line.split()
        if kind not in _KEYS:
            raise DocumentError(lineno, f"unknown record kind {kind!r}")
        record = _Record(lineno, raw, kind)
        for token in tokens:
            key, eq, value = token.partition("=")
            if not eq or not key:
                raise DocumentError(
                    lineno, f"expected key=value, got {token!r}",
                    record.column_of(token),
                )
            if key not in _KEYS[kind]:
                raise DocumentError(
                    lineno, f"{kind} record does not take key {key!r}",
                    record.column_of(token),
                )
            if key in record.fields:
                raise DocumentError(
                    lineno, f"duplicate key {key!r}", record.column_of(token)
                )
            record.fields[key] = value
        for key in _REQUIRED[kind]:
            if key not in record.fields:
                raise DocumentError(lineno, f"{kind} record needs {key}=")
        records.append(record)
    return records


def _name(record: _Record, key: str) -> str:
    value = record.fields[key]
    if not _NAME.match(value):
        raise DocumentError(
            record.line, f"{key}={value!r} is not a plain name",
            record.column_of(value),
        )
    return value


def _int(record: _Record, key: str, minimum: int) -> int:
    value = record.fields[key]
    try:
        number = int(value)
    except ValueError:
        raise DocumentError(
            record.line, f"{key}={value!r} is not an integer",
            record.column_of(value),
        ) from None
    if number < minimum:
        raise DocumentError(record.line, f"{key}={number} is below {minimum}")
    return number


def _qualified(record: _Record, text: str) -> tuple[str, str]:
    cid, dot, pid = text.partition(".")
    if not dot or not _NAME.match(cid) or not _NAME.match(pid):
        raise DocumentError(
            record.line,
            f"{text!r} is not a component.point reference",
            record.column_of(text),
        )
    return cid, pid


def _fiber_point(record: _Record, cid: str, entry: str) -> FiberPoint:
    name, colon, index_text = entry.partition(":")
    if not colon:
        raise DocumentError(
            record.line, f"{entry!r} is not a point:index pair",
            record.column_of(entry),
        )
    if "." in name:
        owner, pid = _qualified(record, name)
        if owner != cid:
            raise DocumentError(
                record.line,
                f"fiber point {name} does not lie on component {cid}",
                record.column_of(entry),
            )
        name = pid
    elif not _NAME.match(name):
        raise DocumentError(
            record.line, f"{name!r} is not a point name",
            record.column_of(entry),
        )
    try:
        index = int(index_text)
    except ValueError:
        raise DocumentError(
            record.line, f"index {index_text!r} is not an integer",
            record.column_of(entry),
        ) from None
    if index < 1:
        raise DocumentError(record.line, f"index {index} is below 1")
    return FiberPoint(name, index)


def _parse_behavior(
    record: _Record, cid: str, degree: int, points: tuple[str, ...]
) -> MapBehavior:
    groups = record.fields["fiber"].split("|")
    extra_field = record.fields.get("extra", "")
    extra_groups = extra_field.split("|") if extra_field else [""] * len(groups)
    if len(extra_groups) != len(groups):
        raise DocumentError(
            record.line,
            f"extra lists {len(extra_groups)} groups, fiber has {len(groups)}",
        )
    classes: list[FiberClass] = []
    for group, extras in zip(groups, extra_groups):
        if not group:
            raise DocumentError(record.line, "empty fiber class")
        branches = tuple(
            _fiber_point(record, cid, entry) for entry in group.split(",")
        )
        for fp in branches:
            if fp.point not in points:
                raise DocumentError(
                    record.line,
                    f"dangling point reference: no node on {cid} "
                    f"uses {fp.point}",
                    record.column_of(fp.point),
                )
        anonymous: list[int] = []
        for chunk in extras.split(",") if extras else ():
            try:
                anonymous.append(int(chunk))
            except ValueError:
                raise DocumentError(
                    record.line, f"extra index {chunk!r} is not an integer",
                    record.column_of(chunk),
                ) from None
        total = sum(fp.index for fp in branches) + sum(anonymous)
        if total != degree:
            raise DocumentError(
                record.line,
                f"fiber class {group} sums to {total}, not the degree "
                f"{degree}; each full fiber must sum to the degree",
            )
        try:
            classes.append(FiberClass(branches, tuple(anonymous)))
        except ProfileError as exc:
            raise DocumentError(record.line, str(exc)) from exc
    try:
        return MapBehavior(degree, tuple(classes))
    except ProfileError as exc:
        raise DocumentError(record.line, str(exc)) from exc


def parse_document(text: str) -> CurveDocument:
    """Parse a document into a curve and its profiles.

    Records are grouped by kind, so kinds may be interleaved freely;
    within a kind, declaration order is kept (node order fixes the
    point order on each component).  Raises DocumentError with the
    offending line on any defect.
    """
    records = _tokenize(text)
    comp_records: dict[str, _Record] = {}
    for record in records:
        if record.kind != "component":
            continue
        cid = _name(record, "id")
        if cid in comp_records:
            raise DocumentError(record.line, f"component {cid} declared twice")
        comp_records[cid] = record

    nodes: list[NodeRecord] = []
    points: dict[str, list[str]] = {cid: [] for cid in comp_records}
    used_node_ids: set[str] = set()
    used_points: set[tuple[str, str]] = set()
    for record in records:
        if record.kind != "node":
            continue
        nid = _name(record, "id")
        if nid in used_node_ids:
            raise DocumentError(record.line, f"node {nid} declared twice")
        used_node_ids.add(nid)
        ends = record.fields["branches"].split(",")
        if len(ends) != 2:
            raise DocumentError(
                record.line, "branches needs exactly two component.point ends"
            )
        branches: list[tuple[str, str]] = []
        for end in ends:
            cid, pid = _qualified(record, end)
            if cid not in comp_records:
                raise DocumentError(
                    record.line,
                    f"dangling point reference: no component {cid}",
                    record.column_of(end),
                )
            if (cid, pid) in used_points:
                raise DocumentError(
                    record.line, f"point {cid}.{pid} used by two nodes",
                    record.column_of(end),
                )
            used_points.add((cid, pid))
            points[cid].append(pid)
            branches.append((cid, pid))
        if branches[0] == branches[1]:
            raise DocumentError(
                record.line, "a node needs two distinct branches"
            )
        nodes.append(NodeRecord(nid, branches[0], branches[1]))

    components = tuple(
        Component(cid, _int(record, "genus", 0), tuple(points[cid]))
        for cid, record in comp_records.items()
    )
    if not components:
        raise DocumentError(0, "document declares no components")
    try:
        curve = CurveGraph(components, tuple(nodes))
    except CurveStructureError as exc:
        raise DocumentError(0, str(exc)) from exc

    behaviors: dict[str, list[MapBehavior]] = {cid: [] for cid in comp_records}
    first_behavior: dict[str, _Record] = {}
    for record in records:
        if record.kind != "behavior":
            continue
        cid = _name(record, "id")
        if cid not in comp_records:
            raise DocumentError(
                record.line, f"dangling point reference: no component {cid}"
            )
        comp_record = comp_records[cid]
        if "gonality" not in comp_record.fields:
            raise DocumentError(
                record.line,
                f"component {cid} declares no gonality; behaviors need one",
            )
        degree = _int(record, "degree", 1)
        behavior = _parse_behavior(record, cid, degree, tuple(points[cid]))
        earlier = first_behavior.get(cid)
        if earlier is None:
            first_behavior[cid] = record
        else:
            first = behaviors[cid][0]
            if sorted(behavior.branch_points()) != sorted(first.branch_points()):
                raise DocumentError(
                    record.line,
                    f"behavior names branch points "
                    f"{sorted(behavior.branch_points())}, the one on line "
                    f"{earlier.line} names {sorted(first.branch_points())}",
                )
        genus = _int(comp_record, "genus", 0)
        gonality = _int(comp_record, "gonality", 1)
        if degree < gonality:
            raise DocumentError(
                record.line,
                f"degree {degree} is below the gonality {gonality} of {cid}",
            )
        try:
            feasible = hurwitz_necessary(behavior_to_hurwitz(genus, behavior))
        except ProfileError as exc:
            raise DocumentError(record.line, str(exc)) from exc
        if not feasible:
            raise DocumentError(
                record.line,
                f"behavior fails the necessary Hurwitz conditions at "
                f"genus {genus}",
            )
        behaviors[cid].append(behavior)

    profiles: list[ComponentProfile] = []
    for cid, record in comp_records.items():
        if "gonality" not in record.fields:
            continue
        listed = tuple(behaviors[cid])
        complete = bool(listed)
        flag = record.fields.get("complete")
        if flag is not None:
            if flag not in ("yes", "no"):
                raise DocumentError(
                    record.line, f"complete={flag!r} is not yes or no"
                )
            complete = flag == "yes"
        try:
            profiles.append(
                ComponentProfile(
                    cid,
                    _int(record, "genus", 0),
                    _int(record, "gonality", 1),
                    listed,
                    complete,
                )
            )
        except ProfileError as exc:
            raise DocumentError(record.line, str(exc)) from exc
    return CurveDocument(curve, tuple(profiles))


def _render_fiber(behavior: MapBehavior) -> tuple[str, str | None]:
    groups = []
    extras = []
    for cls in behavior.classes:
        groups.append(
            ",".join(f"{fp.point}:{fp.index}" for fp in cls.branches)
        )
        extras.append(",".join(str(e) for e in cls.anonymous))
    extra = "|".join(extras) if any(extras) else None
    return "|".join(groups), extra


def serialize_document(document: CurveDocument) -> str:
    """Render a document back to text in canonical order: components,
    nodes, then behaviors, matching the parse so the two are inverse."""
    lines: list[str] = []
    for comp in document.curve.components:
        line = f"component id={comp.cid} genus={comp.genus}"
        profile = document.profile(comp.cid)
        if profile is not None:
            line += f" gonality={profile.gonality}"
            if profile.complete != bool(profile.behaviors):
                line += f" complete={'yes' if profile.complete else 'no'}"
        lines.append(line)
    for node in document.curve.nodes:
        (ca, pa), (cb, pb) = node.branches
        lines.append(f"node id={node.nid} branches={ca}.{pa},{cb}.{pb}")
    for profile in document.profiles:
        for behavior in profile.behaviors:
            fiber, extra = _render_fiber(behavior)
            line = (
                f"behavior id={profile.component} "
                f"degree={behavior.degree} fiber={fiber}"
            )
            if extra is not None:
                line += f" extra={extra}"
            lines.append(line)
    return "\n".join(lines) + "\n"


def describe_cover(cover: CoverMap) -> str:
    """Deterministic plain-text dump of a cover: curves, nodes, and
    every declared fiber of every part."""
    lines = [f"degree {cover.degree}"]
    for comp in cover.source.components:
        lines.append(f"source {comp.cid} genus={comp.genus}")
    for node in cover.source.nodes:
        (ca, pa), (cb, pb) = node.branches
        lines.append(f"source-node {node.nid} {ca}.{pa}~{cb}.{pb}")
    target = cover.target.curve
    for comp in target.components:
        lines.append(f"target {comp.cid} genus={comp.genus}")
    for node in target.nodes:
        (ca, pa), (cb, pb) = node.branches
        lines.append(f"target-node {node.nid} {ca}.{pa}~{cb}.{pb}")
    for part in cover.parts:
        lines.append(
            f"part {part.source} -> {part.target} degree={part.degree}"
        )
        for q, fiber in part.fibers:
            listed = ",".join(f"{fp.point}:{fp.index}" for fp in fiber)
            lines.append(f"  fiber {q} <- {listed}")
        if part.extra_simple:
            lines.append(f"  extra-simple {part.extra_simple}")
    return "\n".join(lines) + "\n"
