"""Command-line front end.

Reads a curve document from a file or standard input, runs one
subcommand, and prints a deterministic report.  Exit status: 0 when a
verdict was reached, 1 on usage or input errors, 2 when the answer is
undecided or the search hit its cap.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

from .covers import frame_from_curve
from .documents import (
    CurveDocument,
    DocumentError,
    describe_cover,
    parse_document,
)
from .dot import export_dot
from .gonality import (
    classify,
    component_lower_bound,
    generic_upper_bound,
    two_component_bound,
)
from .oracle import EnumerationBudget, min_admissible_degree
from .profiles import ComponentProfile
from .surgery import (
    GluePiece,
    NameAllocator,
    NodeIncidence,
    glue_covers,
    to_admissible,
)
from .shapes import realize_behavior

UNDECIDED = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="admcovers",
        description="Nodal curves, admissible covers, and gonality.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "document",
            nargs="?",
            default="-",
            help="document path, or - for standard input",
        )
        return p

    command("validate", "check structure and stability")
    command("genus", "arithmetic genus of the curve")
    p = command("classify", "hyperelliptic and trigonal classification")
    p.add_argument("--all-cases", action="store_true")
    p.add_argument("--witness", action="store_true")
    p = command("gonality", "bounds and the enumerated minimal degree")
    p.add_argument("--cap", type=int, default=6)
    p.add_argument("--witness", action="store_true")
    p = command("glue", "glue the components' first behaviors into a cover")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p = command("expand", "glue, then expand to an admissible cover")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p = command("enumerate", "search for a minimal admissible cover")
    p.add_argument("--cap", type=int, default=6)
    p.add_argument("--witness", action="store_true")
    command("export-dot", "dual graph in DOT syntax")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _two_profiles(doc: CurveDocument) -> tuple[ComponentProfile, ComponentProfile]:
    cids = [c.cid for c in doc.curve.components]
    if len(cids) != 2:
        raise _UsageError(
            f"this subcommand needs a two-component curve, not {len(cids)}"
        )
    profiles = []
    for cid in cids:
        profile = doc.profile(cid)
        if profile is None:
            raise _UsageError(f"component {cid} declares no gonality")
        profiles.append(profile)
    return profiles[0], profiles[1]


def _cmd_validate(doc: CurveDocument, args: argparse.Namespace) -> int:
    curve = doc.curve
    print(f"components: {len(curve.components)}")
    print(f"nodes: {len(curve.nodes)}")
    connected = curve.is_connected()
    print(f"connected: {'yes' if connected else 'no'}")
    if connected:
        print(f"genus: {curve.genus()}")
    print(f"stable: {'yes' if curve.is_stable() else 'no'}")
    for profile in doc.profiles:
        count = len(profile.behaviors)
        plural = "behavior" if count == 1 else "behaviors"
        state = "complete" if profile.complete else "incomplete"
        print(
            f"profile {profile.component}: gonality {profile.gonality}, "
            f"{count} {plural}, {state}"
        )
    return 0


def _cmd_genus(doc: CurveDocument, args: argparse.Namespace) -> int:
    print(f"genus: {doc.curve.genus()}")
    return 0


def _cmd_classify(doc: CurveDocument, args: argparse.Namespace) -> int:
    p1, p2 = _two_profiles(doc)
    result = classify(doc.curve, p1, p2)
    if result.verdict == "undecided":
        if result.cases:
            print(
                "undecided: degree-3 witness found but hyperelliptic "
                "not excluded"
            )
        elif not (p1.complete and p2.complete):
            print("undecided: profiles incomplete")
        else:
            print("undecided")
        code = UNDECIDED
    elif result.cases:
        shown = result.cases if args.all_cases else result.cases[:1]
        print(f"{result.verdict} — {', '.join(shown)}")
        code = 0
    else:
        print(result.verdict)
        code = 0
    if args.witness and result.witness is not None:
        print(describe_cover(result.witness), end="")
    return code


def _cmd_gonality(doc: CurveDocument, args: argparse.Namespace) -> int:
    p1, p2 = _two_profiles(doc)
    curve = doc.curve
    print(f"lower bound: {component_lower_bound(curve, (p1, p2))}")
    gonalities = {p.component: p.gonality for p in (p1, p2)}
    print(f"generic upper bound: {generic_upper_bound(curve, gonalities)}")
    pooled = two_component_bound(curve, p1, p2)
    if pooled is None:
        print("two-component upper bound: none (no pooled gonal behavior)")
    else:
        print(f"two-component upper bound: {pooled}")
    outcome = min_admissible_degree(curve, p1, p2, EnumerationBudget(args.cap))
    if outcome.status == "exact":
        frame = frame_from_curve(curve, p1.component, p2.component)
        if len(frame.pairs) == 1 and pooled == outcome.degree:
            print(f"exact: {outcome.degree} (Thm B; oracle agrees)")
        else:
            print(f"exact: {outcome.degree} (oracle)")
        if args.witness and outcome.witness is not None:
            print(describe_cover(outcome.witness), end="")
        return 0
    if outcome.status == "above-cap":
        print(f"above-cap: no admissible cover within degree cap {args.cap}")
    else:
        print("undecided: profiles incomplete")
    return UNDECIDED


def _glued_cover(doc: CurveDocument):
    curve = doc.curve
    if len(curve.components) < 2 or not curve.nodes:
        raise _UsageError("gluing needs at least two components and a node")
    used = [c.cid for c in curve.components]
    used += [p for c in curve.components for p in c.points]
    used += [n.nid for n in curve.nodes]
    names = NameAllocator(used)
    pieces: list[GluePiece] = []
    piece_index: dict[str, int] = {}
    for comp in curve.components:
        profile = doc.profile(comp.cid)
        if profile is None or not profile.behaviors:
            raise _UsageError(f"component {comp.cid} declares no behaviors")
        behavior = profile.behaviors[0]
        branch_set = {
            pid
            for node in curve.nodes_on(comp.cid)
            for cid, pid in node.branches
            if cid == comp.cid
        }
        designated = next(
            (
                i
                for i, cls in enumerate(behavior.classes)
                if branch_set <= set(cls.branch_points())
            ),
            None,
        )
        if designated is None:
            raise _UsageError(
                f"the first behavior of {comp.cid} has no class containing "
                f"every node branch"
            )
        cover, class_points = realize_behavior(
            comp.cid, comp.genus, behavior, names
        )
        q = class_points[designated]
        fiber = cover.parts[0].fiber_over(q) or ()
        slots = tuple(fp for fp in fiber if fp.point in branch_set)
        remainder = tuple(fp for fp in fiber if fp.point not in branch_set)
        piece_index[comp.cid] = len(pieces)
        pieces.append(GluePiece(cover, q, slots, remainder))
    incidences = []
    for node in curve.nodes:
        (ca, pa), (cb, pb) = node.branches
        incidences.append(
            NodeIncidence(node.nid, (piece_index[ca], pa), (piece_index[cb], pb))
        )
    return glue_covers(pieces, incidences)


def _cmd_glue(doc: CurveDocument, args: argparse.Namespace) -> int:
    cover = _glued_cover(doc)
    if args.format == "dot":
        print(export_dot(cover.source, cover), end="")
    else:
        print(describe_cover(cover), end="")
    return 0


def _cmd_expand(doc: CurveDocument, args: argparse.Namespace) -> int:
    cover = to_admissible(_glued_cover(doc))
    if args.format == "dot":
        print(export_dot(cover.source, cover), end="")
    else:
        print(describe_cover(cover), end="")
    return 0


def _cmd_enumerate(doc: CurveDocument, args: argparse.Namespace) -> int:
    p1, p2 = _two_profiles(doc)
    outcome = min_admissible_degree(
        doc.curve, p1, p2, EnumerationBudget(args.cap)
    )
    if outcome.status == "exact":
        print(f"minimal degree: {outcome.degree}")
        print(f"shape: {outcome.shape.describe()}")
        if args.witness and outcome.witness is not None:
            print(describe_cover(outcome.witness), end="")
        return 0
    if outcome.status == "above-cap":
        print(f"above-cap: no admissible cover within degree cap {args.cap}")
    else:
        print("undecided: profiles incomplete")
    return UNDECIDED


def _cmd_export_dot(doc: CurveDocument, args: argparse.Namespace) -> int:
    print(export_dot(doc.curve), end="")
    return 0


_HANDLERS = {
    "validate": _cmd_validate,
    "genus": _cmd_genus,
    "classify": _cmd_classify,
    "gonality": _cmd_gonality,
    "glue": _cmd_glue,
    "expand": _cmd_expand,
    "enumerate": _cmd_enumerate,
    "export-dot": _cmd_export_dot,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        document = parse_document(_read(args.document))
        return _HANDLERS[args.command](document, args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
