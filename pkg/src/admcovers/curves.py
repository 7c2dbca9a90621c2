"""Nodal curves as decorated dual graphs.

A curve is a collection of irreducible components, each carrying a
geometric genus and a list of named points, together with nodes that
glue two branch points pairwise.  Everything downstream (covers,
gluing surgery, gonality bounds) reads the curve through this graph:
components are vertices, nodes are edges, and the remaining named
points are free marked points.

Point identifiers are unique across the whole curve, not just within
their component, so a point name alone pins down where it lives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator


class CurveStructureError(ValueError):
    """The data does not describe a nodal curve."""


class DisconnectedCurveError(ValueError):
    """The query needs a connected curve."""


Branch = tuple[str, str]
"""A (component id, point id) pair naming one branch of a node."""


@dataclass(frozen=True)
class Component:
    """One irreducible component: id, geometric genus, named points."""

    cid: str
    genus: int
    points: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise CurveStructureError(f"component {self.cid}: negative genus")
        if len(set(self.points)) != len(self.points):
            raise CurveStructureError(f"component {self.cid}: repeated point id")


@dataclass(frozen=True)
class NodeRecord:
    """A node, recorded by its two branches.

    The two branches may sit on the same component (a non-separating
    self-node) but never at the same point.
    """

    nid: str
    branch_a: Branch
    branch_b: Branch

    def __post_init__(self) -> None:
        if self.branch_a == self.branch_b:
            raise CurveStructureError(f"node {self.nid}: branches coincide")

    @property
    def branches(self) -> tuple[Branch, Branch]:
        return (self.branch_a, self.branch_b)

    def other_branch(self, branch: Branch) -> Branch:
        if branch == self.branch_a:
            return self.branch_b
        if branch == self.branch_b:
            return self.branch_a
        raise KeyError(f"{branch} is not a branch of node {self.nid}")


@dataclass(frozen=True)
class CurveGraph:
    """A nodal curve presented as its decorated dual graph.

    The graph may be disconnected as data (normalization produces such
    curves); queries that only make sense for connected curves raise
    DisconnectedCurveError instead of guessing.
    """

    components: tuple[Component, ...]
    nodes: tuple[NodeRecord, ...] = ()
    _by_cid: dict = field(init=False, repr=False, compare=False, hash=False)
    _point_owner: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if not self.components:
            raise CurveStructureError("a curve needs at least one component")
        by_cid: dict[str, Component] = {}
        for comp in self.components:
            if comp.cid in by_cid:
                raise CurveStructureError(f"repeated component id {comp.cid}")
            by_cid[comp.cid] = comp
        owner: dict[str, str] = {}
        for comp in self.components:
            for pid in comp.points:
                if pid in owner:
                    raise CurveStructureError(
                        f"point id {pid} appears on {owner[pid]} and {comp.cid}"
                    )
                owner[pid] = comp.cid
        seen_nids: set[str] = set()
        used_branches: set[Branch] = set()
        for node in self.nodes:
            if node.nid in seen_nids:
                raise CurveStructureError(f"repeated node id {node.nid}")
            seen_nids.add(node.nid)
            for cid, pid in node.branches:
                if cid not in by_cid:
                    raise CurveStructureError(
                        f"node {node.nid}: unknown component {cid}"
                    )
                if owner.get(pid) != cid:
                    raise CurveStructureError(
                        f"node {node.nid}: {pid} is not a point of {cid}"
                    )
                if (cid, pid) in used_branches:
                    raise CurveStructureError(
                        f"point {pid} is a branch of two nodes"
                    )
                used_branches.add((cid, pid))
        object.__setattr__(self, "_by_cid", by_cid)
        object.__setattr__(self, "_point_owner", owner)

    # -- basic lookups -------------------------------------------------

    def component(self, cid: str) -> Component:
        try:
            return self._by_cid[cid]
        except KeyError:
            raise KeyError(f"no component {cid}") from None

    def node(self, nid: str) -> NodeRecord:
        for node in self.nodes:
            if node.nid == nid:
                return node
        raise KeyError(f"no node {nid}")

    def point_component(self, pid: str) -> str:
        try:
            return self._point_owner[pid]
        except KeyError:
            raise KeyError(f"no point {pid}") from None

    def node_at(self, pid: str) -> NodeRecord | None:
        """The node having pid as a branch point, if any."""
        cid = self.point_component(pid)
        for node in self.nodes:
            if (cid, pid) in node.branches:
                return node
        return None

    def is_node_branch(self, pid: str) -> bool:
        return self.node_at(pid) is not None

    def free_points(self, cid: str) -> tuple[str, ...]:
        """Points of the component that are not node branches."""
        comp = self.component(cid)
        return tuple(p for p in comp.points if not self.is_node_branch(p))

    def node_branch_count(self, cid: str) -> int:
        """Node branches on the component, a self-node counting twice."""
        return sum(1 for n in self.nodes for c, _ in n.branches if c == cid)

    def nodes_on(self, cid: str) -> tuple[NodeRecord, ...]:
        return tuple(
            n for n in self.nodes if cid in (n.branch_a[0], n.branch_b[0])
        )

    # -- connectivity ----------------------------------------------------

    def _adjacency(self) -> dict[str, list[tuple[str, str]]]:
        adj: dict[str, list[tuple[str, str]]] = {c.cid: [] for c in self.components}
        for node in self.nodes:
            ca, cb = node.branch_a[0], node.branch_b[0]
            if ca == cb:
                continue
            adj[ca].append((cb, node.nid))
            adj[cb].append((ca, node.nid))
        return adj

    def component_ids(self) -> tuple[str, ...]:
        return tuple(c.cid for c in self.components)

    def is_connected(self) -> bool:
        adj = self._adjacency()
        start = self.components[0].cid
        seen = {start}
        queue = [start]
        while queue:
            for other, _ in adj[queue.pop()]:
                if other not in seen:
                    seen.add(other)
                    queue.append(other)
        return len(seen) == len(self.components)

    def connected_parts(self) -> tuple[CurveGraph, ...]:
        """Split into connected subcurves, each a valid CurveGraph."""
        adj = self._adjacency()
        assigned: dict[str, int] = {}
        for comp in self.components:
            if comp.cid in assigned:
                continue
            label = len(set(assigned.values()))
            stack = [comp.cid]
            assigned[comp.cid] = label
            while stack:
                for other, _ in adj[stack.pop()]:
                    if other not in assigned:
                        assigned[other] = label
                        stack.append(other)
        count = len(set(assigned.values()))
        if count == 1:
            return (self,)
        parts = []
        for label in range(count):
            cids = {cid for cid, lab in assigned.items() if lab == label}
            comps = tuple(c for c in self.components if c.cid in cids)
            nods = tuple(n for n in self.nodes if n.branch_a[0] in cids)
            parts.append(CurveGraph(comps, nods))
        return tuple(parts)

    # -- numeric invariants ----------------------------------------------

    def genus(self) -> int:
        """Arithmetic genus: sum of the genera plus the graph's first
        Betti number (nodes minus components plus one)."""
        if not self.is_connected():
            raise DisconnectedCurveError("genus needs a connected curve")
        return (
            sum(c.genus for c in self.components)
            + len(self.nodes)
            - len(self.components)
            + 1
        )

    def is_stable(self) -> bool:
        """Stability without marked points: every rational component
        carries at least three node branches.  Defined for genus >= 2."""
        if self.genus() < 2:
            raise ValueError("stability without marks needs genus >= 2")
        return all(
            self.node_branch_count(c.cid) >= 3
            for c in self.components
            if c.genus == 0
        )

    def is_rational_chain(self) -> bool:
        """Connected, arithmetic genus zero: all components rational and
        the dual graph a tree."""
        if not self.is_connected():
            raise DisconnectedCurveError("rational chains are connected")
        return self.genus() == 0

    # -- separating nodes and the pieces they cut off ---------------------

    def separating_nodes(self) -> frozenset[str]:
        """Nodes whose removal disconnects the curve (bridges of the
        dual graph).  Self-nodes and nodes with a parallel partner never
        separate."""
        adj = self._adjacency()
        index: dict[str, int] = {}
        low: dict[str, int] = {}
        bridges: set[str] = set()
        counter = 0
        for root in adj:
            if root in index:
                continue
            index[root] = low[root] = counter
            counter += 1
            stack: list[tuple[str, str | None, Iterator[tuple[str, str]]]] = [
                (root, None, iter(adj[root]))
            ]
            while stack:
                v, in_edge, it = stack[-1]
                advanced = False
                for w, eid in it:
                    if eid == in_edge:
                        continue
                    if w not in index:
                        index[w] = low[w] = counter
                        counter += 1
                        stack.append((w, eid, iter(adj[w])))
                        advanced = True
                        break
                    low[v] = min(low[v], index[w])
                if advanced:
                    continue
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > index[parent]:
                        bridges.add(in_edge)  # type: ignore[arg-type]
        return frozenset(bridges)

    def tails(self, nid: str) -> tuple[CurveGraph, CurveGraph]:
        """The two subcurves cut off by a separating node, the side of
        branch_a first.  The node's branch points survive as free marked
        points on their sides."""
        node = self.node(nid)
        if nid not in self.separating_nodes():
            raise ValueError(f"node {nid} does not separate")
        normalized, _ = self.normalize_at(nid)
        parts = normalized.connected_parts()
        side_a = next(p for p in parts if node.branch_a[0] in p._by_cid)
        side_b = next(p for p in parts if node.branch_b[0] in p._by_cid)
        return (side_a, side_b)

    def normalize_at(self, nid: str) -> tuple[CurveGraph, tuple[Branch, Branch]]:
        """Separate the two branches of a node.

        Returns the curve with the node removed (possibly disconnected)
        and the two branch points, now free marked points.
        """
        node = self.node(nid)
        remaining = tuple(n for n in self.nodes if n.nid != nid)
        return (CurveGraph(self.components, remaining), node.branches)

    def subcurve_complement(
        self, cids: Iterable[str]
    ) -> tuple[frozenset[str], frozenset[str]]:
        """Complement of a subcurve and the nodes joining the two sides.

        The subcurve is given by its component ids; it must be a proper
        nonempty subset.
        """
        inside = frozenset(cids)
        all_cids = frozenset(self._by_cid)
        if not inside or not inside <= all_cids:
            raise ValueError("subcurve must be a nonempty set of component ids")
        outside = all_cids - inside
        if not outside:
            raise ValueError("subcurve must be proper")
        joining = frozenset(
            n.nid
            for n in self.nodes
            if (n.branch_a[0] in inside) != (n.branch_b[0] in inside)
        )
        return (outside, joining)


def disjoint_union(*curves: CurveGraph) -> CurveGraph:
    """Union of curves with pairwise disjoint id namespaces.

    The result is disconnected data; it exists so surgery can assemble
    sources piecewise before adding the joining nodes.
    """
    components: list[Component] = []
    nodes: list[NodeRecord] = []
    for curve in curves:
        components.extend(curve.components)
        nodes.extend(curve.nodes)
    return CurveGraph(tuple(components), tuple(nodes))


def relabel(curve: CurveGraph, rename) -> CurveGraph:
    """Copy of a curve with every component, point and node id passed
    through `rename`.  Used to stamp out fresh copies during gluing."""
    comps = tuple(
        Component(rename(c.cid), c.genus, tuple(rename(p) for p in c.points))
        for c in curve.components
    )
    nods = tuple(
        NodeRecord(
            rename(n.nid),
            (rename(n.branch_a[0]), rename(n.branch_a[1])),
            (rename(n.branch_b[0]), rename(n.branch_b[1])),
        )
        for n in curve.nodes
    )
    return CurveGraph(comps, nods)
