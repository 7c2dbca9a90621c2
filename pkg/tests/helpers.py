"""Builders shared across the test modules."""

from __future__ import annotations

from admcovers.covers import FiberPoint
from admcovers.curves import Component, CurveGraph, NodeRecord
from admcovers.profiles import ComponentProfile, FiberClass, MapBehavior


def chain_curve(delta: int, g1: int = 2, g2: int = 2) -> CurveGraph:
    """Two smooth components X, Y joined by delta nodes x_j ~ y_j."""
    xs = tuple(f"x{j}" for j in range(1, delta + 1))
    ys = tuple(f"y{j}" for j in range(1, delta + 1))
    return CurveGraph(
        (Component("X", g1, xs), Component("Y", g2, ys)),
        tuple(
            NodeRecord(f"n{j}", ("X", f"x{j}"), ("Y", f"y{j}"))
            for j in range(1, delta + 1)
        ),
    )


def pooled(degree: int, points, indices) -> MapBehavior:
    """Single-class behavior: all named points conjugated, the fiber
    filled up with simple anonymous points."""
    named = tuple(FiberPoint(p, e) for p, e in zip(points, indices))
    anon = (1,) * (degree - sum(indices))
    return MapBehavior(degree, (FiberClass(named, anon),))


def classed(degree: int, groups) -> MapBehavior:
    """Behavior from explicit groups [[(pid, e), ...], ...], one class
    per group, each filled with simple anonymous points."""
    classes = []
    for group in groups:
        named = tuple(FiberPoint(p, e) for p, e in group)
        anon = (1,) * (degree - sum(e for _, e in group))
        classes.append(FiberClass(named, anon))
    return MapBehavior(degree, tuple(classes))


def profile(cid: str, genus: int, gon: int, behaviors, complete: bool = True):
    return ComponentProfile(cid, genus, gon, tuple(behaviors), complete)


def gonal_profile(cid: str, points, gon: int, e: int) -> ComponentProfile:
    """The one-node grid profile: a single pooled gonal behavior with
    index e at the node branch, on a component of matching genus."""
    genus = 2 if gon == 2 else 3
    (point,) = tuple(points)
    return profile(cid, genus, gon, [pooled(gon, (point,), (e,))])
