"""Ramification behaviors of maps restricted to one component.

A behavior describes how one smooth component can map onto a rational
component: the degree, and the fiber class of every node-branch point
living on it.  Branch points sharing a class are conjugated (they map
to one common target point); a class may also carry anonymous indices
filling up the rest of its fiber.

A profile bundles the behaviors a component is known to admit together
with its genus and gonality.  Profiles are inputs: they assert what
maps exist on the smooth pieces, and the gluing machinery builds
covers of the nodal curve out of them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .covers import FiberPoint, branch_budget
from .monodromy import HurwitzDatum, hurwitz_necessary


class ProfileError(ValueError):
    """The behavior or profile data is inconsistent."""


@dataclass(frozen=True)
class FiberClass:
    """One conjugation class: named branch points sharing a target
    image, plus anonymous indices completing the fiber."""

    branches: tuple[FiberPoint, ...]
    anonymous: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not self.branches:
            raise ProfileError("a fiber class needs at least one named branch")
        if any(e < 1 for e in self.anonymous):
            raise ProfileError("anonymous indices must be positive")

    def total(self) -> int:
        return sum(fp.index for fp in self.branches) + sum(self.anonymous)

    def multiplicity(self) -> int:
        return self.total() - len(self.branches) - len(self.anonymous)

    def branch_points(self) -> tuple[str, ...]:
        return tuple(fp.point for fp in self.branches)


@dataclass(frozen=True)
class MapBehavior:
    """Degree plus the fiber class of every node branch on the
    component.  Classes fill their fibers exactly: named indices and
    anonymous indices sum to the degree."""

    degree: int
    classes: tuple[FiberClass, ...]

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ProfileError("degree must be positive")
        if not self.classes:
            raise ProfileError("a behavior needs at least one class")
        seen: set[str] = set()
        for cls in self.classes:
            if cls.total() != self.degree:
                raise ProfileError(
                    f"class {cls.branch_points()} sums to {cls.total()}, "
                    f"not the degree {self.degree}"
                )
            for pid in cls.branch_points():
                if pid in seen:
                    raise ProfileError(f"branch point {pid} in two classes")
                seen.add(pid)

    def branch_points(self) -> tuple[str, ...]:
        return tuple(p for cls in self.classes for p in cls.branch_points())

    def class_of(self, pid: str) -> FiberClass:
        for cls in self.classes:
            if pid in cls.branch_points():
                return cls
        raise KeyError(f"no class contains {pid}")

    def class_index_of(self, pid: str) -> int:
        for i, cls in enumerate(self.classes):
            if pid in cls.branch_points():
                return i
        raise KeyError(f"no class contains {pid}")

    def index_of(self, pid: str) -> int:
        for cls in self.classes:
            for fp in cls.branches:
                if fp.point == pid:
                    return fp.index
        raise KeyError(f"no class contains {pid}")

    def declared_multiplicity(self) -> int:
        return sum(cls.multiplicity() for cls in self.classes)


def behavior_to_hurwitz(genus: int, behavior: MapBehavior) -> HurwitzDatum:
    """The branch data a smooth genus-g curve must realize to admit the
    behavior: one partition per class, padded with fixed points, plus
    however many simple points Riemann-Hurwitz still requires."""
    k = behavior.degree
    leftover = branch_budget(genus, k) - behavior.declared_multiplicity()
    if leftover < 0:
        raise ProfileError(
            f"declared multiplicity exceeds the branch budget {branch_budget(genus, k)}"
        )
    profiles = []
    for cls in behavior.classes:
        parts = tuple(fp.index for fp in cls.branches) + cls.anonymous
        profiles.append(parts)
    simple = ((2,) + (1,) * (k - 2)) if k >= 2 else (1,)
    profiles.extend([simple] * leftover)
    return HurwitzDatum(k, tuple(profiles))


@dataclass(frozen=True)
class ComponentProfile:
    """What is known about maps from one smooth component.

    `complete=False` marks a profile that may omit behaviors; exact
    answers downstream degrade to one-sided ones.  Every behavior must
    name the same branch points (the component's node branches) and
    pass the necessary Hurwitz conditions at the component's genus.
    """

    component: str
    genus: int
    gonality: int
    behaviors: tuple[MapBehavior, ...] = ()
    complete: bool = True

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ProfileError("negative genus")
        if self.gonality < 1:
            raise ProfileError("gonality must be positive")
        if self.genus >= 1 and self.gonality < 2:
            raise ProfileError("a non-rational component has gonality >= 2")
        branch_sets = {
            tuple(sorted(b.branch_points())) for b in self.behaviors
        }
        if len(branch_sets) > 1:
            raise ProfileError("behaviors disagree on the branch point set")
        for behavior in self.behaviors:
            if behavior.degree < self.gonality:
                raise ProfileError(
                    f"behavior of degree {behavior.degree} below gonality "
                    f"{self.gonality}"
                )
            if not hurwitz_necessary(behavior_to_hurwitz(self.genus, behavior)):
                raise ProfileError(
                    f"behavior of degree {behavior.degree} fails the "
                    f"necessary Hurwitz conditions"
                )

    def branch_points(self) -> tuple[str, ...]:
        if not self.behaviors:
            return ()
        return tuple(sorted(self.behaviors[0].branch_points()))

    def gonal_behaviors(self) -> tuple[MapBehavior, ...]:
        return tuple(b for b in self.behaviors if b.degree == self.gonality)
