"""Existence of branched covers of the line with prescribed cycle types.

A HurwitzDatum asks: is there a connected degree-k cover of the
projective line whose branch points induce the given cycle types?

Two answers are offered.  `hurwitz_necessary` is the cheap arithmetic
gate: total multiplicity even and matching 2g + 2k - 2 for some genus
g >= 0.  `hurwitz_exists` settles the question by exhibiting (or
exhausting) permutation tuples with prescribed classes, identity
product, and transitive action; it runs the compiled kernel when the
build produced one.  Existence search is capped at degree 6; beyond
that the answer is a SearchBoundExceeded error, never a guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import permtables as pt
from .perms import find_factorization

SEARCH_DEGREE_CAP = 6


class SearchBoundExceeded(ValueError):
    """The existence search does not run above SEARCH_DEGREE_CAP."""


@dataclass(frozen=True)
class HurwitzDatum:
    """A degree and one cycle-type partition per branch point."""

    degree: int
    profiles: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError("degree must be positive")
        canonical = []
        for profile in self.profiles:
            parts = tuple(sorted(profile, reverse=True))
            if not parts or any(p < 1 for p in parts) or sum(parts) != self.degree:
                raise ValueError(
                    f"{profile} is not a partition of {self.degree}"
                )
            canonical.append(parts)
        object.__setattr__(self, "profiles", tuple(sorted(canonical, reverse=True)))

    def total_multiplicity(self) -> int:
        return sum(self.degree - len(p) for p in self.profiles)


def hurwitz_necessary(datum: HurwitzDatum) -> bool:
    """Parity and genus gate: the total multiplicity must be even and
    equal 2g + 2k - 2 for an integer g >= 0."""
    total = datum.total_multiplicity()
    return total % 2 == 0 and total >= 2 * datum.degree - 2


@dataclass(frozen=True)
class HurwitzResult:
    exists: bool
    witness: tuple[tuple[int, ...], ...] | None = None


@lru_cache(maxsize=None)
def _search(degree: int, class_ids: tuple[int, ...]) -> tuple[int, ...] | None:
    return find_factorization(degree, class_ids)


def hurwitz_exists(datum: HurwitzDatum) -> HurwitzResult:
    """Decide existence by monodromy search.

    Returns a witness tuple of permutations (images of 0..k-1) whose
    cycle types realize the profiles in canonical order.  A datum that
    fails the necessary conditions yields exists=False rather than an
    error; only degrees beyond the search cap are refused.
    """
    if datum.degree > SEARCH_DEGREE_CAP:
        raise SearchBoundExceeded(
            f"degree {datum.degree} exceeds search cap {SEARCH_DEGREE_CAP}"
        )
    if not hurwitz_necessary(datum):
        return HurwitzResult(False)
    ids = pt.partition_id(datum.degree)
    class_ids = tuple(ids[p] for p in datum.profiles)
    found = _search(datum.degree, class_ids)
    if found is None:
        return HurwitzResult(False)
    ps = pt.perms(datum.degree)
    return HurwitzResult(True, tuple(ps[i] for i in found))
