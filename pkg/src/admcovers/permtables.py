"""Precomputed symmetric-group tables for the monodromy search.

Everything is indexed: permutations of {0..k-1} get the index of their
lexicographic position, cycle types get the index of their partition in
the sorted partition list.  Tables are built once per degree and cached;
the search backends only ever shuffle small integers.
"""

from __future__ import annotations

from array import array
from functools import lru_cache
from itertools import permutations


def compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """The permutation sending i to p[q[i]]: q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def cycle_type(p: tuple[int, ...]) -> tuple[int, ...]:
    """Cycle lengths in descending order."""
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        cursor = start
        while not seen[cursor]:
            seen[cursor] = True
            cursor = p[cursor]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


@lru_cache(maxsize=None)
def partitions(k: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of k, descending parts, sorted descending."""
    result: list[tuple[int, ...]] = []

    def extend(remaining: int, largest: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            result.append(prefix)
            return
        for part in range(min(remaining, largest), 0, -1):
            extend(remaining - part, part, prefix + (part,))

    extend(k, k, ())
    return tuple(sorted(result, reverse=True))


@lru_cache(maxsize=None)
def perms(k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(permutations(range(k)))


@lru_cache(maxsize=None)
def perm_index(k: int) -> dict[tuple[int, ...], int]:
    return {p: i for i, p in enumerate(perms(k))}


@lru_cache(maxsize=None)
def identity_index(k: int) -> int:
    return perm_index(k)[tuple(range(k))]


@lru_cache(maxsize=None)
def partition_id(k: int) -> dict[tuple[int, ...], int]:
    return {p: i for i, p in enumerate(partitions(k))}


@lru_cache(maxsize=None)
def type_of(k: int) -> array:
    """Partition id of every permutation, by permutation index."""
    ids = partition_id(k)
    return array("B", (ids[cycle_type(p)] for p in perms(k)))


@lru_cache(maxsize=None)
def class_members(k: int) -> tuple[tuple[int, ...], ...]:
    """Permutation indices of each conjugacy class, by partition id."""
    buckets: list[list[int]] = [[] for _ in partitions(k)]
    for i, tid in enumerate(type_of(k)):
        buckets[tid].append(i)
    return tuple(tuple(b) for b in buckets)


@lru_cache(maxsize=None)
def mult_table(k: int) -> tuple[array, ...]:
    """Row i, column j: index of perms[i] composed with perms[j]."""
    ps = perms(k)
    idx = perm_index(k)
    typecode = "H" if len(ps) <= 65535 else "L"
    return tuple(
        array(typecode, (idx[compose(p, q)] for q in ps)) for p in ps
    )


@lru_cache(maxsize=None)
def type_transition(k: int) -> tuple[tuple[int, ...], ...]:
    """transition[a][b]: bitmask of partition ids reachable as the type
    of p * q with p in class a and q in class b.

    Classes are conjugation-closed, so the reachable set does not
    depend on which representative of class a is used.
    """
    ps = perms(k)
    members = class_members(k)
    tof = type_of(k)
    table = mult_table(k)
    out = []
    for a in range(len(members)):
        rep_row = table[members[a][0]]
        row = []
        for b in range(len(members)):
            mask = 0
            for j in members[b]:
                mask |= 1 << tof[rep_row[j]]
            row.append(mask)
        out.append(tuple(row))
    return tuple(out)
