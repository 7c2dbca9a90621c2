"""Pure-Python monodromy factorization search.

Depth-first search for permutations, one per requested conjugacy
class, whose ordered product is the identity and whose joint action is
transitive.  Mirrors src/admcovers/_permcore.pyx step for step; both
backends must visit candidates in the same order and return the same
witness.
"""

from __future__ import annotations

from . import permtables as pt


def _merged_orbits(labels: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    lab = list(labels)

    def find(x: int) -> int:
        while lab[x] != x:
            lab[x] = lab[lab[x]]
            x = lab[x]
        return x

    for i, j in enumerate(perm):
        ri, rj = find(i), find(j)
        if ri != rj:
            lab[max(ri, rj)] = min(ri, rj)
    return tuple(find(x) for x in range(len(lab)))


def find_factorization(k: int, class_ids: tuple[int, ...]) -> tuple[int, ...] | None:
    """Permutation indices realizing the classes, or None.

    The first factor is pinned to its class representative: solutions
    are closed under simultaneous conjugation, which acts transitively
    on the first factor's class.
    """
    ps = pt.perms(k)
    table = pt.mult_table(k)
    tof = pt.type_of(k)
    members = pt.class_members(k)
    transition = pt.type_transition(k)
    parts = pt.partitions(k)
    identity = pt.identity_index(k)
    m = len(class_ids)

    # feasible[i]: bitmask of types a product of classes i.. can realize.
    # Products of whole classes are conjugation-closed, so membership of
    # the needed type is exact, not just necessary.
    feasible = [0] * (m + 1)
    feasible[m] = 1 << tof[identity]
    for i in range(m - 1, -1, -1):
        mask = 0
        rest = feasible[i + 1]
        for t in range(len(parts)):
            if rest >> t & 1:
                mask |= transition[class_ids[i]][t]
        feasible[i] = mask

    # capacity[i]: most orbit merges classes i.. can still perform.
    capacity = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        capacity[i] = capacity[i + 1] + (k - len(parts[class_ids[i]]))

    start_labels = tuple(range(k))
    witness = [0] * m

    def search(depth: int, prefix: int, labels: tuple[int, ...]) -> bool:
        orbit_count = len(set(labels))
        if depth == m:
            return prefix == identity and orbit_count == 1
        if not feasible[depth] >> tof[prefix] & 1:
            return False
        if orbit_count - 1 > capacity[depth]:
            return False
        pool = members[class_ids[depth]]
        if depth == 0:
            pool = pool[:1]
        row = table[prefix]
        for sigma in pool:
            witness[depth] = sigma
            if search(depth + 1, row[sigma], _merged_orbits(labels, ps[sigma])):
                return True
        return False

    if search(0, identity, start_labels):
        return tuple(witness)
    return None
