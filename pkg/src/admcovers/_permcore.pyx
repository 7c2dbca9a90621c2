# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled monodromy factorization search.

Drop-in twin of admcovers._permpy.find_factorization: same tables, same
candidate order, same pruning, same witness.  The symmetric-group data
still comes from admcovers.permtables; this module flattens it into
contiguous buffers once per degree and types the depth-first search
that consumes it.
"""

from array import array

from . import permtables as pt

_FLAT = {}


def _flat_tables(k):
    """Flattened permutation and multiplication tables, cached per k."""
    entry = _FLAT.get(k)
    if entry is None:
        ps = pt.perms(k)
        perm_flat = array("i", (v for p in ps for v in p))
        mult_flat = array("I", (v for row in pt.mult_table(k) for v in row))
        members = tuple(array("i", c) for c in pt.class_members(k))
        entry = (perm_flat, mult_flat, pt.type_of(k), members)
        _FLAT[k] = entry
    return entry


def find_factorization(k, class_ids):
    """Permutation indices realizing the classes, or None.

    The first factor is pinned to its class representative: solutions
    are closed under simultaneous conjugation, which acts transitively
    on the first factor's class.
    """
    class_ids = tuple(class_ids)
    parts = pt.partitions(k)
    transition = pt.type_transition(k)
    identity = pt.identity_index(k)
    perm_flat, mult_flat, tof, members = _flat_tables(k)
    m = len(class_ids)
    n_types = len(parts)

    # feasible[i]: bitmask of types a product of classes i.. can realize.
    # Products of whole classes are conjugation-closed, so membership of
    # the needed type is exact, not just necessary.
    masks = [0] * (m + 1)
    masks[m] = 1 << tof[identity]
    for i in range(m - 1, -1, -1):
        mask = 0
        rest = masks[i + 1]
        for t in range(n_types):
            if rest >> t & 1:
                mask |= transition[class_ids[i]][t]
        masks[i] = mask
    feasible = array(
        "B",
        (
            1 if masks[i] >> t & 1 else 0
            for i in range(m + 1)
            for t in range(n_types)
        ),
    )

    # capacity[i]: most orbit merges classes i.. can still perform.
    capacity = array("i", [0] * (m + 1))
    for i in range(m - 1, -1, -1):
        capacity[i] = capacity[i + 1] + (k - len(parts[class_ids[i]]))

    pools = []
    for depth in range(m):
        pool = members[class_ids[depth]]
        pools.append(pool[:1] if depth == 0 else pool)

    dfs = _Dfs(
        k, m, n_types, identity, perm_flat, mult_flat, tof, feasible,
        capacity, pools,
    )
    return dfs.run()


cdef class _Dfs:
    cdef int k, m, n, n_types, identity
    cdef int[::1] perm_flat
    cdef unsigned int[::1] mult_flat
    cdef unsigned char[::1] tof
    cdef unsigned char[::1] feasible
    cdef int[::1] capacity
    cdef int[::1] labels
    cdef int[::1] witness
    cdef unsigned char[::1] seen
    cdef list pools

    def __cinit__(
        self, int k, int m, int n_types, int identity, perm_flat,
        mult_flat, tof, feasible, capacity, pools,
    ):
        self.k = k
        self.m = m
        self.n_types = n_types
        self.identity = identity
        self.perm_flat = perm_flat
        self.mult_flat = mult_flat
        self.n = len(mult_flat) // len(tof) if len(tof) else 0
        self.tof = tof
        self.feasible = feasible
        self.capacity = capacity
        self.pools = pools
        self.labels = array("i", [0] * ((m + 1) * k))
        self.witness = array("i", [0] * m) if m else array("i", [0])
        self.seen = array("B", [0] * k)

    cdef int orbit_count(self, int depth):
        cdef int base = depth * self.k
        cdef int i, c = 0
        for i in range(self.k):
            self.seen[i] = 0
        for i in range(self.k):
            if not self.seen[self.labels[base + i]]:
                self.seen[self.labels[base + i]] = 1
                c += 1
        return c

    cdef int find(self, int base, int x):
        while self.labels[base + x] != x:
            self.labels[base + x] = self.labels[base + self.labels[base + x]]
            x = self.labels[base + x]
        return x

    cdef void merged(self, int depth, int sigma):
        cdef int k = self.k
        cdef int src = depth * k
        cdef int dst = (depth + 1) * k
        cdef int i, ri, rj
        for i in range(k):
            self.labels[dst + i] = self.labels[src + i]
        for i in range(k):
            ri = self.find(dst, i)
            rj = self.find(dst, self.perm_flat[sigma * k + i])
            if ri != rj:
                if ri > rj:
                    self.labels[dst + ri] = rj
                else:
                    self.labels[dst + rj] = ri
        for i in range(k):
            self.labels[dst + i] = self.find(dst, i)

    cdef bint search(self, int depth, int prefix):
        cdef int oc = self.orbit_count(depth)
        cdef int[::1] pool
        cdef Py_ssize_t idx, rowbase
        cdef int sigma
        if depth == self.m:
            return prefix == self.identity and oc == 1
        if not self.feasible[depth * self.n_types + self.tof[prefix]]:
            return False
        if oc - 1 > self.capacity[depth]:
            return False
        pool = self.pools[depth]
        rowbase = (<Py_ssize_t> prefix) * self.n
        for idx in range(pool.shape[0]):
            sigma = pool[idx]
            self.witness[depth] = sigma
            self.merged(depth, sigma)
            if self.search(depth + 1, <int> self.mult_flat[rowbase + sigma]):
                return True
        return False

    def run(self):
        cdef int i
        for i in range(self.k):
            self.labels[i] = i
        if self.search(0, self.identity):
            return tuple(self.witness[i] for i in range(self.m))
        return None
