"""Pure vs compiled factorization search on identical inputs.

Runs both backends directly, so the comparison works regardless of
which one admcovers.perms selected at import.  The slow case is a
degree-6 all-simple-branching search; skip it with --quick.
"""

from __future__ import annotations

import argparse
import time

from admcovers import _permpy
from admcovers import permtables as pt

try:
    from admcovers import _permcore
except ImportError:
    _permcore = None

CASES = (
    ("degree 4, simple x6", 4, ((2, 1, 1),) * 6, False),
    ("degree 5, simple x8", 5, ((2, 1, 1, 1),) * 8, False),
    ("degree 5, mixed", 5, ((5,), (5,), (3, 1, 1), (2, 2, 1)), False),
    ("degree 6, heavy mix", 6, ((3, 3), (3, 3), (2, 2, 1, 1)), False),
    ("degree 6, simple x10", 6, ((2, 1, 1, 1, 1),) * 10, True),
)


def class_ids(k: int, partitions) -> tuple[int, ...]:
    ids = pt.partition_id(k)
    return tuple(ids[p] for p in partitions)


def warm(backend, k: int) -> None:
    """Build the degree tables outside the timed region."""
    pt.mult_table(k)
    pt.type_transition(k)
    backend.find_factorization(k, (class_ids(k, ((1,) * k,))[0],))


def timed(backend, k: int, cids) -> tuple[float, object]:
    start = time.perf_counter()
    result = backend.find_factorization(k, cids)
    return time.perf_counter() - start, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--quick", action="store_true", help="skip the slow degree-6 case"
    )
    args = parser.parse_args()

    backends = [("pure", _permpy)]
    if _permcore is not None:
        backends.append(("compiled", _permcore))
    else:
        print("compiled kernel not built; timing the pure backend only")

    width = max(len(name) for name, _, _, _ in CASES)
    header = f"{'case':<{width}}  " + "".join(
        f"{name:>12}" for name, _ in backends
    )
    print(header + ("     speedup" if len(backends) == 2 else ""))
    for name, k, partitions, slow in CASES:
        if slow and args.quick:
            continue
        cids = class_ids(k, partitions)
        row = f"{name:<{width}}  "
        times = []
        outcome = "?"
        for _, backend in backends:
            warm(backend, k)
            elapsed, result = timed(backend, k, cids)
            times.append(elapsed)
            outcome = "witness" if result is not None else "none"
            row += f"{elapsed:>11.3f}s"
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row + f"   ({outcome})")


if __name__ == "__main__":
    main()
