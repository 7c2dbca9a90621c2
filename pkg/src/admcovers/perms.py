"""Monodromy search backend selection.

The compiled kernel is an optional build product; when it is absent
the pure-Python twin takes over with identical semantics.  BACKEND
names whichever was picked so benchmarks and tests can tell.
"""

from __future__ import annotations

try:
    from ._permcore import find_factorization

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on the build
    from ._permpy import find_factorization

    BACKEND = "pure"

__all__ = ["find_factorization", "BACKEND"]
