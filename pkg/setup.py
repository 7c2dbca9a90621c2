"""Builds the optional compiled search kernel.

The package is pure Python; admcovers._permcore is a drop-in accelerator for
the monodromy factorization search. If Cython (or a C compiler) is missing
the build proceeds without it and admcovers.perms falls back to the pure
implementation at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/admcovers/_permcore.pyx"],
        language_level="3",
    )
except Exception as exc:  # noqa: BLE001 - any build-chain failure means "skip"
    print(f"admcovers: building without the compiled kernel ({exc})")

setup(ext_modules=ext_modules)
