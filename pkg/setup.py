"""Builds the optional compiled term-engine core.

If Cython or a C compiler is missing the package still installs and runs
on the pure-Python kernel."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("QDUAL_NO_CYTHON", "") in ("", "0"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(["src/qdual/_ckernel.pyx"], language_level=3, quiet=True)
    except Exception as exc:  # pragma: no cover - build environment dependent
        print(f"note: building without the compiled kernel ({exc})")

setup(ext_modules=ext_modules)
