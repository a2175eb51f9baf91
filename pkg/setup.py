"""Build script: compiles the optional canonicalization kernel when Cython
and a C toolchain are available.  The package is fully functional without it
(pure-Python fallback selected at import); set SPLINTKIT_NO_EXT=1 to skip.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("SPLINTKIT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("splintkit._speedups", ["src/splintkit/_speedups.pyx"])],
            language_level="3",
        )
    except Exception:
        ext_modules = []

setup(ext_modules=ext_modules)
