"""Build script: compiles the bitmask kernel extension when Cython and a C
compiler are available; the package falls back to the pure-Python kernels at
import time if the extension is missing, so a failed compile is not fatal."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/hullflow/_kernels.pyx",
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
