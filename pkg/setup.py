import os

from setuptools import setup

PYX = "src/knotpres/_coset_speedup.pyx"

ext_modules = []
if os.environ.get("KNOTPRES_NO_EXT") != "1" and os.path.exists(PYX):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [PYX],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        # No Cython available: install runs fine on the pure-Python kernel.
        ext_modules = []

setup(ext_modules=ext_modules)
