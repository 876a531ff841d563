"""Build script.

The compiled bitset kernels are optional: if Cython (or a C compiler) is
unavailable the package installs with the pure-Python backend only.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "labgraphs._kernels._ckern",
                ["src/labgraphs/_kernels/_ckern.pyx"],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
