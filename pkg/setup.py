import os

from setuptools import Extension, setup

# The compiled kernel module is optional: set LOXSURF_NO_EXT=1 to skip it.
# The package falls back to the pure-Python kernels at import time when the
# extension is absent.
ext_modules = []
if not os.environ.get("LOXSURF_NO_EXT"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "loxsurf.numerics._kernels",
                ["src/loxsurf/numerics/_kernels.pyx"],
            )
        ],
        language_level="3",
        compiler_directives={"boundscheck": False, "cdivision": True},
    )

setup(ext_modules=ext_modules)
