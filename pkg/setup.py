import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled row kernels are an optional speedup: the package falls back to
# the pure-Python engines when the extension is absent.  -ffp-contract=off
# keeps the C arithmetic bit-identical to the Python path (no FMA fusion).
ext_modules = []
if cythonize is not None and os.environ.get("ELASTIK_NO_EXT") != "1":
    ext_modules = cythonize(
        [
            Extension(
                "elastik._speedups",
                ["src/elastik/_speedups.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
