"""Build script for the compiled kernel extension.

The extension is optional: if Cython (or a C compiler) is unavailable the
package falls back to the pure NumPy kernels at import time.

    pip install -e . --no-build-isolation
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qfft.kernels._speedups",
                ["src/qfft/kernels/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                # -ffp-contract=off keeps the C butterflies bit-compatible
                # with the NumPy fallback (no FMA contraction).
                extra_compile_args=["-O3", "-ffp-contract=off"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
