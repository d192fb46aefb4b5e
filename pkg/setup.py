"""Build script for the optional compiled quadrature kernel.

The package is fully functional without the extension (a numpy fallback is
selected at import time); the extension only speeds up the hot grid-search
loops. Build failures are therefore non-fatal.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "delob._kernels",
                ["src/delob/_kernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
