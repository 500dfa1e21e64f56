"""Build script for the optional compiled CA kernel.

The Cython extension is optional: if Cython or a C compiler is missing the
package installs without it and falls back to ``fischer._kernels_py``.
"""
from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("fischer._kernels", ["src/fischer/_kernels.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3", "boundscheck": False,
                             "wraparound": False},
    )
except Exception:  # pragma: no cover - build env without Cython
    ext_modules = []

setup(ext_modules=ext_modules)
