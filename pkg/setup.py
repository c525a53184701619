"""Build script for the optional compiled kernel.

The package works without the extension (a pure-Python kernel is selected
at import time); the extension just makes the hot paths much faster.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("dynkd._ckd", ["src/dynkd/_ckd.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
