"""Build hook for the optional Cython kernel.

The compiled module is optional: when Cython or a C compiler is missing the
package installs without it and the pure-Python kernel is used at runtime.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("SALEMDYN_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("salemdyn._kernels._zerodiv_c", ["src/salemdyn/_kernels/_zerodiv_c.pyx"])],
            compiler_directives={"language_level": 3, "boundscheck": False, "wraparound": False},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
