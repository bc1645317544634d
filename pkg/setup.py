"""Builds the optional Cython bitset kernels.

The package works without the extension (a NumPy fallback is selected at
import time), so the extension is marked optional and a failed compile
does not fail the install.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    extensions = [
        Extension(
            "ccsubmod._kernels._bitset",
            ["src/ccsubmod/_kernels/_bitset.pyx"],
            extra_compile_args=["-O3"],
        )
    ]
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})

for ext in ext_modules:
    ext.optional = True

setup(ext_modules=ext_modules)
