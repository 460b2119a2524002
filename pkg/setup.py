"""Build script: compiles the clique kernel when Cython is available.

The extension is optional; without it the package falls back to the pure
Python kernel at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("molspace._cliquekernel", ["src/molspace/_cliquekernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
