"""Build script: compiles the optional speed kernels when Cython is available.

The package is fully functional without the extension; ratcoord._kernels
falls back to the pure-Python implementations at import time.
"""

import os

from setuptools import Extension, setup

PYX = "src/ratcoord/_kernels/_speed.pyx"

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None and os.path.exists(PYX):
    ext_modules = cythonize(
        [Extension("ratcoord._kernels._speed", [PYX], language="c++")],
        compiler_directives={"language_level": "3"},
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
