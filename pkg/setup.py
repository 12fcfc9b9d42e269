import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    cythonize = None

extensions = []
if cythonize is not None and os.environ.get("THFACTOR_NO_EXT", "") in ("", "0"):
    extensions = cythonize(
        [
            Extension(
                "thfactor._kernels",
                ["src/thfactor/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=extensions)
