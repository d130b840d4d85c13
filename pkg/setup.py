import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LGSTATE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        # kernels.py falls back to _kernels_py at import time
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("lgstate._kernels", ["src/lgstate/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
