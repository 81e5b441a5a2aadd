import os

from setuptools import setup

ext_modules = []
if os.environ.get("CURVEDEFECT_NO_EXT", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            ["src/curvedefect/_ckernels.pyx"],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
