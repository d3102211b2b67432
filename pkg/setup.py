import os

from setuptools import setup

ext_modules = []
if not os.environ.get("ISOCLASS_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            ["src/isoclass/arith/_modp.pyx"],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
