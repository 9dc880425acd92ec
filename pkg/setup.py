# The compiled sweep is optional: without Cython the package falls back to
# the pure-Python kernel at import time.
from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("dipole_atlas._sweep_c", ["src/dipole_atlas/_sweep_c.pyx"])],
        language_level="3",
    )

setup(ext_modules=ext_modules)
