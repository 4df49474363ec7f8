from setuptools import setup

# The compiled kernels are optional: without Cython (or if the build fails)
# the package falls back to the pure-NumPy backend at import time.
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("hyperwalk._core", ["src/hyperwalk/_core.pyx"])],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
