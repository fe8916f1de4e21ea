import os

from setuptools import setup

ext_modules = []
if not os.environ.get("CYLTOR_PURE"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("cyltor._kernel", ["src/cyltor/_kernel.pyx"])],
            language_level=3,
        )
    except Exception:
        # No Cython / no compiler: the pure-Python kernel is used instead.
        ext_modules = []

setup(ext_modules=ext_modules)
