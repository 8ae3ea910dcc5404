"""Build hook for the optional compiled kernels.

The package works without the extension (pure-Python fallback), so a
missing Cython or compiler only skips it.
"""
from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:
    pass
else:
    ext_modules = cythonize(
        [Extension("kalvar._ckernels", ["src/kalvar/_ckernels.pyx"])],
        compiler_directives={"language_level": 3},
        quiet=True,
    )

setup(ext_modules=ext_modules)
