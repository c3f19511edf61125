"""Build hook: compiles the optional fast kernel when Cython is available.

The package is pure Python; `shuffle_forge._fastkernel` is a drop-in
accelerated twin of `shuffle_forge._purekernel` and the import layer in
`polyvars` falls back silently when the extension is absent.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("shuffle_forge._fastkernel", ["src/shuffle_forge/_fastkernel.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
