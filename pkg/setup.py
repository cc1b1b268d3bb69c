"""Build script for the optional compiled search kernels.

The package works without the extension: ``litrev.vector.kernels`` falls
back to a numpy implementation when the compiled module is absent.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext = Extension(
        "litrev.vector.kernels._native",
        sources=["src/litrev/vector/kernels/_native.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        optional=True,
    )
    ext_modules = cythonize([ext], language_level="3")
except ImportError:
    # No Cython at build time: ship the pure fallback only.
    ext_modules = []

setup(ext_modules=ext_modules)
