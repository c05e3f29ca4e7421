"""Build script: compiles the optional accelerator extension.

The package is fully functional without the extension; holomap._kernels
falls back to numpy implementations when the compiled module is absent.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext = Extension(
        "holomap._kernels._ckernels",
        sources=["src/holomap/_kernels/_ckernels.pyx"],
        optional=True,
    )
    ext_modules = cythonize([ext], language_level="3")
except ImportError:
    pass

setup(ext_modules=ext_modules)
