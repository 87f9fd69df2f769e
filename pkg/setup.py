"""Build script: compiles the row-kernel extension when Cython and a C
compiler are available; otherwise installs pure-Python only (the package
falls back to the numpy kernel lane at import time)."""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from setuptools import Extension
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "collapse_cert._kernels._core",
                ["src/collapse_cert/_kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
