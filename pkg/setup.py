import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("CURVATURE_GAUGE_PURE"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "curvature_gauge._sweep_cy",
                    ["src/curvature_gauge/_sweep_cy.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # Pure-Python install: curvature_gauge.kernels falls back to NumPy.
        ext_modules = []

setup(ext_modules=ext_modules)
