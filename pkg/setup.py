"""Build script for the optional compiled pixel-statistics kernel.

The package works without the extension: facade_pipeline.kernels falls back
to a NumPy implementation when the compiled module is absent.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    import numpy

    ext_modules = cythonize(
        [
            Extension(
                "facade_pipeline._masked_stats",
                ["src/facade_pipeline/_masked_stats.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
