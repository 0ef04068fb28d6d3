# Builds the optional compiled kernels.  The package works without them
# (a numpy fallback is selected at import time), so a failed build of the
# extension should not block installation from source:
#   pip install -e . --no-build-isolation
import numpy
from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "hkbose.kernels._core",
        sources=["src/hkbose/kernels/_core.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
