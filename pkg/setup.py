# Builds the optional Cython kernels; the package falls back to the
# pure-Python kernels when the extension is absent.
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("LAURICELLA_DMOD_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "lauricella_dmod._ckernels",
                    ["src/lauricella_dmod/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
