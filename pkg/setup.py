import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("TRIQUANT_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "triquant._termops_c",
                    ["src/triquant/_termops_c.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: install with the pure-Python kernels only.
        ext_modules = []

setup(ext_modules=ext_modules)
