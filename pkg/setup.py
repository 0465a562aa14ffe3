import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FLATBILLIARDS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        extensions = [
            Extension(
                "flatbilliards._speedups",
                ["src/flatbilliards/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ]
        ext_modules = cythonize(
            extensions, compiler_directives={"language_level": "3"}
        )
    except ImportError:
        # No Cython: the pure-Python kernel is used instead.
        ext_modules = []

setup(ext_modules=ext_modules)
