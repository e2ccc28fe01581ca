import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the kernel falls back at import
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("POLARLINES_PURE"):
    ext_modules = cythonize(
        [
            Extension(
                "polarlines.kernels._ckernel",
                ["src/polarlines/kernels/_ckernel.pyx"],
                include_dirs=["src/polarlines/kernels"],
                language="c++",
                extra_compile_args=["-O3", "-std=c++14"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
