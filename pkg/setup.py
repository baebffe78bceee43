"""Build script: compiles the optional fast kernel core.

The package is fully functional without the extension (a NumPy backend with
identical semantics is selected at import time), so any compilation problem
degrades gracefully to a pure build.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "vhelab.kernels._fastcore",
                ["src/vhelab/kernels/_fastcore.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"vhelab: skipping compiled kernels ({exc}); using the NumPy backend")

setup(ext_modules=ext_modules)
