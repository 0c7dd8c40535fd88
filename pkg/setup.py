"""Build script: compiles the optional bitmask kernel extension.

The package is pure Python by default; if Cython and a C compiler are
available the hot kernels in ``powerposet/_kernels_c.pyx`` are compiled
and picked up automatically at import time.  Any build failure degrades
to the pure-Python kernels, never to a broken install.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "powerposet._kernels_c",
                ["src/powerposet/_kernels_c.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - toolchain dependent
    print(f"powerposet: skipping compiled kernels ({exc})")

setup(ext_modules=ext_modules)
