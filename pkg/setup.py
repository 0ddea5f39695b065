"""Build hook for the optional GMP kernel.

A failed compile (no Cython, no gmp.h, no gmpy2 headers) is not fatal: the
package then runs on the pure-Python kernels.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            self.warn(f"compiled kernel not built, using pure Python: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self.warn(f"compiled kernel not built, using pure Python: {exc}")


def _extensions():
    try:
        import gmpy2
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "bielliptic._kernels._ckernel",
        ["src/bielliptic/_kernels/_ckernel.pyx"],
        include_dirs=[os.path.dirname(gmpy2.__file__)],
        libraries=["gmp"],
    )
    return cythonize([ext], language_level=3, quiet=True)


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
