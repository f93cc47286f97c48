"""Build script: compiles the optional scanner accelerator.

The compiled kernel is a pure speed-up; if Cython or a C compiler is
unavailable the package installs with the Python fallback only.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that degrades to the pure-Python scanner on failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or broken
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: building the compiled scanner failed ({exc}); "
            "falling back to the pure-Python scanner",
            file=sys.stderr,
        )


ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("mutdense._scan_cy", ["src/mutdense/_scan_cy.pyx"])],
        language_level=3,
    )
except ImportError:
    print("WARNING: Cython not available; installing without the compiled scanner", file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
