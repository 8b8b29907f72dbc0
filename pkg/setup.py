"""Build script for the optional compiled overlap kernel.

The package works without the extension (a pure-Python twin is selected at
import time), so a missing Cython toolchain or a failed compile must not
break installation. Set LEMCOREF_SKIP_EXT=1 to skip the build explicitly.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"lemcoref: skipping compiled kernel ({exc}); "
                  "pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"lemcoref: failed to build {ext.name} ({exc}); "
                  "pure-Python fallback will be used")


def extensions():
    if os.environ.get("LEMCOREF_SKIP_EXT") == "1":
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("lemcoref._kernels", ["src/lemcoref/_kernels.pyx"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
