"""Build script for the compiled scan kernels.

The package works without the extension (a pure-numpy fallback is selected at
import time), so a failed compile only costs speed.  Build in place with:

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Skip the extension instead of failing the whole install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print("WARNING: compiled scan kernels skipped (%s); "
                  "falling back to the pure-numpy path" % exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print("WARNING: could not build %s (%s)" % (ext.name, exc))


def extensions():
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "hausquot._scan_cy",
        ["src/hausquot/_scan_cy.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
