"""Build script for the optional compiled accumulation kernel.

The package is fully functional without the extension: cvmb._kernels falls
back to the NumPy implementation when the compiled module is absent.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible, fall back to pure Python otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            print(f"warning: skipping compiled kernel build ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not compile {ext.name} ({exc}); "
                  "the NumPy fallback will be used")


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("cvmb._accumulators", ["src/cvmb/_accumulators.pyx"])],
        language_level="3",
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
