"""Build script: compiles the optional C kernel extension.

The extension is a plain C module (buffer protocol only, no numpy headers),
so the only build requirements are setuptools and a C compiler.  If no
compiler is available the install proceeds without it and the package falls
back to the numpy implementations in largesieve._kernels_py.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that degrades to the pure-Python package on compile failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"WARNING: building largesieve._kernels failed ({exc}); "
              "the pure-Python kernels will be used instead.")


setup(
    ext_modules=[
        Extension(
            "largesieve._kernels",
            sources=["src/largesieve/_kernelsmodule.c"],
            extra_compile_args=["-O3"],
        )
    ],
    cmdclass={"build_ext": optional_build_ext},
)
