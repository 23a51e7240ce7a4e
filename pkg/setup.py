"""Build script for the optional compiled kernels.

The Cython extension is best-effort: if Cython or a C compiler is missing,
the package installs without it and ``wsnu.kernels`` falls back to the
pure-Python implementation.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernels not built ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc}); using pure-Python fallback")


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    ext = Extension(
        "wsnu._kernels",
        ["src/wsnu/_kernels.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize(
        [ext],
        compiler_directives=dict(
            language_level="3",
            boundscheck=False,
            wraparound=False,
            cdivision=True,
        ),
    )


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
