"""Build hook: compiles the optional mod-p elimination kernel.

The package is fully functional without the extension; `wallcoh.linalg`
falls back to a numpy implementation when the import fails.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Never fail the install because the C toolchain is missing."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"wallcoh: skipping compiled kernel ({exc!r}); "
                  "using numpy fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"wallcoh: skipping {ext.name} ({exc!r}); "
                  "using numpy fallback")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover
        return []
    import numpy
    return cythonize(
        [
            Extension(
                "wallcoh._speedups",
                ["src/wallcoh/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
