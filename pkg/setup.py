"""Build script: compiles the pattern canonical-form kernel when Cython is
available; otherwise the package installs with its pure-Python fallback."""

from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:  # Cython is optional at build time
    ext_modules = []
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("orthoslice.patterns._canon", ["src/orthoslice/patterns/_canon.pyx"])],
        compiler_directives={"language_level": 3},
        quiet=True,
    )

setup(ext_modules=ext_modules)
