"""Build script: compiles the optional Cython tally kernel.

The extension is a pure speedup; the package works without it (the
pure-Python kernel in groupoidlab._kernel_py is selected at import when
the compiled module is absent).  Build failures are therefore tolerated.
"""

from setuptools import setup

ext_modules = []
cmdclass = {}
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/groupoidlab/_kernel_c.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules, cmdclass=cmdclass)
