"""Build script: compiles the optional scanner extension.

Set GITRANK_NO_EXT=1 to skip the compiled kernel; the package then runs on
the pure-Python scanner selected at import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("GITRANK_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("gitrank.lexer._scanner", ["src/gitrank/lexer/_scanner.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
