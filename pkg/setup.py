"""Builds the optional compiled wire kernel.

The package works without it (pure-Python fallback is selected at import),
so a missing compiler or Cython only costs decode throughput.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("chinpoint._wire_cy", ["src/chinpoint/_wire_cy.pyx"])],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
