"""Builds the optional compiled counter kernel; the package works without it."""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/whatif/_counter_cy.pyx"], language_level=3, quiet=True
    )
except ImportError:
    pass  # pure-Python fallback is selected at import time

setup(ext_modules=ext_modules)
