from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/pmnharvest/_editdist.pyx", language_level="3"
    )
except ImportError:
    # No Cython: install pure-Python only, the package falls back at import.
    pass

setup(ext_modules=ext_modules)
