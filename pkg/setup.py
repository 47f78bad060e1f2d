from setuptools import setup

# The compiled elimination kernel is optional: without Cython (or a C
# compiler) the package falls back to the pure-Python kernel at import.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/treealg/_gauss_c.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
