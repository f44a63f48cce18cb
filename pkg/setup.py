from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    # optional=True: the package falls back to the pure-Python kernels when
    # the extension cannot be built.
    ext_modules = cythonize(
        [Extension("char2uni._core", ["src/char2uni/_core.pyx"], optional=True)],
        language_level=3,
    )

setup(ext_modules=ext_modules)
