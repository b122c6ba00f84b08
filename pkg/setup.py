from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the search kernel falls back at import time
    ext_modules = []
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("curvedop.search._kernel", ["src/curvedop/search/_kernel.pyx"], optional=True)],
        language_level=3,
    )

setup(ext_modules=ext_modules)
