import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "ecamine._kernels",
        ["src/ecamine/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        optional=True,  # the numpy fallback takes over if this fails
    )
]

setup(
    ext_modules=cythonize(
        extensions, compiler_directives={"language_level": "3"}
    )
    if cythonize
    else [],
)
