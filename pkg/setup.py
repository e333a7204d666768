import numpy
from setuptools import Extension, setup

from Cython.Build import cythonize

extensions = [
    Extension(
        "nearrings._fastsweeps",
        ["src/nearrings/_fastsweeps.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
)
