from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "aqrm._kernels._cykernels",
        ["src/aqrm/_kernels/_cykernels.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
