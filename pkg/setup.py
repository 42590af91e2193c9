from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "eulerlab._ckernels",
        ["src/eulerlab/_ckernels.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
