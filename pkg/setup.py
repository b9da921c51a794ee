from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the kernel selector falls back
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("bsarr._rref_c", ["src/bsarr/_rref_c.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
