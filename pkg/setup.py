"""Build hook for the optional compiled kernels.

Metadata lives in pyproject.toml.  When Cython or a C compiler is missing the
package still installs and falls back to the numpy kernels.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "hardyshell._kernels._ckernels",
                ["src/hardyshell/_kernels/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3", "-fcx-limited-range", "-fno-math-errno"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
