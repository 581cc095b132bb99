from setuptools import Extension, setup

# The Cython kernel is optional: if it cannot be built, the pure-Python
# backend in cobarkit.intlinalg._snf_py is used instead (selected at import).
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "cobarkit.intlinalg._snf_cy",
                ["src/cobarkit/intlinalg/_snf_cy.pyx"],
            )
        ],
        language_level=3,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
