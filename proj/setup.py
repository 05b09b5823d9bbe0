from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

sources = [
    "python/bindings.cpp",
    "src/rational.cpp",
    "src/core.cpp",
    "src/spectrum.cpp",
    "src/barcodes.cpp",
    "src/homotopy.cpp",
    "src/tracker.cpp",
    "src/embedding.cpp",
    "src/json_io.cpp",
]

setup(
    ext_modules=[
        Pybind11Extension(
            "plbars._plbars",
            sources,
            include_dirs=["include", "vendor"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
