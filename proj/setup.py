"""CMake-driven extension build for the drod package.

`pip install --no-build-isolation .` (or `-e .`) configures the CMake project
with DROD_PYTHON_WHEEL=ON, builds only the pybind11 module, and drops it into
the package.
"""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        source_dir = Path(__file__).parent.resolve()
        build_dir = Path(self.build_temp).resolve() / ext.name
        build_dir.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DDROD_PYTHON_WHEEL=ON",
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "drod_py", "--parallel"],
            check=True,
        )

        built = sorted((build_dir / "bindings").glob("_core.*"))
        if not built:
            raise RuntimeError(f"no _core module produced under {build_dir / 'bindings'}")
        dest = Path(self.get_ext_fullpath(ext.name)).resolve()
        dest.parent.mkdir(parents=True, exist_ok=True)
        self.copy_file(str(built[0]), str(dest))


setup(
    ext_modules=[CMakeExtension("drod._core")],
    cmdclass={"build_ext": CMakeBuild},
)
