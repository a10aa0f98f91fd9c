import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp) / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        out_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent

        cfg_args = [
            f"-DCMAKE_BUILD_TYPE={os.environ.get('CMAKE_BUILD_TYPE', 'Release')}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DSKBUILD=ON",  # library + bindings only, no tests/tools
        ]
        subprocess.run(["cmake", "-S", str(source_dir), "-B", str(build_dir), *cfg_args],
                       check=True)
        subprocess.run(["cmake", "--build", str(build_dir), "--target", "_core",
                        "--parallel", str(os.cpu_count() or 1)], check=True)

        out_dir.mkdir(parents=True, exist_ok=True)
        built = list((build_dir / "python").glob("_core*.so"))
        if not built:
            raise RuntimeError("CMake build did not produce the _core module")
        self.copy_file(str(built[0]), str(out_dir / built[0].name))


setup(
    ext_modules=[CMakeExtension("roughvol._core")],
    cmdclass={"build_ext": CMakeBuild},
)
