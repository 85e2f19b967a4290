import os
import re

import setuptools
from scripts.get_package_version import get_package_version

VERSIONFILE = "qroof/__init__.py"


def update_version_file(version: str):
    with open(VERSIONFILE, "rt") as f:
        raw_content = f.read()

    content = re.sub(r"__version__ = [\"'][^']*[\"']", f'__version__ = "{version}"', raw_content)
    with open(VERSIONFILE, "wt") as f:
        f.write(content)

    def revert():
        with open(VERSIONFILE, "wt") as f:
            f.write(raw_content)

    return revert


def read_requirements(path: str):
    packages = []
    with open(path, "r") as f:
        for line in f:
            package = line.strip()
            if not package or package.startswith("#"):
                continue
            packages.append(package)
    return packages


version_str = get_package_version()
revert_version_file = update_version_file(version_str)

with open("README.md", "r", encoding="utf-8", errors="ignore") as fh:
    long_description = fh.read()

cur_dir = os.path.dirname(os.path.abspath(__file__))
required_packages = [p for p in read_requirements(os.path.join(cur_dir, "requirements.txt")) if not p.startswith("pytest")]

try:
    setuptools.setup(
        install_requires=required_packages,
        extras_require={"test": ["pytest>=7.0.0"]},
        python_requires=">=3.10",
        name="qroof",
        version=version_str,
        author="qroof developers",
        author_email="qroof@users.noreply.github.com",
        description="Convex roofs, entanglement entropy and HSW capacity of positive qubit maps",
        long_description=long_description,
        long_description_content_type="text/markdown",
        packages=setuptools.find_packages(exclude=["tests", "tests.*", "scripts"]),
        classifiers=[
            "Programming Language :: Python :: 3",
            "Operating System :: OS Independent",
            "Topic :: Scientific/Engineering :: Physics",
        ],
        entry_points={
            "console_scripts": ["qroof=qroof.__main__:main"],
        },
    )
finally:
    revert_version_file()
