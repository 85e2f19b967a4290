import datetime
import json
import os
from typing import Dict, Optional

VERSION_FILE = os.path.join(os.path.dirname(__file__), "..", "version.json")


def _read_version_spec() -> Dict[str, str]:
    with open(VERSION_FILE, "r") as f:
        return json.load(f)


def get_package_version(branch: Optional[str] = None, build: Optional[str] = None) -> str:
    """
    Release builds get the plain `prod` version, `main` builds append the `main` suffix and
    every other build appends `dev` plus a local build tag.
    """
    spec = _read_version_spec()
    branch = branch if branch is not None else os.environ.get("QROOF_BUILD_BRANCH")
    build = build if build is not None else os.environ.get("QROOF_BUILD_NUMBER")

    version = spec["prod"]
    if branch == "release":
        return version
    version += spec.get("main") or ""
    if branch == "main":
        return version
    version += spec.get("dev") or ""
    tag = build if build is not None else "local." + datetime.datetime.now().strftime("%Y%m%d%H%M%S")
    return f"{version}+{tag}"


if __name__ == "__main__":
    print(get_package_version())
