import json
from pathlib import Path
from typing import NamedTuple, Optional

CONFIG_FILE_NAME = "qroof_config.json"


class ProjectDir(NamedTuple):
    path: str
    is_valid: bool
    is_empty: bool

    @property
    def config_file(self) -> Optional[str]:
        return str(Path(self.path) / CONFIG_FILE_NAME) if self.is_valid else None


def _has_valid_config(folder: Path) -> bool:
    config_path = folder / CONFIG_FILE_NAME
    if not config_path.is_file():
        return False
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            # a project config must be a JSON object (key-value pairs)
            return isinstance(json.load(f), dict)
    except (json.JSONDecodeError, OSError):
        return False


def _is_empty(folder: Path) -> bool:
    return not folder.exists() or (folder.is_dir() and not any(folder.iterdir()))


def discover_app_dir(app_dir: Optional[str] = None) -> ProjectDir:
    """
    Locate the qroof project directory.

    With an explicit `app_dir` only that folder is inspected. Otherwise the working directory
    and its parents are searched for a `qroof_config.json`; the working directory is returned
    (marked invalid) when none is found. A missing project is not an error: every setting has
    a default.
    """
    if app_dir is not None:
        folder = Path(app_dir).resolve()
        return ProjectDir(str(folder), folder.is_dir() and _has_valid_config(folder), _is_empty(folder))

    cwd = Path(".").resolve()
    for folder in (cwd, *cwd.parents):
        if _has_valid_config(folder):
            return ProjectDir(str(folder), True, False)
    return ProjectDir(str(cwd), False, _is_empty(cwd))
