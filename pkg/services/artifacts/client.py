import os
from pathlib import Path
from typing import Optional

DEFAULT_OUT_DIR = "out"


class OutputDirectory:
    _instance: Optional[Path] = None

    @classmethod
    def get_path(cls) -> Path:
        if cls._instance is None:
            cls._instance = Path(os.environ.get("DOF_OUT_DIR") or DEFAULT_OUT_DIR)
        return cls._instance

    @classmethod
    def reset(cls) -> None:
        cls._instance = None


def get_out_dir(override: Optional[str] = None) -> Path:
    """Explicit directory if given, else DOF_OUT_DIR, else ./out."""
    if override:
        return Path(override)
    return OutputDirectory.get_path()
