import os
from pathlib import Path

__folder = Path(__file__).parent


def checkpoints_path() -> Path:
    return __folder.parent / "checkpoints"


def figures_path() -> Path:
    return __folder.parent / "figures"


def on_ci() -> bool:
    """
    Experiments run at reduced size on a CI server.
    """
    return bool(os.getenv("CI"))
