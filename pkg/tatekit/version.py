from __future__ import annotations

from importlib.metadata import PackageNotFoundError, version


def get_version() -> str:
    """Installed distribution version; "0.0.0" when running from an uninstalled checkout."""

    try:
        return version("tatekit")
    except PackageNotFoundError:
        return "0.0.0"
