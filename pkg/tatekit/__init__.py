"""Exact Tate (co)homology, linkage and duality checks over finite local Gorenstein algebras."""

from .version import get_version

__all__ = ["__version__"]

__version__ = get_version()
