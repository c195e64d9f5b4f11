"""Exact S-equivalence toolkit for Seifert matrices."""
from __future__ import annotations

from .errors import SeifertError

__all__ = ["SeifertError", "__version__"]

__version__ = "0.1.0"
