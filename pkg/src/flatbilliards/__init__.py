"""Exact translation surfaces from rational billiard polygons."""

from ._kernel import KERNEL

__all__ = ["KERNEL"]
__version__ = "0.1.0"
