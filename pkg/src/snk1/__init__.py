"""Exact arithmetic in the algebra S_n of one-sided inverses and its K_1 group."""

from .core_algebra import SnElement, idempotent, matrix_unit, to_split, from_split
from .parser import parse_element, format_element

__all__ = [
    "SnElement",
    "idempotent",
    "matrix_unit",
    "to_split",
    "from_split",
    "parse_element",
    "format_element",
]
