"""Two-dimensional associative and Frobenius algebras over small exact fields."""

from .fields import QQ, FieldElement, FiniteField, get_field, parse_element
from .core import Matrix2, StructureMatrix, parse_matrix, parse_msc

__version__ = "0.1.0"

__all__ = ["QQ", "FieldElement", "FiniteField", "get_field", "parse_element",
           "Matrix2", "StructureMatrix", "parse_matrix", "parse_msc"]
