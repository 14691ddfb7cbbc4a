"""Exact computations for grade-three perfect ideals whose Betti numbers come from Dynkin diagrams."""
from .errors import BudgetExhausted, DynresError, MathematicalRejection
from .lie_core import Format, TShape, classify_type, format_to_shape, is_dynkin_format

__all__ = ["BudgetExhausted", "DynresError", "Format", "MathematicalRejection", "TShape",
           "classify_type", "format_to_shape", "is_dynkin_format"]
__version__ = "0.1.0"
