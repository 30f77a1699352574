"""Text front end for polynomial functions and schema families."""
from .parser import FunctionSpec, ParseError, parse_function

__all__ = ["FunctionSpec", "ParseError", "parse_function"]
