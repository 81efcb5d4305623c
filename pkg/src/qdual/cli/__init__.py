"""Command-line interface."""

from .main import dispatch, main
from .parse import parse_expression, parse_scalar

__all__ = ["dispatch", "main", "parse_expression", "parse_scalar"]
