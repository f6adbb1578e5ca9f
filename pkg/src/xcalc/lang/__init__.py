"""Textual front-end: lexer, parser with desugaring, printer and checks."""
from .checks import Diagnostic, SourceProgram, check_program, free_vars, load_program
from .lexer import Token, XCSyntaxError, tokenize
from .parser import parse, parse_text, parse_with_spans
from .printer import print_expr

__all__ = [
    "Diagnostic", "SourceProgram", "check_program", "free_vars", "load_program",
    "Token", "XCSyntaxError", "tokenize", "parse", "parse_text", "parse_with_spans",
    "print_expr",
]
