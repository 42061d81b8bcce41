from .grammar import parse
from .lexer import Token, TokenKind, tokenize
from .printer import format_number, print_expression

__all__ = ["parse", "Token", "TokenKind", "tokenize", "format_number", "print_expression"]
