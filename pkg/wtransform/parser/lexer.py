import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from ..exceptions import ParseError, SourceSpan


class TokenKind(str, Enum):
    NUMBER = "number"
    VAR = "variable"
    NAME = "name"
    PLUS = "'+'"
    MINUS = "'-'"
    STAR = "'*'"
    CARET = "'^'"
    LPAREN = "'('"
    RPAREN = "')'"
    LBRACKET = "'['"
    RBRACKET = "']'"
    COMMA = "','"
    EQUALS = "'='"
    SEMICOLON = "';'"
    END = "end of input"


_PUNCTUATION = {
    "+": TokenKind.PLUS,
    "-": TokenKind.MINUS,
    "*": TokenKind.STAR,
    "^": TokenKind.CARET,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    "[": TokenKind.LBRACKET,
    "]": TokenKind.RBRACKET,
    ",": TokenKind.COMMA,
    "=": TokenKind.EQUALS,
    ";": TokenKind.SEMICOLON,
}

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
    | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
    | (?P<punct>[-+*^()\[\],=;])
    """,
    re.VERBOSE | re.ASCII,
)
_VAR_RE = re.compile(r"x(\d+)", re.ASCII)


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan
    number: Optional[float] = None
    index: Optional[int] = None

    @property
    def is_integer(self) -> bool:
        return self.kind is TokenKind.NUMBER and self.text.isdigit()


def tokenize(src: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        match = _TOKEN_RE.match(src, pos)
        if match is None:
            raise ParseError(
                f"unexpected character {src[pos]!r}", SourceSpan(pos, pos + 1), ["number", "variable", "operator"]
            )
        span = SourceSpan(pos, match.end())
        text = match.group()
        pos = match.end()
        if match.lastgroup == "ws":
            continue
        if match.lastgroup == "number":
            value = float(text)
            if not math.isfinite(value):
                raise ParseError(f"number {text} is out of range", span, ["finite number"])
            tokens.append(Token(TokenKind.NUMBER, text, span, number=value))
        elif match.lastgroup == "name":
            var = _VAR_RE.fullmatch(text)
            if var is None:
                tokens.append(Token(TokenKind.NAME, text, span))
                continue
            digits = var.group(1)
            if len(digits) > 9:
                raise ParseError(f"variable {text} is out of range", span, ["x1, x2, ..."])
            index = int(digits)
            if index < 1:
                raise ParseError("variables are numbered from x1", span, ["x1, x2, ..."])
            tokens.append(Token(TokenKind.VAR, text, span, index=index))
        else:
            tokens.append(Token(_PUNCTUATION[text], text, span))
    tokens.append(Token(TokenKind.END, "", SourceSpan(len(src), len(src))))
    return tokens
