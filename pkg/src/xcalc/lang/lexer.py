from __future__ import annotations

import re
from dataclasses import dataclass

KEYWORDS = frozenset(
    {"fun", "val", "def", "if", "else", "true", "false", "inf", "unit", "and", "or", "not"}
)

PUNCT = ("=>", "->", "<=", ">=", "==", "!=", "(", ")", "{", "}", "[", "]", ",", ";",
         "=", "+", "-", "*", "/", "%", "<", ">", "↦")


@dataclass(frozen=True)
class Token:
    kind: str  # ident | int | real | string | keyword | punct
    lexeme: str
    line: int
    col: int

    @property
    def span(self) -> tuple[int, int]:
        return (self.line, self.col)


class XCSyntaxError(Exception):
    def __init__(self, message: str, line: int, col: int, expected: tuple = ()):
        self.line = line
        self.col = col
        self.expected = expected
        self.message = message
        super().__init__(f"{line}:{col}: {message}")


_NUMBER = re.compile(r"\d+(\.\d+)?([eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == '"':
            j = i + 1
            buf = []
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    break
                if text[j] == "\\" and j + 1 < n:
                    buf.append(text[j + 1])
                    j += 2
                    continue
                buf.append(text[j])
                j += 1
            if j >= n or text[j] != '"':
                raise XCSyntaxError("unterminated string", line, col)
            tokens.append(Token("string", "".join(buf), line, col))
            col += j + 1 - i
            i = j + 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            lex = m.group(0)
            kind = "real" if (m.group(1) or m.group(2)) else "int"
            tokens.append(Token(kind, lex, line, col))
            i, col = m.end(), col + len(lex)
            continue
        m = _IDENT.match(text, i)
        if m:
            lex = m.group(0)
            tokens.append(Token("keyword" if lex in KEYWORDS else "ident", lex, line, col))
            i, col = m.end(), col + len(lex)
            continue
        for p in PUNCT:
            if text.startswith(p, i):
                lex = "->" if p == "↦" else p
                tokens.append(Token("punct", lex, line, col))
                i += len(p)
                col += len(p)
                break
        else:
            raise XCSyntaxError(f"invalid character {c!r}", line, col)
    return tokens
