import re
from dataclasses import dataclass
from typing import List

from app.exceptions import FormulaParseError


class TOKEN:
    NUMBER = 'NUMBER'
    STRING = 'STRING'
    REF = 'REF'
    IDENT = 'IDENT'
    OP = 'OP'
    LPAREN = '('
    RPAREN = ')'
    COMMA = ','
    COLON = ':'
    END = 'END'


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


_TOKEN_PATTERNS = [
    (TOKEN.NUMBER, re.compile(r'(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?')),
    (TOKEN.STRING, re.compile(r'"(?:[^"]|"")*"')),
    (TOKEN.REF, re.compile(r'\$?[A-Za-z]+\$?[0-9]+(?![A-Za-z0-9_.(])')),
    (TOKEN.IDENT, re.compile(r'[A-Za-z_][A-Za-z0-9_.]*')),
    (TOKEN.OP, re.compile(r'<>|>=|<=|[-+*/=<>]')),
    (TOKEN.LPAREN, re.compile(r'\(')),
    (TOKEN.RPAREN, re.compile(r'\)')),
    (TOKEN.COMMA, re.compile(r',')),
    (TOKEN.COLON, re.compile(r':')),
]
_WHITESPACE = re.compile(r'\s+')


def tokenize(text: str, start: int = 0) -> List[Token]:
    tokens = []
    position = start
    while position < len(text):
        whitespace = _WHITESPACE.match(text, position)
        if whitespace:
            position = whitespace.end()
            continue
        for kind, pattern in _TOKEN_PATTERNS:
            match = pattern.match(text, position)
            if match:
                tokens.append(Token(kind, match.group(0), position))
                position = match.end()
                break
        else:
            raise FormulaParseError(f'Unexpected character {text[position]!r} at position {position}.', position)
    tokens.append(Token(TOKEN.END, '', len(text)))
    return tokens
