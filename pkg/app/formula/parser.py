"""Recursive-descent parser for the spreadsheet formula subset.

    formula := "=" expr
    expr    := add (cmpOp add)*
    add     := mul (("+" | "-") mul)*
    mul     := unary (("*" | "/") unary)*
    unary   := "-"? primary
    primary := number | string | TRUE | FALSE | ref | ref ":" ref
             | IDENT "(" [expr ("," expr)*] ")" | "(" expr ")"
"""
from app.exceptions import FormulaParseError, MalformedAddress
from app.formula.lexer import TOKEN, Token, tokenize
from app.models.formula import (COMPARISON_OPS, NEG, Binary, BoolLit, Call, CellRef, FormulaAst, NumberLit,
                                RangeRef, TextLit, Unary)
from app.utils.constants import ERROR_MESSAGE
from app.utils.grid_util import parse_address

MAX_DEPTH = 64


class Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.index = 0
        self.depth = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def check(self, kind, *texts) -> bool:
        token = self.current
        return token.kind == kind and (not texts or token.text in texts)

    def expect(self, kind, description) -> Token:
        if not self.check(kind):
            self.fail(f'Expected {description}')
        return self.advance()

    def fail(self, message):
        token = self.current
        found = 'end of formula' if token.kind == TOKEN.END else repr(token.text)
        raise FormulaParseError(f'{message} at position {token.position}, found {found}.', token.position)

    def parse(self) -> FormulaAst:
        node = self.expression()
        if not self.check(TOKEN.END):
            self.fail('Unexpected token')
        return node

    def expression(self) -> FormulaAst:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            self.fail('Formula nested too deeply')
        node = self.additive()
        while self.check(TOKEN.OP, *COMPARISON_OPS):
            op = self.advance().text
            node = Binary(op, node, self.additive())
        self.depth -= 1
        return node

    def additive(self) -> FormulaAst:
        node = self.multiplicative()
        while self.check(TOKEN.OP, '+', '-'):
            op = self.advance().text
            node = Binary(op, node, self.multiplicative())
        return node

    def multiplicative(self) -> FormulaAst:
        node = self.unary()
        while self.check(TOKEN.OP, '*', '/'):
            op = self.advance().text
            node = Binary(op, node, self.unary())
        return node

    def unary(self) -> FormulaAst:
        if self.check(TOKEN.OP, '-'):
            self.advance()
            return Unary(NEG, self.primary())
        return self.primary()

    def primary(self) -> FormulaAst:
        token = self.current
        if token.kind == TOKEN.NUMBER:
            self.advance()
            return NumberLit(float(token.text))
        if token.kind == TOKEN.STRING:
            self.advance()
            return TextLit(token.text[1:-1].replace('""', '"'))
        if token.kind == TOKEN.REF:
            return self.reference()
        if token.kind == TOKEN.IDENT:
            return self.call_or_literal()
        if token.kind == TOKEN.LPAREN:
            self.advance()
            node = self.expression()
            self.expect(TOKEN.RPAREN, '")"')
            return node
        self.fail('Expected a value')

    def address(self):
        token = self.advance()
        try:
            return parse_address(token.text)
        except MalformedAddress as e:
            raise FormulaParseError(f'{e.message} (position {token.position})', token.position)

    def reference(self) -> FormulaAst:
        first = self.address()
        if not self.check(TOKEN.COLON):
            return CellRef(first)
        self.advance()
        if not self.check(TOKEN.REF):
            self.fail('Expected a cell reference after ":"')
        return RangeRef.between(first, self.address())

    def call_or_literal(self) -> FormulaAst:
        token = self.advance()
        name = token.text.upper()
        if not self.check(TOKEN.LPAREN):
            if name in ('TRUE', 'FALSE'):
                return BoolLit(name == 'TRUE')
            raise FormulaParseError(f'Unknown name {token.text!r} at position {token.position}.', token.position)
        self.advance()
        args = []
        if not self.check(TOKEN.RPAREN):
            args.append(self.expression())
            while self.check(TOKEN.COMMA):
                self.advance()
                args.append(self.expression())
        self.expect(TOKEN.RPAREN, '")" or ","')
        return Call(name, tuple(args))


def parse_formula(text: str) -> FormulaAst:
    stripped = text.lstrip()
    if not stripped.startswith('='):
        raise FormulaParseError(ERROR_MESSAGE.NOT_A_FORMULA, 0)
    offset = len(text) - len(stripped) + 1
    return Parser(tokenize(text, offset)).parse()
