# grossparse.py
"""Text format for gross-numbers: tokenizer, recursive-descent parser and printer.

Grammar (loosest binding first):

    expression := term (("+" | "-") term)*
    term       := unary (("*" | "/") unary)*
    unary      := "-" unary | power
    power      := atom ("^" unary)?
    atom       := NUMBER | "G" | "①" | "(" expression ")"

So "^" binds tighter than unary minus and is right-associative. The
grammar is documented for users in FORMAT.md.
"""
import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from errors import GrossSyntaxError
from grosscore import (
    DEFAULT_MAX_DIV_TERMS,
    GROSSONE,
    GrossNumber,
    add,
    div,
    mul,
    negate,
    power,
    sub,
)

logger = logging.getLogger("grossparse")

GROSSONE_SYMBOL = "①"
# Nesting levels (parentheses, unary minus, exponent chains) the parser accepts
MAX_NESTING = 100


class TokenKind(Enum):
    NUMBER = "Number"
    GROSSONE = "Grossone"
    PLUS = "Plus"
    MINUS = "Minus"
    STAR = "Star"
    SLASH = "Slash"
    CARET = "Caret"
    LPAREN = "LParen"
    RPAREN = "RParen"
    END = "End"


_OPERATORS = {
    "+": TokenKind.PLUS,
    "-": TokenKind.MINUS,
    "−": TokenKind.MINUS,
    "*": TokenKind.STAR,
    "×": TokenKind.STAR,
    "/": TokenKind.SLASH,
    "÷": TokenKind.SLASH,
    "^": TokenKind.CARET,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
}

_TOKEN_PATTERN = re.compile(r"""
    (?P<space>\s+)
  | (?P<number>[0-9]+(?:\.[0-9]+)?)
  | (?P<grossone>[G①])
  | (?P<operator>[-−+*×/÷^()])
""", re.VERBOSE)

_ATOM_START = (TokenKind.NUMBER, TokenKind.GROSSONE, TokenKind.MINUS, TokenKind.LPAREN)
_AFTER_OPERAND = (
    TokenKind.PLUS, TokenKind.MINUS, TokenKind.STAR,
    TokenKind.SLASH, TokenKind.CARET, TokenKind.END,
)


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    position: int


def tokenize(text: str) -> list:
    """Split text into tokens, ending with an End token"""
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN_PATTERN.match(text, position)
        if match is None:
            raise GrossSyntaxError(
                f"unexpected character {text[position]!r}",
                position,
                [kind.value for kind in TokenKind if kind is not TokenKind.END],
            )
        group = match.lastgroup
        lexeme = match.group()
        if group == "number":
            tokens.append(Token(TokenKind.NUMBER, lexeme, position))
        elif group == "grossone":
            tokens.append(Token(TokenKind.GROSSONE, lexeme, position))
        elif group == "operator":
            tokens.append(Token(_OPERATORS[lexeme], lexeme, position))
        position = match.end()
    tokens.append(Token(TokenKind.END, "", len(text)))
    return tokens


# Syntax tree nodes
@dataclass(frozen=True)
class Literal:
    value: Fraction
    position: int = 0

    def children(self) -> tuple:
        return ()


@dataclass(frozen=True)
class GrossoneSymbol:
    position: int = 0

    def children(self) -> tuple:
        return ()


@dataclass(frozen=True)
class Negate:
    operand: "SourceExpr"
    position: int = 0

    def children(self) -> tuple:
        return (self.operand,)


@dataclass(frozen=True)
class BinaryOp:
    # one of + - * / ^
    op: str
    left: "SourceExpr"
    right: "SourceExpr"
    position: int = 0

    def children(self) -> tuple:
        return (self.left, self.right)


SourceExpr = Union[Literal, GrossoneSymbol, Negate, BinaryOp]

_BINARY_SYMBOLS = {
    TokenKind.PLUS: "+",
    TokenKind.MINUS: "-",
    TokenKind.STAR: "*",
    TokenKind.SLASH: "/",
    TokenKind.CARET: "^",
}


def _describe(token: Token) -> str:
    if token.kind is TokenKind.END:
        return "end of input"
    return repr(token.lexeme)


class Parser:
    """Recursive-descent parser over a token list"""
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0
        self.depth = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        if token.kind is not TokenKind.END:
            self.index += 1
        return token

    def fail(self, expected) -> GrossSyntaxError:
        token = self.current
        return GrossSyntaxError(
            f"unexpected {_describe(token)}",
            token.position,
            [kind.value for kind in expected],
        )

    def parse(self) -> SourceExpr:
        node = self.expression()
        if self.current.kind is not TokenKind.END:
            raise self.fail(_AFTER_OPERAND)
        return node

    def expression(self) -> SourceExpr:
        node = self.term()
        while self.current.kind in (TokenKind.PLUS, TokenKind.MINUS):
            operator = self.advance()
            node = BinaryOp(_BINARY_SYMBOLS[operator.kind], node, self.term(), operator.position)
        return node

    def term(self) -> SourceExpr:
        node = self.unary()
        while self.current.kind in (TokenKind.STAR, TokenKind.SLASH):
            operator = self.advance()
            node = BinaryOp(_BINARY_SYMBOLS[operator.kind], node, self.unary(), operator.position)
        return node

    def unary(self) -> SourceExpr:
        self.depth += 1
        try:
            if self.depth > MAX_NESTING:
                raise GrossSyntaxError("expression nested too deeply", self.current.position)
            if self.current.kind is TokenKind.MINUS:
                operator = self.advance()
                return Negate(self.unary(), operator.position)
            return self.power()
        finally:
            self.depth -= 1

    def power(self) -> SourceExpr:
        base = self.atom()
        if self.current.kind is TokenKind.CARET:
            operator = self.advance()
            # right-associative: the exponent is a full unary operand
            return BinaryOp("^", base, self.unary(), operator.position)
        return base

    def atom(self) -> SourceExpr:
        token = self.current
        if token.kind is TokenKind.NUMBER:
            self.advance()
            try:
                value = Fraction(token.lexeme)
            except ValueError as e:
                raise GrossSyntaxError(f"unreadable number: {e}", token.position) from e
            return Literal(value, token.position)
        if token.kind is TokenKind.GROSSONE:
            self.advance()
            return GrossoneSymbol(token.position)
        if token.kind is TokenKind.LPAREN:
            self.advance()
            node = self.expression()
            if self.current.kind is not TokenKind.RPAREN:
                raise self.fail((TokenKind.PLUS, TokenKind.MINUS, TokenKind.STAR,
                                 TokenKind.SLASH, TokenKind.CARET, TokenKind.RPAREN))
            self.advance()
            return node
        raise self.fail(_ATOM_START)


def parse(text: str) -> SourceExpr:
    """Parse text into a syntax tree, raising GrossSyntaxError on malformed input"""
    return Parser(text).parse()


def _apply(op: str, left: GrossNumber, right: GrossNumber, max_terms: int) -> GrossNumber:
    if op == "+":
        return add(left, right)
    if op == "-":
        return sub(left, right)
    if op == "*":
        return mul(left, right)
    if op == "/":
        return div(left, right, max_terms)
    if op == "^":
        return power(left, right, max_terms)
    raise ValueError(f"unknown operator {op!r}")


def evaluate(expr: SourceExpr, max_terms: int = DEFAULT_MAX_DIV_TERMS) -> GrossNumber:
    """Evaluate a syntax tree bottom-up.

    Uses an explicit stack, so long left-associated chains such as
    1+1+...+1 do not hit the interpreter recursion limit.
    """
    stack = [(expr, False)]
    values = []
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Literal):
            values.append(GrossNumber.of(node.value))
        elif isinstance(node, GrossoneSymbol):
            values.append(GROSSONE)
        elif not expanded:
            stack.append((node, True))
            for child in reversed(node.children()):
                stack.append((child, False))
        elif isinstance(node, Negate):
            values.append(negate(values.pop()))
        else:
            right = values.pop()
            left = values.pop()
            values.append(_apply(node.op, left, right, max_terms))
    return values.pop()


def evaluate_text(text: str, max_terms: int = DEFAULT_MAX_DIV_TERMS) -> GrossNumber:
    logger.debug("evaluating %r", text)
    return evaluate(parse(text), max_terms)


def _term_body(magnitude: Fraction, exponent: Fraction, symbol: str) -> str:
    if exponent == 0:
        return str(magnitude)
    if exponent == 1:
        body = symbol
    elif exponent.denominator == 1 and exponent > 0:
        body = f"{symbol}^{exponent.numerator}"
    else:
        body = f"{symbol}^({exponent})"
    if magnitude == 1:
        return body
    return f"{magnitude}*{body}"


def to_text(x, unicode: bool = False) -> str:
    """Canonical text of a gross-number, e.g. "3*G^2 - G + 1"."""
    x = GrossNumber.of(x)
    if not x:
        return "0"
    symbol = GROSSONE_SYMBOL if unicode else "G"
    pieces = []
    for index, term in enumerate(x.terms):
        negative = term.coefficient < 0
        body = _term_body(abs(term.coefficient), term.exponent, symbol)
        if index == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)
