"""Parsing and evaluation of two-variable surface equations.

Turns text like ``z = 3sin(x) + cos(y)`` into an immutable AST and a fast
evaluator. The grammar is documented in ``docs/grammar.md``: `^` binds
tightest (right-associative), then unary minus, then `*`/`/` and implicit
multiplication, then `+`/`-`. Evaluation is total: every domain error or
overflow yields ``None`` ("undefined") instead of raising, so partial
functions produce holes in the plotted surface rather than aborting.

All AST nodes are frozen dataclasses; everything here is pure and safe to
share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from functools import lru_cache
from typing import Callable, Optional, Union

FUNCTION_NAMES = (
    "sin", "cos", "tan", "asin", "acos", "atan",
    "exp", "ln", "log", "sqrt", "abs",
)
CONSTANT_VALUES = {"pi": math.pi, "e": math.e}
VARIABLE_NAMES = ("x", "y")


class ExpressionError(ValueError):
    """Common base for lexing and parsing failures.

    ``position`` is the byte offset into the source text; ``reason`` is a
    human-readable description.
    """

    def __init__(self, position: int, reason: str):
        super().__init__(f"{reason} at position {position}")
        self.position = position
        self.reason = reason


class LexError(ExpressionError):
    pass


class ParseError(ExpressionError):
    pass


# --------------------------------------------------------------------------
# Tokens

class TokenKind(Enum):
    NUMBER = "number"
    IDENT = "identifier"
    PLUS = "+"
    MINUS = "-"
    STAR = "*"
    SLASH = "/"
    CARET = "^"
    LPAREN = "("
    RPAREN = ")"
    COMMA = ","
    EQUALS = "="


_PUNCT = {
    "+": TokenKind.PLUS,
    "-": TokenKind.MINUS,
    "*": TokenKind.STAR,
    "/": TokenKind.SLASH,
    "^": TokenKind.CARET,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    ",": TokenKind.COMMA,
    "=": TokenKind.EQUALS,
}


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    position: int  # byte offset into the source


def _is_letter(ch: str) -> bool:
    return "a" <= ch <= "z" or "A" <= ch <= "Z"


def _is_digit(ch: str) -> bool:
    # strict ASCII: str.isdigit() would admit unicode digits
    return "0" <= ch <= "9"


def tokenize(source: str) -> list[Token]:
    """Split ``source`` into tokens, skipping whitespace.

    Numbers are ``digits [. digits]`` (no leading dot, no exponent);
    identifiers are maximal runs of ASCII letters. Raises LexError for any
    character outside the token alphabet.
    """
    tokens: list[Token] = []
    pos = 0  # byte offset
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            pos += len(ch.encode("utf-8"))
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, pos))
            pos += 1
            i += 1
            continue
        if _is_digit(ch):
            start_i, start_pos = i, pos
            while i < n and _is_digit(source[i]):
                i += 1
            if i + 1 < n and source[i] == "." and _is_digit(source[i + 1]):
                i += 1
                while i < n and _is_digit(source[i]):
                    i += 1
            lexeme = source[start_i:i]
            tokens.append(Token(TokenKind.NUMBER, lexeme, start_pos))
            pos = start_pos + len(lexeme)
            continue
        if _is_letter(ch):
            start_i, start_pos = i, pos
            while i < n and _is_letter(source[i]):
                i += 1
            lexeme = source[start_i:i]
            tokens.append(Token(TokenKind.IDENT, lexeme, start_pos))
            pos = start_pos + len(lexeme)
            continue
        raise LexError(pos, f"unexpected character {ch!r}")
    return tokens


# --------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Literal:
    value: float


@dataclass(frozen=True)
class Variable:
    name: str

    def __post_init__(self):
        if self.name not in VARIABLE_NAMES:
            raise ValueError(f"variable must be one of {VARIABLE_NAMES}, got {self.name!r}")


@dataclass(frozen=True)
class Constant:
    name: str

    def __post_init__(self):
        if self.name not in CONSTANT_VALUES:
            raise ValueError(f"unknown constant {self.name!r}")


@dataclass(frozen=True)
class Unary:
    op: str  # only "neg"
    child: "Expression"


@dataclass(frozen=True)
class Binary:
    op: str  # "add" | "sub" | "mul" | "div" | "pow"
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Call:
    function: str
    argument: "Expression"

    def __post_init__(self):
        if self.function not in FUNCTION_NAMES:
            raise ValueError(f"unknown function {self.function!r}")


Expression = Union[Literal, Variable, Constant, Unary, Binary, Call]


# --------------------------------------------------------------------------
# Parser (precedence climbing)

_PREC_ADD = 1
_PREC_MUL = 2
_PREC_NEG = 3
_PREC_POW = 4

_BINARY_OPS = {
    TokenKind.PLUS: ("add", _PREC_ADD, True),
    TokenKind.MINUS: ("sub", _PREC_ADD, True),
    TokenKind.STAR: ("mul", _PREC_MUL, True),
    TokenKind.SLASH: ("div", _PREC_MUL, True),
    TokenKind.CARET: ("pow", _PREC_POW, False),  # right-associative
}

# token kinds that trigger implicit multiplication when they follow a
# complete operand (number, `)`, variable or constant)
_JUXTAPOSE_NEXT = (TokenKind.IDENT, TokenKind.LPAREN, TokenKind.NUMBER)
_JUXTAPOSE_PREV = (TokenKind.NUMBER, TokenKind.RPAREN)


class _Parser:
    def __init__(self, tokens: list[Token], source_len: int):
        self.tokens = tokens
        self.pos = 0
        self.source_len = source_len

    def peek(self) -> Optional[Token]:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error_position(self) -> int:
        tok = self.peek()
        return tok.position if tok is not None else self.source_len

    def parse_input(self) -> Expression:
        # strip a leading `z =`
        if (
            len(self.tokens) >= 2
            and self.tokens[0].kind is TokenKind.IDENT
            and self.tokens[0].lexeme == "z"
            and self.tokens[1].kind is TokenKind.EQUALS
        ):
            self.pos = 2
        expr = self.parse_expression(_PREC_ADD)
        tok = self.peek()
        if tok is not None:
            raise ParseError(tok.position, f"unexpected {tok.lexeme!r}")
        return expr

    def parse_expression(self, min_prec: int) -> Expression:
        left = self.parse_unary()
        while True:
            tok = self.peek()
            if tok is None:
                return left
            entry = _BINARY_OPS.get(tok.kind)
            if entry is not None:
                op, prec, left_assoc = entry
                if prec < min_prec:
                    return left
                self.advance()
                right = self.parse_expression(prec + 1 if left_assoc else prec)
                left = Binary(op, left, right)
                continue
            if tok.kind in _JUXTAPOSE_NEXT and self._juxtaposable() and _PREC_MUL >= min_prec:
                right = self.parse_expression(_PREC_MUL + 1)
                left = Binary("mul", left, right)
                continue
            return left

    def _juxtaposable(self) -> bool:
        # implicit multiplication only after a number, `)`, variable or
        # constant -- never after a function name or an operator
        prev = self.tokens[self.pos - 1]
        if prev.kind in _JUXTAPOSE_PREV:
            return True
        return prev.kind is TokenKind.IDENT and (
            prev.lexeme in VARIABLE_NAMES or prev.lexeme in CONSTANT_VALUES
        )

    def parse_unary(self) -> Expression:
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.MINUS:
            self.advance()
            # unary minus binds looser than `^`: -2^2 == -(2^2)
            operand = self.parse_expression(_PREC_POW)
            return Unary("neg", operand)
        return self.parse_atom()

    def parse_atom(self) -> Expression:
        tok = self.peek()
        if tok is None:
            raise ParseError(self.source_len, "unexpected end of input")
        if tok.kind is TokenKind.NUMBER:
            self.advance()
            return Literal(float(tok.lexeme))
        if tok.kind is TokenKind.LPAREN:
            self.advance()
            inner = self.parse_expression(_PREC_ADD)
            self._expect_rparen(tok.position)
            return inner
        if tok.kind is TokenKind.IDENT:
            name = tok.lexeme
            if name in VARIABLE_NAMES:
                self.advance()
                return Variable(name)
            if name in CONSTANT_VALUES:
                self.advance()
                return Constant(name)
            if name in FUNCTION_NAMES:
                self.advance()
                nxt = self.peek()
                if nxt is None or nxt.kind is not TokenKind.LPAREN:
                    raise ParseError(
                        self.error_position(),
                        f"function {name!r} needs a parenthesized argument",
                    )
                self.advance()
                inner_tok = self.peek()
                if inner_tok is not None and inner_tok.kind is TokenKind.RPAREN:
                    raise ParseError(inner_tok.position, f"function {name!r} called without an argument")
                argument = self.parse_expression(_PREC_ADD)
                self._expect_rparen(nxt.position)
                return Call(name, argument)
            raise ParseError(tok.position, f"unknown identifier {name!r}")
        raise ParseError(tok.position, f"unexpected {tok.lexeme!r}")

    def _expect_rparen(self, open_position: int) -> None:
        tok = self.peek()
        if tok is None:
            raise ParseError(self.source_len, f"unbalanced '(' opened at position {open_position}")
        if tok.kind is not TokenKind.RPAREN:
            raise ParseError(tok.position, f"expected ')', got {tok.lexeme!r}")
        self.advance()


def parse(source: str) -> Expression:
    """Parse ``source`` (``z = f(x, y)`` or bare ``f(x, y)``) into an AST.

    Raises LexError or ParseError, both carrying ``position``.
    """
    tokens = tokenize(source)
    if not tokens:
        raise ParseError(len(source.encode("utf-8")), "empty input")
    return _Parser(tokens, len(source.encode("utf-8"))).parse_input()


# --------------------------------------------------------------------------
# Evaluation

class _UndefinedValue(Exception):
    """Internal control flow for undefined results; never escapes."""


_FUNCTION_IMPLS: dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "asin": math.asin,
    "acos": math.acos,
    "atan": math.atan,
    "exp": math.exp,
    "ln": math.log,
    "log": math.log10,
    "sqrt": math.sqrt,
    "abs": abs,
}

_isfinite = math.isfinite


def _build(node: Expression) -> Callable[[float, float], float]:
    if isinstance(node, Literal):
        value = node.value
        return lambda x, y: value
    if isinstance(node, Variable):
        if node.name == "x":
            return lambda x, y: x
        return lambda x, y: y
    if isinstance(node, Constant):
        value = CONSTANT_VALUES[node.name]
        return lambda x, y: value
    if isinstance(node, Unary):
        child = _build(node.child)
        return lambda x, y: -child(x, y)
    if isinstance(node, Binary):
        lf = _build(node.left)
        rf = _build(node.right)
        op = node.op
        if op == "add":
            def run(x, y):
                v = lf(x, y) + rf(x, y)
                if _isfinite(v):
                    return v
                raise _UndefinedValue
        elif op == "sub":
            def run(x, y):
                v = lf(x, y) - rf(x, y)
                if _isfinite(v):
                    return v
                raise _UndefinedValue
        elif op == "mul":
            def run(x, y):
                v = lf(x, y) * rf(x, y)
                if _isfinite(v):
                    return v
                raise _UndefinedValue
        elif op == "div":
            def run(x, y):
                v = lf(x, y) / rf(x, y)  # ZeroDivisionError -> undefined
                if _isfinite(v):
                    return v
                raise _UndefinedValue
        elif op == "pow":
            # math.pow enforces real semantics: negative base with a
            # non-integer exponent and 0^negative raise ValueError
            def run(x, y):
                return math.pow(lf(x, y), rf(x, y))
        else:
            raise AssertionError(f"unknown operator {op!r}")
        return run
    if isinstance(node, Call):
        fn = _FUNCTION_IMPLS[node.function]
        arg = _build(node.argument)
        return lambda x, y: fn(arg(x, y))
    raise TypeError(f"not an expression node: {node!r}")


@lru_cache(maxsize=512)
def compile_expression(expr: Expression) -> Callable[[float, float], Optional[float]]:
    """Compile ``expr`` into a fast ``(x, y) -> float | None`` callable.

    The callable never raises and never returns NaN or infinities; every
    domain error, division by zero, or overflow comes back as None.
    """
    fn = _build(expr)

    def run(x: float, y: float) -> Optional[float]:
        try:
            return fn(x, y)
        except (_UndefinedValue, ValueError, ZeroDivisionError, OverflowError):
            return None

    return run


def evaluate(expr: Expression, x: float, y: float) -> Optional[float]:
    """Evaluate ``expr`` at (x, y): a finite float, or None if undefined."""
    return compile_expression(expr)(x, y)


# --------------------------------------------------------------------------
# Rendering and inspection

_OP_SYMBOLS = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}


def _render_number(value: float) -> str:
    # positional decimal only; the lexer has no scientific notation. Exact
    # expansions keep parse(canonical_text(e)) lossless even for extreme
    # magnitudes. Negative literals cannot be re-lexed as a single number,
    # so canonical ASTs wrap them in the unary operator instead.
    if value.is_integer():
        return str(int(value))
    text = repr(value)
    if "e" in text or "E" in text:
        return format(Decimal(value), "f")
    return text


def _render(node: Expression) -> str:
    if isinstance(node, Literal):
        return _render_number(node.value)
    if isinstance(node, Variable):
        return node.name
    if isinstance(node, Constant):
        return node.name
    if isinstance(node, Unary):
        return f"(-{_render(node.child)})"
    if isinstance(node, Binary):
        return f"({_render(node.left)} {_OP_SYMBOLS[node.op]} {_render(node.right)})"
    if isinstance(node, Call):
        return f"{node.function}({_render(node.argument)})"
    raise TypeError(f"not an expression node: {node!r}")


def canonical_text(expr: Expression) -> str:
    """Fully parenthesized rendering prefixed with ``z = ``.

    Re-parsing the result yields a structurally identical AST (for ASTs in
    canonical form, i.e. with non-negative literals).
    """
    return "z = " + _render(expr)


def free_variables(expr: Expression) -> set[str]:
    """The set of variable names (subset of {x, y}) appearing in ``expr``."""
    found: set[str] = set()
    stack: list[Expression] = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Variable):
            found.add(node.name)
        elif isinstance(node, Unary):
            stack.append(node.child)
        elif isinstance(node, Binary):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Call):
            stack.append(node.argument)
    return found
