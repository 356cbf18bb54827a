"""Recursive-descent parser for the polynomial input syntax.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := 'd' | 'l' | 'm' | rational | 'i' | name | '(' expr ')'

`d`, `l`, `m` are ∂, λ, μ; `i` is the imaginary unit; a rational is `p` or
`p/q` read as a single token; names refer to caller-supplied constants.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from exceptions import ParseError
from services.exactpoly import D, LAM, MU, POLY_RING, MultiPoly, Scalar, const, scalar

TOKEN_SPEC = [
    ("RATIONAL", r"\d+(?:/\d+)?"),
    ("NAME", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r"[+\-*^()]"),
    ("SPACE", r"[ \t\r\n]+"),
    ("ERROR", r"."),
]
TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKEN_SPEC))

BUILTIN_ATOMS = {"d": D, "l": LAM, "m": MU}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column: int = 1) -> list[Token]:
    """Splits text into tokens; line/column give the position of text[0] in its file."""
    tokens = []
    cur_line, cur_col = line, column
    for match in TOKEN_RE.finditer(text):
        kind, value = match.lastgroup, match.group()
        if kind == "ERROR":
            raise ParseError(f"unexpected character '{value}'", cur_line, cur_col)
        if kind != "SPACE":
            tokens.append(Token(kind, value, cur_line, cur_col))
        for ch in value:
            if ch == "\n":
                cur_line, cur_col = cur_line + 1, 1
            else:
                cur_col += 1
    tokens.append(Token("END", "", cur_line, cur_col))
    return tokens


class PolyParser:
    def __init__(self, text: str, constants: dict[str, MultiPoly] | None = None, line: int = 1, column: int = 1):
        self.tokens = tokenize(text, line, column)
        self.pos = 0
        self.constants = constants or {}

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _fail(self, message: str, token: Token | None = None):
        token = token or self.current
        found = token.text if token.kind != "END" else "end of input"
        raise ParseError(f"{message}, found '{found}'", token.line, token.column)

    def _accept(self, text: str) -> bool:
        if self.current.kind == "OP" and self.current.text == text:
            self.pos += 1
            return True
        return False

    def parse(self) -> MultiPoly:
        result = self.expr()
        if self.current.kind != "END":
            self._fail("expected an operator or end of input")
        return result

    def expr(self) -> MultiPoly:
        negate = False
        if self._accept("-"):
            negate = True
        else:
            self._accept("+")
        result = self.term()
        if negate:
            result = -result
        while True:
            if self._accept("+"):
                result = result + self.term()
            elif self._accept("-"):
                result = result - self.term()
            else:
                return result

    def term(self) -> MultiPoly:
        result = self.factor()
        while self._accept("*"):
            result = result * self.factor()
        return result

    def factor(self) -> MultiPoly:
        base = self.atom()
        if self._accept("^"):
            token = self.current
            if token.kind != "RATIONAL" or "/" in token.text:
                self._fail("expected a non-negative integer exponent")
            self.pos += 1
            return base ** int(token.text)
        return base

    def atom(self) -> MultiPoly:
        token = self.current
        if token.kind == "RATIONAL":
            self.pos += 1
            frac = Fraction(token.text)
            return const(scalar(frac))
        if token.kind == "NAME":
            self.pos += 1
            if token.text in BUILTIN_ATOMS:
                return BUILTIN_ATOMS[token.text]
            if token.text == "i":
                return const(scalar(0, 1))
            if token.text in self.constants:
                return self.constants[token.text]
            raise ParseError(f"unknown name '{token.text}'", token.line, token.column)
        if self._accept("("):
            inner = self.expr()
            if not self._accept(")"):
                self._fail("expected ')'")
            return inner
        self._fail("expected a term")


def parse_poly(text: str, constants: dict[str, MultiPoly] | None = None, line: int = 1, column: int = 1) -> MultiPoly:
    return PolyParser(str(text), constants, line, column).parse()


def parse_scalar(text, line: int = 1, column: int = 1) -> Scalar:
    """Parses a constant expression such as `-2/3` or `1+i` into a Scalar."""
    if isinstance(text, Scalar):
        return text
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return scalar(text)
    poly = parse_poly(str(text), line=line, column=column)
    if any(sum(monom) for monom in poly.keys()):
        raise ParseError(f"'{text}' is not a constant", line, column)
    return poly.get((0, 0, 0, 0), POLY_RING.domain.zero)
