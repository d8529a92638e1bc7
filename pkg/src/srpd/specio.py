"""Expression parsing, printing, and distribution spec files.

Grammar for polynomial expressions (whitespace-insensitive)::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := '-' factor | power
    power    := atom ('^' INTEGER)?
    atom     := RATIONAL | VARIABLE | '(' expr ')'
    RATIONAL := INTEGER ('/' INTEGER)?
    VARIABLE := 'y' INTEGER          (index < ambient dimension)

Precedence is the standard one: '^' binds tighter than unary minus, which
binds tighter than '*', which binds tighter than '+'/'-'.  Exponents are
nonnegative integer literals.  Printing a polynomial yields an expression
that parses back to the same normal form.

Spec files are flat, line-oriented ``key = value`` text.  Repeated
``horizontal`` / ``vertical`` keys append fields; each field is a bracketed,
comma-separated list of one expression per ambient coordinate::

    name = s3_h12
    ambient_dim = 4
    manifold = unit_sphere
    horizontal = [-y2, y3, y0, -y1]
    horizontal = [-y3, -y2, y1, y0]
    vertical = [-y1, y0, -y3, y2]
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .frame import PDistribution, build
from .ratpoly import Poly, QPoly, reduce
from .vfield import VectorField


class ExprSyntaxError(ValueError):
    """Malformed expression; carries the offending position."""

    def __init__(self, position: int, expected: str):
        self.position = position
        self.expected = expected
        super().__init__(f"at position {position}: expected {expected}")


class UnknownVariable(ValueError):
    def __init__(self, name: str, position: int):
        self.name = name
        self.position = position
        super().__init__(f"at position {position}: unknown variable {name!r}")


class NegativeExponent(ValueError):
    def __init__(self, position: int):
        self.position = position
        super().__init__(f"at position {position}: exponents must be nonnegative integers")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()/]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "int" | "name" | "op" | "end"
    text: str
    position: int


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            stripped = source[pos:].lstrip()
            if not stripped:
                break
            bad_pos = len(source) - len(stripped)
            raise ExprSyntaxError(bad_pos, f"a token (found {source[bad_pos]!r})")
        for kind in ("int", "name", "op"):
            text = match.group(kind)
            if text is not None:
                tokens.append(_Token(kind, text, match.start(kind)))
                break
        pos = match.end()
    tokens.append(_Token("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], n: int):
        self.tokens = tokens
        self.index = 0
        self.n = n

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect_op(self, op: str) -> _Token:
        token = self.peek()
        if token.kind != "op" or token.text != op:
            raise ExprSyntaxError(token.position, f"{op!r}")
        return self.advance()

    def parse(self) -> Poly:
        value = self.expr()
        token = self.peek()
        if token.kind != "end":
            raise ExprSyntaxError(token.position, "end of expression or an operator")
        return value

    def expr(self) -> Poly:
        value = self.term()
        while True:
            token = self.peek()
            if token.kind == "op" and token.text in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if token.text == "+" else value - rhs
            else:
                return value

    def term(self) -> Poly:
        value = self.factor()
        while True:
            token = self.peek()
            if token.kind == "op" and token.text == "*":
                self.advance()
                value = value * self.factor()
            else:
                return value

    def factor(self) -> Poly:
        token = self.peek()
        if token.kind == "op" and token.text == "-":
            self.advance()
            return -self.factor()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        token = self.peek()
        if token.kind == "op" and token.text == "^":
            self.advance()
            exp_token = self.peek()
            if exp_token.kind == "op" and exp_token.text == "-":
                raise NegativeExponent(exp_token.position)
            if exp_token.kind != "int":
                raise ExprSyntaxError(exp_token.position, "a nonnegative integer exponent")
            self.advance()
            return base ** int(exp_token.text)
        return base

    def atom(self) -> Poly:
        token = self.peek()
        if token.kind == "int":
            self.advance()
            numerator = int(token.text)
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "/":
                self.advance()
                den_token = self.peek()
                if den_token.kind != "int":
                    raise ExprSyntaxError(den_token.position, "an integer denominator")
                self.advance()
                if int(den_token.text) == 0:
                    raise ExprSyntaxError(den_token.position, "a nonzero denominator")
                return Poly.const(Fraction(numerator, int(den_token.text)), self.n)
            return Poly.const(numerator, self.n)
        if token.kind == "name":
            self.advance()
            match = re.fullmatch(r"y(\d+)", token.text)
            if match is None or (len(match.group(1)) > 1 and match.group(1)[0] == "0"):
                raise UnknownVariable(token.text, token.position)
            index = int(match.group(1))
            if index >= self.n:
                raise UnknownVariable(token.text, token.position)
            return Poly.variable(index, self.n)
        if token.kind == "op" and token.text == "(":
            self.advance()
            value = self.expr()
            self.expect_op(")")
            return value
        raise ExprSyntaxError(token.position, "a number, variable, or '('")


def parse_expr(source: str, n: int) -> Poly:
    """Parse a polynomial expression over y0 .. y{n-1}."""
    return _Parser(_tokenize(source), n).parse()


def parse_qpoly(source: str, n: int) -> QPoly:
    return reduce(parse_expr(source, n))


def format_poly(p: Poly | QPoly) -> str:
    """Canonical textual form; parses back to an equal polynomial."""
    return str(p)


def parse_field(expressions: list[str], n: int) -> VectorField:
    if len(expressions) != n:
        raise SpecFileError(0, f"field needs {n} components, got {len(expressions)}")
    return VectorField(tuple(parse_qpoly(e, n) for e in expressions))


def format_field(field: VectorField) -> str:
    return "[" + ", ".join(str(c) for c in field.components) + "]"


# -- spec files ---------------------------------------------------------------


class SpecFileError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class DistributionSpec:
    """Parsed distribution description from a spec file."""

    name: str
    ambient_dim: int
    manifold: str
    horizontal: tuple[tuple[str, ...], ...]
    vertical: tuple[tuple[str, ...], ...] | None = None

    def to_distribution(self) -> PDistribution:
        fields = tuple(parse_field(list(exprs), self.ambient_dim) for exprs in self.horizontal)
        vertical = None
        if self.vertical is not None:
            vertical = tuple(
                parse_field(list(exprs), self.ambient_dim) for exprs in self.vertical
            )
        return build(fields, vertical=vertical, name=self.name)


def _split_field_line(value: str, line_no: int) -> tuple[str, ...]:
    value = value.strip()
    if not (value.startswith("[") and value.endswith("]")):
        raise SpecFileError(line_no, "field value must be a bracketed expression list")
    inner = value[1:-1]
    parts = [p.strip() for p in inner.split(",")]
    if any(not p for p in parts):
        raise SpecFileError(line_no, "empty component in field list")
    return tuple(parts)


def loads_spec(text: str) -> DistributionSpec:
    name = ""
    ambient_dim: int | None = None
    manifold = "unit_sphere"
    horizontal: list[tuple[str, ...]] = []
    vertical: list[tuple[str, ...]] = []
    saw_vertical = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise SpecFileError(line_no, "expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "name":
            name = value
        elif key == "ambient_dim":
            try:
                ambient_dim = int(value)
            except ValueError:
                raise SpecFileError(line_no, f"ambient_dim must be an integer, got {value!r}")
        elif key == "manifold":
            manifold = value
        elif key == "horizontal":
            horizontal.append(_split_field_line(value, line_no))
        elif key == "vertical":
            saw_vertical = True
            vertical.append(_split_field_line(value, line_no))
        else:
            raise SpecFileError(line_no, f"unknown key {key!r}")
    if ambient_dim is None:
        raise SpecFileError(0, "missing ambient_dim")
    if ambient_dim < 2:
        raise SpecFileError(0, "ambient_dim must be at least 2")
    if manifold != "unit_sphere":
        raise SpecFileError(0, f"unsupported manifold {manifold!r}")
    if not horizontal:
        raise SpecFileError(0, "at least one horizontal field is required")
    if len(horizontal) >= ambient_dim:
        raise SpecFileError(
            0, f"{len(horizontal)} horizontal fields cannot fit in dimension {ambient_dim}"
        )
    for exprs in horizontal + vertical:
        if len(exprs) != ambient_dim:
            raise SpecFileError(
                0, f"each field needs {ambient_dim} components, got {len(exprs)}"
            )
        for e in exprs:
            parse_expr(e, ambient_dim)  # raises with position on bad syntax
    return DistributionSpec(
        name=name,
        ambient_dim=ambient_dim,
        manifold=manifold,
        horizontal=tuple(horizontal),
        vertical=tuple(vertical) if saw_vertical else None,
    )


def load_spec(path: str | Path) -> DistributionSpec:
    return loads_spec(Path(path).read_text())


def dumps_spec(spec: DistributionSpec) -> str:
    lines = []
    if spec.name:
        lines.append(f"name = {spec.name}")
    lines.append(f"ambient_dim = {spec.ambient_dim}")
    lines.append(f"manifold = {spec.manifold}")
    for exprs in spec.horizontal:
        lines.append("horizontal = [" + ", ".join(exprs) + "]")
    if spec.vertical is not None:
        for exprs in spec.vertical:
            lines.append("vertical = [" + ", ".join(exprs) + "]")
    return "\n".join(lines) + "\n"


def spec_from_distribution(pd: PDistribution, name: str = "") -> DistributionSpec:
    return DistributionSpec(
        name=name or pd.name,
        ambient_dim=pd.ambient_dim,
        manifold="unit_sphere",
        horizontal=tuple(tuple(str(c) for c in f.components) for f in pd.frame),
        vertical=(
            tuple(tuple(str(c) for c in f.components) for f in pd.vertical_frame)
            if pd.vertical_frame is not None
            else None
        ),
    )
