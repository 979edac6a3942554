"""A small line-oriented language for maps R^n -> R^n with dual semantics.

A program declares a dimension, optionally a scalar parameter ``t``, and one
expression per component::

    dim 2
    param t
    map g1 = (x1 + x2) * x1
    map g2 = (x1 + x2) * x2
    domain rect [0,1] [0,1]     # optional, consumed by the CLI layer

Expressions support + - * / ^INT, unary minus, parentheses, the functions
sin cos exp tanh sqrt abs min max, the variables x1..xn and t, and decimal
literals.  Every parsed map evaluates both over floats (eval_real) and over
boxes (eval_interval); the interval semantics is the naive interval
extension, which encloses the true image of the box.  Decimal literals
evaluate to their nearest float in real semantics and to the tightest
enclosing float interval in interval semantics, so constants like 0.1 never
silently lose their true value.

Comment text after ``#`` and blank lines are ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .interval import (
    Box,
    DimensionMismatchError,
    DomainError,
    Interval,
    next_down,
    next_up,
)


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {col})" if col is not None else ")")
        super().__init__(message + where)


class UnknownIdentifierError(ParseError):
    pass


class EvaluationError(ArithmeticError):
    """Evaluation produced a non-finite value."""


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Const(Expr):
    value: float
    enclosure: Interval

    def eval_real(self, xs, t):
        return self.value

    def eval_interval(self, xs, t):
        return self.enclosure

    def to_source(self, prec=0):
        if self.value < 0:
            s = repr(self.value)
            return f"({s})" if prec >= 3 else s
        return repr(self.value)


@dataclass(frozen=True)
class Var(Expr):
    index: int  # 0-based

    def eval_real(self, xs, t):
        return xs[self.index]

    def eval_interval(self, xs, t):
        return xs[self.index]

    def to_source(self, prec=0):
        return f"x{self.index + 1}"


@dataclass(frozen=True)
class Param(Expr):
    def eval_real(self, xs, t):
        return t

    def eval_interval(self, xs, t):
        return t

    def to_source(self, prec=0):
        return "t"


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr

    def eval_real(self, xs, t):
        return -self.arg.eval_real(xs, t)

    def eval_interval(self, xs, t):
        return -self.arg.eval_interval(xs, t)

    def to_source(self, prec=0):
        inner = f"-{self.arg.to_source(3)}"
        return f"({inner})" if prec > 2 else inner


@dataclass(frozen=True)
class BinOp(Expr):
    op: str  # one of + - * /
    left: Expr
    right: Expr

    def eval_real(self, xs, t):
        a = self.left.eval_real(xs, t)
        b = self.right.eval_real(xs, t)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if b == 0.0:
            raise DomainError("division by zero")
        return a / b

    def eval_interval(self, xs, t):
        a = self.left.eval_interval(xs, t)
        b = self.right.eval_interval(xs, t)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        return a / b

    def to_source(self, prec=0):
        mine = 1 if self.op in "+-" else 2
        left = self.left.to_source(mine)
        right = self.right.to_source(mine + 1)  # left-associative
        s = f"{left} {self.op} {right}"
        return f"({s})" if prec > mine else s


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exponent: int

    def eval_real(self, xs, t):
        b = self.base.eval_real(xs, t)
        if self.exponent < 0 and b == 0.0:
            raise DomainError("zero base with negative exponent")
        return b ** self.exponent

    def eval_interval(self, xs, t):
        return self.base.eval_interval(xs, t).pow_int(self.exponent)

    def to_source(self, prec=0):
        s = f"{self.base.to_source(4)}^{self.exponent}"
        return f"({s})" if prec > 3 else s


_REAL_FUNCS = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "tanh": math.tanh,
    "abs": abs,
}

FUNCTION_ARITY = {
    "sin": 1,
    "cos": 1,
    "exp": 1,
    "tanh": 1,
    "sqrt": 1,
    "abs": 1,
    "min": 2,
    "max": 2,
}


@dataclass(frozen=True)
class Call(Expr):
    func: str
    args: tuple

    def eval_real(self, xs, t):
        vals = [a.eval_real(xs, t) for a in self.args]
        f = self.func
        if f == "sqrt":
            if vals[0] < 0.0:
                raise DomainError(f"sqrt of negative value {vals[0]}")
            return math.sqrt(vals[0])
        if f == "min":
            return min(vals)
        if f == "max":
            return max(vals)
        return _REAL_FUNCS[f](vals[0])

    def eval_interval(self, xs, t):
        vals = [a.eval_interval(xs, t) for a in self.args]
        f = self.func
        if f == "min":
            return vals[0].min_with(vals[1])
        if f == "max":
            return vals[0].max_with(vals[1])
        return getattr(vals[0], f if f != "abs" else "abs")()

    def to_source(self, prec=0):
        return f"{self.func}(" + ", ".join(a.to_source(0) for a in self.args) + ")"


def literal_const(text: str) -> Const:
    """Build a constant whose enclosure brackets the exact decimal value."""
    v = float(text)
    exact = Fraction(text)
    fv = Fraction(v)
    if fv == exact:
        enc = Interval(v, v)
    elif fv < exact:
        enc = Interval(v, next_up(v))
    else:
        enc = Interval(next_down(v), v)
    return Const(v, enc)


def float_const(v: float) -> Const:
    """Constant for a value already held as a float (exact enclosure)."""
    return Const(v, Interval(v, v))


# ---------------------------------------------------------------------------
# Parsed maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MapSpec:
    """A parsed map R^n -> R^n, optionally with a scalar parameter t."""

    dim: int
    components: tuple
    has_param: bool = False

    def _check_param(self, t):
        if self.has_param and t is None:
            raise ValueError("map takes a parameter t but none was supplied")
        if not self.has_param and t is not None:
            raise ValueError("map takes no parameter")

    def eval_real(self, point, t=None):
        self._check_param(t)
        if len(point) != self.dim:
            raise DimensionMismatchError(
                f"point of dimension {len(point)} for map of dimension {self.dim}"
            )
        xs = tuple(float(x) for x in point)
        out = []
        for comp in self.components:
            try:
                v = comp.eval_real(xs, t)
            except OverflowError as exc:
                raise EvaluationError("overflow during evaluation") from exc
            if not math.isfinite(v):
                raise EvaluationError(f"non-finite component value {v}")
            out.append(v)
        return tuple(out)

    def eval_interval(self, box: Box, t=None) -> Box:
        self._check_param(t)
        if box.dim != self.dim:
            raise DimensionMismatchError(
                f"box of dimension {box.dim} for map of dimension {self.dim}"
            )
        return Box(tuple(c.eval_interval(box.coords, t) for c in self.components))

    def eval_component_interval(self, i: int, box: Box, t=None) -> Interval:
        if box.dim != self.dim:
            raise DimensionMismatchError(
                f"box of dimension {box.dim} for map of dimension {self.dim}"
            )
        return self.components[i].eval_interval(box.coords, t)

    def to_source(self) -> str:
        lines = [f"dim {self.dim}"]
        if self.has_param:
            lines.append("param t")
        for i, comp in enumerate(self.components):
            lines.append(f"map g{i + 1} = {comp.to_source(0)}")
        return "\n".join(lines) + "\n"


def blend_with_parameter(f: MapSpec, g: MapSpec) -> MapSpec:
    """Straight-line blend (1-t)*f + t*g as a parametrized map."""
    if f.dim != g.dim:
        raise DimensionMismatchError("blended maps must share a dimension")
    if f.has_param or g.has_param:
        raise ValueError("blend operands must be parameter-free")
    one = float_const(1.0)
    comps = []
    for fc, gc in zip(f.components, g.components):
        lam = Param()
        comps.append(
            BinOp("+", BinOp("*", BinOp("-", one, lam), fc), BinOp("*", lam, gc))
        )
    return MapSpec(f.dim, tuple(comps), has_param=True)


# ---------------------------------------------------------------------------
# Tokenizer / parser
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Tok:
    kind: str  # num | ident | op
    text: str
    line: int
    col: int


def _tokenize_expr(text: str, line_no: int, col_offset: int):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        col = col_offset + i + 1
        if ch.isdigit() or ch == ".":
            j = i
            seen_dot = False
            while j < n and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                if text[j] == ".":
                    seen_dot = True
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            tok = text[i:j]
            if tok == ".":
                raise ParseError("stray '.'", line_no, col)
            toks.append(_Tok("num", tok, line_no, col))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("ident", text[i:j], line_no, col))
            i = j
        elif ch in "+-*/^(),":
            toks.append(_Tok("op", ch, line_no, col))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line_no, col)
    return toks


class _ExprParser:
    def __init__(self, toks, dim, has_param, line_no):
        self.toks = toks
        self.pos = 0
        self.dim = dim
        self.has_param = has_param
        self.line_no = line_no

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self.line_no)
        self.pos += 1
        return tok

    def expect_op(self, text):
        tok = self.take()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.col)

    def parse(self) -> Expr:
        e = self.parse_sum()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok.text!r}", tok.line, tok.col)
        return e

    def parse_sum(self) -> Expr:
        e = self.parse_term()
        while True:
            tok = self.peek()
            if tok and tok.kind == "op" and tok.text in "+-":
                self.take()
                e = BinOp(tok.text, e, self.parse_term())
            else:
                return e

    def parse_term(self) -> Expr:
        e = self.parse_unary()
        while True:
            tok = self.peek()
            if tok and tok.kind == "op" and tok.text in "*/":
                self.take()
                e = BinOp(tok.text, e, self.parse_unary())
            else:
                return e

    def parse_unary(self) -> Expr:
        tok = self.peek()
        if tok and tok.kind == "op" and tok.text == "-":
            self.take()
            return Neg(self.parse_unary())
        return self.parse_power()

    def parse_power(self) -> Expr:
        base = self.parse_atom()
        tok = self.peek()
        if tok and tok.kind == "op" and tok.text == "^":
            self.take()
            sign = 1
            tok = self.take()
            if tok.kind == "op" and tok.text == "-":
                sign = -1
                tok = self.take()
            if tok.kind != "num" or "." in tok.text or "e" in tok.text or "E" in tok.text:
                raise ParseError("exponent must be an integer literal", tok.line, tok.col)
            return Power(base, sign * int(tok.text))
        return base

    def parse_atom(self) -> Expr:
        tok = self.take()
        if tok.kind == "num":
            return literal_const(tok.text)
        if tok.kind == "op" and tok.text == "(":
            e = self.parse_sum()
            self.expect_op(")")
            return e
        if tok.kind == "ident":
            name = tok.text
            nxt = self.peek()
            if name in FUNCTION_ARITY and nxt and nxt.kind == "op" and nxt.text == "(":
                self.take()
                args = [self.parse_sum()]
                while True:
                    sep = self.take()
                    if sep.kind == "op" and sep.text == ",":
                        args.append(self.parse_sum())
                    elif sep.kind == "op" and sep.text == ")":
                        break
                    else:
                        raise ParseError(
                            f"expected ',' or ')', found {sep.text!r}", sep.line, sep.col
                        )
                if len(args) != FUNCTION_ARITY[name]:
                    raise ParseError(
                        f"{name} takes {FUNCTION_ARITY[name]} argument(s), got {len(args)}",
                        tok.line,
                        tok.col,
                    )
                return Call(name, tuple(args))
            if name == "t":
                if not self.has_param:
                    raise UnknownIdentifierError(
                        "t used without a 'param t' declaration", tok.line, tok.col
                    )
                return Param()
            if name.startswith("x") and name[1:].isdigit():
                idx = int(name[1:])
                if not 1 <= idx <= self.dim:
                    raise UnknownIdentifierError(
                        f"{name} out of range for dim {self.dim}", tok.line, tok.col
                    )
                return Var(idx - 1)
            raise UnknownIdentifierError(f"unknown identifier {name!r}", tok.line, tok.col)
        raise ParseError(f"unexpected token {tok.text!r}", tok.line, tok.col)


@dataclass(frozen=True)
class ParsedProgram:
    map: MapSpec
    domain_line: "str | None"
    domain_line_no: int


def parse_program(source: str) -> ParsedProgram:
    dim = None
    has_param = False
    components = {}
    domain_line = None
    domain_line_no = 0

    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if domain_line is not None:
            raise ParseError("domain line must be the last line", line_no)
        head = line.split(None, 1)[0]
        if head == "dim":
            if dim is not None:
                raise ParseError("duplicate dim declaration", line_no)
            rest = line[3:].strip()
            if not rest.isdigit() or int(rest) < 1:
                raise ParseError("dim expects a positive integer", line_no)
            dim = int(rest)
        elif head == "param":
            if dim is None:
                raise ParseError("param before dim", line_no)
            if line.split() != ["param", "t"]:
                raise ParseError("only 'param t' is supported", line_no)
            if components:
                raise ParseError("param must come before map lines", line_no)
            has_param = True
        elif head == "map":
            if dim is None:
                raise ParseError("map before dim", line_no)
            body = line[3:].strip()
            if "=" not in body:
                raise ParseError("map line needs '='", line_no)
            name, expr_text = body.split("=", 1)
            name = name.strip()
            if not (name.startswith("g") and name[1:].isdigit()):
                raise ParseError(f"map component must be named g1..g{dim}", line_no)
            idx = int(name[1:])
            if not 1 <= idx <= dim:
                raise DimensionMismatchError(
                    f"component {name} outside 1..{dim} (line {line_no})"
                )
            if idx in components:
                raise ParseError(f"duplicate definition of {name}", line_no)
            col_offset = raw.index("=") + 1
            toks = _tokenize_expr(expr_text, line_no, col_offset)
            components[idx] = _ExprParser(toks, dim, has_param, line_no).parse()
        elif head == "domain":
            domain_line = line
            domain_line_no = line_no
        else:
            raise ParseError(f"unknown directive {head!r}", line_no)

    if dim is None:
        raise ParseError("missing dim declaration", 1)
    missing = [i for i in range(1, dim + 1) if i not in components]
    if missing:
        raise DimensionMismatchError(
            f"missing map components: {', '.join('g%d' % i for i in missing)}"
        )
    spec = MapSpec(dim, tuple(components[i] for i in range(1, dim + 1)), has_param)
    return ParsedProgram(spec, domain_line, domain_line_no)


def parse_map(source: str) -> MapSpec:
    return parse_program(source).map
