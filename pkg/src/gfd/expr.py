"""Expression trees over real variables.

Every function the rest of the package manipulates is an :class:`Expr`.
Trees are immutable and compared structurally.  The module provides a
recursive-descent parser, a printer that round-trips through it, scalar
and array evaluation, symbolic differentiation and a light simplifier.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import ClassVar, Iterator, Mapping, Union

import numpy as np

from gfd.errors import DomainError, ParseError

Number = Union[int, float]

DEFAULT_VARIABLES = frozenset({"t", "x"} | {f"t{i}" for i in range(1, 10)})
WEIGHT_SYMBOLS = frozenset({"alpha", "tau"})
CONSTANTS = {"pi": math.pi}


# {{{ nodes


@dataclass(frozen=True)
class Expr:
    def __add__(self, other):
        return Add(self, as_expr(other))

    def __radd__(self, other):
        return Add(as_expr(other), self)

    def __sub__(self, other):
        return Sub(self, as_expr(other))

    def __rsub__(self, other):
        return Sub(as_expr(other), self)

    def __mul__(self, other):
        return Mul(self, as_expr(other))

    def __rmul__(self, other):
        return Mul(as_expr(other), self)

    def __truediv__(self, other):
        return Div(self, as_expr(other))

    def __rtruediv__(self, other):
        return Div(as_expr(other), self)

    def __pow__(self, other):
        return Pow(self, as_expr(other))

    def __rpow__(self, other):
        return Pow(as_expr(other), self)

    def __neg__(self):
        return Neg(self)

    def __str__(self) -> str:
        return to_string(self)

    def children(self) -> tuple["Expr", ...]:
        return ()


@dataclass(frozen=True)
class Const(Expr):
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Binary(Expr):
    left: Expr
    right: Expr

    symbol: ClassVar[str] = "?"

    def children(self):
        return (self.left, self.right)


class Add(Binary):
    symbol = "+"


class Sub(Binary):
    symbol = "-"


class Mul(Binary):
    symbol = "*"


class Div(Binary):
    symbol = "/"


class Pow(Binary):
    symbol = "^"


@dataclass(frozen=True)
class Func(Expr):
    arg: Expr

    name: ClassVar[str] = "?"

    def children(self):
        return (self.arg,)


class Sin(Func):
    name = "sin"


class Cos(Func):
    name = "cos"


class Tan(Func):
    name = "tan"


class Exp(Func):
    name = "exp"


class Ln(Func):
    name = "ln"


class Sqrt(Func):
    name = "sqrt"


class Abs(Func):
    name = "abs"


FUNCTIONS: dict[str, type[Func]] = {
    cls.name: cls for cls in (Sin, Cos, Tan, Exp, Ln, Sqrt, Abs)
}

ZERO = Const(0.0)
ONE = Const(1.0)


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, str):
        return parse(value)
    if isinstance(value, (int, float, np.floating, np.integer)):
        return Const(float(value))
    raise TypeError(f"cannot convert {type(value).__name__} to Expr")


def walk(e: Expr) -> Iterator[Expr]:
    yield e
    for c in e.children():
        yield from walk(c)


def free_vars(e: Expr) -> frozenset[str]:
    return frozenset(n.name for n in walk(e) if isinstance(n, Var))


def depth(e: Expr) -> int:
    return 1 + max((depth(c) for c in e.children()), default=0)


def substitute(e: Expr, mapping: Mapping[str, Expr | Number]) -> Expr:
    """Replace variables by expressions (or numbers) throughout ``e``."""
    repl = {k: as_expr(v) for k, v in mapping.items()}

    def go(n: Expr) -> Expr:
        match n:
            case Var(name=name) if name in repl:
                return repl[name]
            case Neg(arg=a):
                return Neg(go(a))
            case Binary(left=l, right=r):
                return type(n)(go(l), go(r))
            case Func(arg=a):
                return type(n)(go(a))
        return n

    return go(e)


# }}}


# {{{ printing

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Pow: 4}
# minimal precedence required of (left, right) operands
_OPERAND_PREC = {Add: (1, 2), Sub: (1, 2), Mul: (2, 3), Div: (2, 3), Pow: (5, 4)}


def format_number(v: float) -> str:
    if not math.isfinite(v):
        raise ValueError(f"cannot print non-finite constant {v!r}")
    if v.is_integer() and abs(v) < 1e16:
        text = str(int(abs(v)))
    else:
        text = repr(abs(v))
    return ("-" if math.copysign(1.0, v) < 0 else "") + text


def _is_negative_form(e: Expr) -> bool:
    return isinstance(e, Neg) or (
        isinstance(e, Const) and math.copysign(1.0, e.value) < 0
    )


def _prec(e: Expr) -> int:
    if _is_negative_form(e):
        return 3
    return _PREC.get(type(e), 5)


def to_string(e: Expr) -> str:
    """Canonical text for ``e``; ``parse(to_string(e)) == e`` holds."""

    def operand(c: Expr, need: int) -> str:
        s = to_string(c)
        if _is_negative_form(c) or _prec(c) < need:
            return f"({s})"
        return s

    match e:
        case Const(value=v):
            return format_number(v)
        case Var(name=name):
            return name
        case Neg(arg=a):
            if isinstance(a, Const) and not _is_negative_form(a):
                return f"-({format_number(a.value)})"
            return "-" + operand(a, 4)
        case Binary(left=l, right=r):
            lp, rp = _OPERAND_PREC[type(e)]
            sep = f" {e.symbol} " if type(e) in (Add, Sub) else e.symbol
            return operand(l, lp) + sep + operand(r, rp)
        case Func(arg=a):
            return f"{e.name}({to_string(a)})"
    raise TypeError(f"unknown node {e!r}")


# }}}


# {{{ parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^(),]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(pos, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(_Token(kind, m.group(kind), start))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: frozenset[str]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = names

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> _Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise ParseError(self.tok.pos, f"expected {text!r}, found {found!r}")

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ParseError(self.tok.pos, f"unexpected trailing token {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            if self.accept("+"):
                e = Add(e, self.term())
            elif self.accept("-"):
                e = Sub(e, self.term())
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            if self.accept("*"):
                e = Mul(e, self.factor())
            elif self.accept("/"):
                e = Div(e, self.factor())
            else:
                return e

    def factor(self) -> Expr:
        if self.accept("-"):
            nxt = self.peek()
            # "-2" is a literal; "-2^x" is -(2^x)
            if self.tok.kind == "num" and not (nxt.kind == "op" and nxt.text == "^"):
                value = float(self.tok.text)
                self.i += 1
                return Const(-value)
            return Neg(self.factor())
        base = self.base()
        if self.accept("^"):
            return Pow(base, self.factor())
        return base

    def base(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Const(float(tok.text))
        if tok.kind == "ident":
            self.i += 1
            if tok.text in FUNCTIONS:
                self.expect("(")
                args = [self.expr()]
                while self.accept(","):
                    args.append(self.expr())
                self.expect(")")
                if len(args) != 1:
                    raise ParseError(tok.pos, f"{tok.text} takes 1 argument, got {len(args)}")
                return FUNCTIONS[tok.text](args[0])
            if tok.text in self.names:
                return Var(tok.text)
            if tok.text in CONSTANTS:
                return Const(CONSTANTS[tok.text])
            if tok.text in WEIGHT_SYMBOLS:
                raise ParseError(tok.pos, f"{tok.text!r} is reserved for weight expressions")
            raise ParseError(tok.pos, f"unknown identifier {tok.text!r}")
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "end":
            raise ParseError(tok.pos, "unexpected end of input")
        raise ParseError(tok.pos, f"unexpected token {tok.text!r}")


def parse(text: str, variables=None, *, weight: bool = False) -> Expr:
    """Parse ``text`` into an :class:`Expr`.

    ``variables`` is the set of admissible variable names (default: ``t``,
    ``x`` and ``t1`` ... ``t9``).  With ``weight=True`` the reserved symbols
    ``alpha`` and ``tau`` are accepted as well.
    """
    if not text or not text.strip():
        raise ParseError(0, "empty expression")
    names = DEFAULT_VARIABLES if variables is None else frozenset(variables)
    if weight:
        names = names | WEIGHT_SYMBOLS
    else:
        names = names - WEIGHT_SYMBOLS
    return _Parser(text, names).parse()


# }}}


# {{{ evaluation


def _check(value: float, node: Expr, bindings) -> float:
    if not math.isfinite(value):
        raise DomainError("non-finite result", node, bindings)
    return value


def _pow(b: float, x: float, node, bindings) -> float:
    if float(x).is_integer():
        if b == 0.0 and x < 0:
            raise DomainError("zero raised to a negative power", node, bindings)
    elif b <= 0.0:
        raise DomainError("non-positive base with non-integer exponent", node, bindings)
    try:
        return _check(b**x, node, bindings)
    except OverflowError:
        raise DomainError("overflow", node, bindings) from None


def evaluate(e: Expr, bindings: Mapping[str, float] | None = None, **kwargs: float) -> float:
    """Evaluate ``e`` in double precision.

    Raises :class:`DomainError` for unbound variables and for arguments
    outside a node's domain.
    """
    env = dict(bindings or {})
    env.update(kwargs)

    def go(n: Expr) -> float:
        match n:
            case Const(value=v):
                return v
            case Var(name=name):
                try:
                    return float(env[name])
                except KeyError:
                    raise DomainError(f"unbound variable {name!r}", n, env) from None
            case Neg(arg=a):
                return -go(a)
            case Add(left=l, right=r):
                return _check(go(l) + go(r), n, env)
            case Sub(left=l, right=r):
                return _check(go(l) - go(r), n, env)
            case Mul(left=l, right=r):
                return _check(go(l) * go(r), n, env)
            case Div(left=l, right=r):
                den = go(r)
                if den == 0.0:
                    raise DomainError("division by zero", n, env)
                return _check(go(l) / den, n, env)
            case Pow(left=l, right=r):
                return _pow(go(l), go(r), n, env)
            case Ln(arg=a):
                v = go(a)
                if v <= 0.0:
                    raise DomainError("logarithm of a non-positive number", n, env)
                return math.log(v)
            case Sqrt(arg=a):
                v = go(a)
                if v < 0.0:
                    raise DomainError("square root of a negative number", n, env)
                return math.sqrt(v)
            case Exp(arg=a):
                try:
                    return math.exp(go(a))
                except OverflowError:
                    raise DomainError("overflow", n, env) from None
            case Sin(arg=a):
                return math.sin(go(a))
            case Cos(arg=a):
                return math.cos(go(a))
            case Tan(arg=a):
                return _check(math.tan(go(a)), n, env)
            case Abs(arg=a):
                return abs(go(a))
        raise TypeError(f"unknown node {n!r}")

    return go(e)


def evaluate_array(e: Expr, bindings: Mapping[str, np.ndarray | float]) -> np.ndarray:
    """Vectorised counterpart of :func:`evaluate` for numpy inputs."""
    env = {k: np.asarray(v, dtype=float) for k, v in bindings.items()}

    def fail(message: str, n: Expr):
        raise DomainError(message, n)

    def go(n: Expr) -> np.ndarray:
        match n:
            case Const(value=v):
                return np.asarray(v)
            case Var(name=name):
                if name not in env:
                    fail(f"unbound variable {name!r}", n)
                return env[name]
            case Neg(arg=a):
                return -go(a)
            case Add(left=l, right=r):
                return go(l) + go(r)
            case Sub(left=l, right=r):
                return go(l) - go(r)
            case Mul(left=l, right=r):
                return go(l) * go(r)
            case Div(left=l, right=r):
                den = go(r)
                if np.any(den == 0.0):
                    fail("division by zero", n)
                return go(l) / den
            case Pow(left=l, right=r):
                b, x = go(l), go(r)
                integral = x == np.round(x)
                if np.any(~integral & (b <= 0.0)):
                    fail("non-positive base with non-integer exponent", n)
                if np.any(integral & (b == 0.0) & (x < 0)):
                    fail("zero raised to a negative power", n)
                return np.power(b, x)
            case Ln(arg=a):
                v = go(a)
                if np.any(v <= 0.0):
                    fail("logarithm of a non-positive number", n)
                return np.log(v)
            case Sqrt(arg=a):
                v = go(a)
                if np.any(v < 0.0):
                    fail("square root of a negative number", n)
                return np.sqrt(v)
            case Exp(arg=a):
                return np.exp(go(a))
            case Sin(arg=a):
                return np.sin(go(a))
            case Cos(arg=a):
                return np.cos(go(a))
            case Tan(arg=a):
                return np.tan(go(a))
            case Abs(arg=a):
                return np.abs(go(a))
        raise TypeError(f"unknown node {n!r}")

    with np.errstate(all="ignore"):
        out = go(e)
    if not np.all(np.isfinite(out)):
        raise DomainError("non-finite result", e)
    return out


# }}}


# {{{ calculus


def differentiate(e: Expr, var: str = "t") -> Expr:
    """Exact derivative of ``e`` with respect to ``var``, simplified.

    ``abs(u)`` differentiates to ``u/abs(u) * u'``, which evaluates to the
    sign of ``u`` and raises :class:`DomainError` exactly where ``u = 0``.
    """

    def d(n: Expr) -> Expr:
        match n:
            case Const():
                return ZERO
            case Var(name=name):
                return ONE if name == var else ZERO
            case Neg(arg=a):
                return Neg(d(a))
            case Add(left=l, right=r):
                return Add(d(l), d(r))
            case Sub(left=l, right=r):
                return Sub(d(l), d(r))
            case Mul(left=l, right=r):
                return Add(Mul(d(l), r), Mul(l, d(r)))
            case Div(left=l, right=r):
                return Div(Sub(Mul(d(l), r), Mul(l, d(r))), Pow(r, Const(2)))
            case Pow(left=b, right=x):
                if var not in free_vars(x):
                    return Mul(Mul(x, Pow(b, simplify(Sub(x, ONE)))), d(b))
                if var not in free_vars(b):
                    return Mul(Mul(n, Ln(b)), d(x))
                return Mul(n, Add(Mul(d(x), Ln(b)), Div(Mul(x, d(b)), b)))
            case Sin(arg=a):
                return Mul(Cos(a), d(a))
            case Cos(arg=a):
                return Neg(Mul(Sin(a), d(a)))
            case Tan(arg=a):
                return Div(d(a), Pow(Cos(a), Const(2)))
            case Exp(arg=a):
                return Mul(n, d(a))
            case Ln(arg=a):
                return Div(d(a), a)
            case Sqrt(arg=a):
                return Div(d(a), Mul(Const(2), n))
            case Abs(arg=a):
                return Mul(Div(a, n), d(a))
        raise TypeError(f"unknown node {n!r}")

    return simplify(d(e))


def nth_derivative(e: Expr, var: str, order: int) -> Expr:
    if order < 0:
        raise ValueError("derivative order must be non-negative")
    for _ in range(order):
        e = differentiate(e, var)
    return e


def _is_const(e: Expr, value: float | None = None) -> bool:
    return isinstance(e, Const) and (value is None or e.value == value)


def simplify(e: Expr) -> Expr:
    """Constant folding plus the identities x+0, x*1, x*0, x/1, x^1, x^0.

    Value-preserving wherever both forms are defined.  Folding that would
    raise a domain error is skipped so the error surfaces at evaluation.
    """
    match e:
        case Const() | Var():
            return e
        case Neg(arg=a):
            a = simplify(a)
            if isinstance(a, Const):
                return Const(-a.value)
            if isinstance(a, Neg):
                return a.arg
            return Neg(a)
        case Func(arg=a):
            a = simplify(a)
            n = type(e)(a)
            if isinstance(a, Const):
                try:
                    return Const(evaluate(n))
                except DomainError:
                    pass
            return n
        case Binary(left=l, right=r):
            l, r = simplify(l), simplify(r)
            n = type(e)(l, r)
            if isinstance(l, Const) and isinstance(r, Const):
                try:
                    return Const(evaluate(n))
                except DomainError:
                    return n
            match n:
                case Add():
                    if _is_const(l, 0.0):
                        return r
                    if _is_const(r, 0.0):
                        return l
                case Sub():
                    if _is_const(r, 0.0):
                        return l
                    if _is_const(l, 0.0):
                        return simplify(Neg(r))
                case Mul():
                    if _is_const(l, 0.0) or _is_const(r, 0.0):
                        return ZERO
                    if _is_const(l, 1.0):
                        return r
                    if _is_const(r, 1.0):
                        return l
                    if _is_const(l, -1.0):
                        return simplify(Neg(r))
                    if _is_const(r, -1.0):
                        return simplify(Neg(l))
                case Div():
                    if _is_const(r, 1.0):
                        return l
                    if _is_const(l, 0.0):
                        return ZERO
                case Pow():
                    if _is_const(r, 1.0):
                        return l
                    if _is_const(r, 0.0) or _is_const(l, 1.0):
                        return ONE
            return n
    raise TypeError(f"unknown node {e!r}")


# }}}
