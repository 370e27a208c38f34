"""Expression language for tower elements.

Grammar::

    expr   := ["-"] term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := atom ("^" UINT)?
    atom   := RATIONAL | SYMBOL | "kappa" "(" INT "," UINT ")"
            | "pushpi" "(" expr ")" | "pushgamma" "(" expr ")" | "(" expr ")"

``RATIONAL`` is ``INT ("/" UINT)?`` where ``INT`` may carry a sign, so
``-3/4`` is one literal. A leading ``-`` before anything else negates the
first term. Whitespace is ignored and juxtaposition is not multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .poly import Poly, VariableTable
from .presentation import kappa
from .tower import FULL_BASE, TowerElement, TowerRing, make_tower, push_gamma, push_pi

SYMBOLS = ("a1", "a2", "a2p", "b1", "c2", "z", "zeta", "n1", "n2", "u")
FUNCTIONS = ("kappa", "pushpi", "pushgamma")
FLAVOR_SYMBOLS = {
    "full": {"a1", "a2", "a2p", "b1", "c2", "z", "zeta"},
    "reduced": {"a1", "a2", "a2p", "b1", "c2", "z", "zeta"},
    "splitting": {"a1", "a2", "a2p", "b1", "c2", "n1", "n2", "z", "zeta"},
    "rigid": {"u"},
}


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at byte {offset}{detail}")


class EvalError(ValueError):
    pass


# -- AST -----------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Kappa:
    i: int
    j: int


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class PushPi:
    arg: "Node"


@dataclass(frozen=True)
class PushGamma:
    arg: "Node"


Node = Union[Num, Sym, Kappa, Neg, Add, Sub, Mul, Pow, PushPi, PushGamma]


# -- lexer ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/(),]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op" or "end"
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0

    def byte_at(p: int) -> int:
        return len(text[:p].encode("utf-8"))

    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if not rest.strip():
                out.append(Token("end", "", len(text.encode("utf-8"))))
                return out
            skip = len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {rest.lstrip()[0]!r}", byte_at(pos + skip))
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), byte_at(m.start(kind))))
        pos = m.end()


# -- parser --------------------------------------------------------------------

_ATOM_START = ("INT", "SYMBOL", "kappa", "pushpi", "pushgamma", "(")


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def take(self, text: str, expected: tuple[str, ...] | None = None) -> Token:
        if not self.at(text):
            self.fail(expected or (text,))
        t = self.tok
        self.k += 1
        return t

    def fail(self, expected: tuple[str, ...]):
        t = self.tok
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"unexpected {what}", t.offset, expected)

    def uint(self) -> int:
        if self.tok.kind != "num":
            self.fail(("UINT",))
        v = int(self.tok.text)
        self.k += 1
        return v

    def int_(self) -> tuple[int, int]:
        start = self.tok.offset
        sign = 1
        if self.at("-"):
            self.k += 1
            sign = -1
        if self.tok.kind != "num":
            self.fail(("INT",))
        return sign * self.uint(), start

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            self.fail(("+", "-", "*", "^", "end of input"))
        return node

    def next_is_num(self) -> bool:
        return self.toks[self.k + 1].kind == "num"

    def expr(self) -> Node:
        if self.at("-") and not self.next_is_num():
            self.k += 1
            node: Node = Neg(self.term())
        else:
            node = self.term()
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.k += 1
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.at("*"):
            self.k += 1
            node = Mul(node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.atom()
        if self.at("^"):
            self.k += 1
            node = Pow(node, self.uint())
        return node

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num" or (self.at("-") and self.next_is_num()):
            sign = 1
            if self.at("-"):
                sign = -1
                self.k += 1
            val = Fraction(sign * int(self.tok.text))
            self.k += 1
            if self.at("/"):
                self.k += 1
                den_tok = self.tok
                den = self.uint()
                if den == 0:
                    raise ParseError("zero denominator", den_tok.offset)
                val = val / den
            return Num(val)
        if t.kind == "name":
            name = t.text
            if name in SYMBOLS:
                self.k += 1
                return Sym(name)
            if name == "kappa":
                self.k += 1
                self.take("(")
                i, off = self.int_()
                self.take(",")
                j = self.uint()
                self.take(")")
                if i < -1:
                    raise ParseError(f"kappa index i = {i} is below -1", off)
                return Kappa(i, j)
            if name in ("pushpi", "pushgamma"):
                self.k += 1
                self.take("(")
                inner = self.expr()
                self.take(")")
                return PushPi(inner) if name == "pushpi" else PushGamma(inner)
            raise ParseError(f"unknown name {name!r}", t.offset, _ATOM_START)
        if self.at("("):
            self.k += 1
            inner = self.expr()
            self.take(")")
            return inner
        self.fail(_ATOM_START)


def parse(text: str) -> Node:
    return _Parser(text).parse()


# -- evaluation ----------------------------------------------------------------


class RigidRing:
    """``Q[u]/(u^(g+1))``."""

    def __init__(self, g: int):
        self.g = g
        self.table = VariableTable.of(("u", 1))

    def truncate(self, p: Poly) -> Poly:
        return Poly(self.table, {e: c for e, c in p.terms.items() if e[0] <= self.g})


Value = Union[TowerElement, Poly]


def _flavor_kind(flavor: str) -> str:
    return "splitting" if flavor.startswith("splitting") else flavor


def make_context(g: int, d: int, flavor: str = "full"):
    if flavor == "rigid":
        if g < 2:
            raise ValueError(f"genus must be at least 2, got {g}")
        return RigidRing(g)
    return make_tower(g, d, flavor)


def _kappa_value(T: TowerRing, i: int, j: int) -> TowerElement:
    if (i, j) == (-1, 0):
        raise EvalError("kappa(-1,0) has degree -1 and is not defined")
    if T.flavor not in ("full", "reduced"):
        raise EvalError(f"kappa is not available in the {T.flavor} flavor")
    v = kappa(i, j, T.g, T.d).value
    if T.flavor == "full":
        # canonical lift of a Q[a1, a2p] class to the full base ring
        v = v.substitute({}, FULL_BASE)
    return T.lift(v)


def evaluate_node(node: Node, ctx) -> Value:
    if isinstance(ctx, RigidRing):
        return _eval_rigid(node, ctx)
    return _eval_tower(node, ctx)


def _check_symbol(name: str, flavor: str) -> None:
    allowed = FLAVOR_SYMBOLS[_flavor_kind(flavor)]
    if name not in allowed:
        raise EvalError(f"symbol {name!r} is not available in the {flavor} flavor")


def _eval_tower(node: Node, T: TowerRing) -> TowerElement:
    ev = lambda n: _eval_tower(n, T)  # noqa: E731
    if isinstance(node, Num):
        return T.lift(node.value)
    if isinstance(node, Sym):
        _check_symbol(node.name, T.flavor)
        return T.symbol(node.name)
    if isinstance(node, Kappa):
        return _kappa_value(T, node.i, node.j)
    if isinstance(node, Neg):
        return -ev(node.arg)
    if isinstance(node, Add):
        return ev(node.left) + ev(node.right)
    if isinstance(node, Sub):
        return ev(node.left) - ev(node.right)
    if isinstance(node, Mul):
        return ev(node.left) * ev(node.right)
    if isinstance(node, Pow):
        return ev(node.base) ** node.exp
    if isinstance(node, PushGamma):
        return push_gamma(ev(node.arg))
    if isinstance(node, PushPi):
        y = ev(node.arg)
        if y.has_zeta():
            raise EvalError(f"pushpi needs a zeta-free argument, got {y}")
        return T.lift(push_pi(y))
    raise TypeError(f"unknown node {node!r}")


def _eval_rigid(node: Node, R: RigidRing) -> Poly:
    ev = lambda n: _eval_rigid(n, R)  # noqa: E731
    if isinstance(node, Num):
        return R.table.const(node.value)
    if isinstance(node, Sym):
        _check_symbol(node.name, "rigid")
        return R.table.var("u")
    if isinstance(node, (Kappa, PushPi, PushGamma)):
        raise EvalError("kappa and pushforwards are not available in the rigid flavor")
    if isinstance(node, Neg):
        return -ev(node.arg)
    if isinstance(node, Add):
        return ev(node.left) + ev(node.right)
    if isinstance(node, Sub):
        return ev(node.left) - ev(node.right)
    if isinstance(node, Mul):
        return R.truncate(ev(node.left) * ev(node.right))
    if isinstance(node, Pow):
        out = R.table.const(1)
        base = ev(node.base)
        for _ in range(node.exp):
            out = R.truncate(out * base)
        return out
    raise TypeError(f"unknown node {node!r}")


def render_value(v: Value) -> str:
    return str(v.value) if isinstance(v, TowerElement) else str(v)


def evaluate(text_or_node: Union[str, Node], g: int, d: int, flavor: str = "full") -> str:
    """Parse if needed, evaluate in the chosen ring, and render canonically."""
    node = parse(text_or_node) if isinstance(text_or_node, str) else text_or_node
    return render_value(evaluate_node(node, make_context(g, d, flavor)))


def to_text(node: Node) -> str:
    """Fully parenthesized source text for an AST (reparses to the same AST shape)."""
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Kappa):
        return f"kappa({node.i},{node.j})"
    if isinstance(node, Neg):
        inner = to_text(node.arg)
        # "-3" would reparse as a signed literal rather than a negation
        return f"(-({inner}))" if isinstance(node.arg, Num) else f"(-{inner})"
    if isinstance(node, Add):
        return f"({to_text(node.left)} + {to_text(node.right)})"
    if isinstance(node, Sub):
        return f"({to_text(node.left)} - {to_text(node.right)})"
    if isinstance(node, Mul):
        return f"({to_text(node.left)} * {to_text(node.right)})"
    if isinstance(node, Pow):
        base = to_text(node.base)
        # '^' does not chain, so a power base always needs its own parentheses
        return f"({base})^{node.exp}" if isinstance(node.base, Pow) else f"{_wrap(base)}^{node.exp}"
    if isinstance(node, PushPi):
        return f"pushpi({to_text(node.arg)})"
    if isinstance(node, PushGamma):
        return f"pushgamma({to_text(node.arg)})"
    raise TypeError(f"unknown node {node!r}")


def _wrap(s: str) -> str:
    return s if s.startswith("(") or s.isidentifier() or s.isdigit() else f"({s})"
