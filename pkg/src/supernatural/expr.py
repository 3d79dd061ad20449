"""Natural-function expressions: AST, text grammar, exact evaluation, shift.

Grammar (whitespace ignored)::

    sum     := product ('+' product)*
    product := power ('*' power)*
    power   := atom ('^' power)?
    atom    := INTEGER | 'n' | '(' sum ')'

``^`` binds tightest and is right-associative, so ``2^2^n`` is ``2^(2^n)``.
Integer literals must be at least 1.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import BudgetExceeded, DomainError, ExprSyntaxError

DEFAULT_MAX_BITS = 1 << 20


@dataclass(frozen=True)
class Var:
    def __repr__(self):
        return "Var"


@dataclass(frozen=True)
class Const:
    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise TypeError(f"constant must be an int, got {self.value!r}")
        if self.value < 1:
            raise DomainError(f"constant {self.value} is not a positive integer")


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: "Expr"


Expr = Union[Var, Const, Add, Mul, Pow]
BinOp = (Add, Mul, Pow)

VAR = Var()

SYMBOLS = {Add: "+", Mul: "*", Pow: "^"}


def children(e: Expr) -> tuple:
    if isinstance(e, Pow):
        return (e.base, e.exponent)
    if isinstance(e, (Add, Mul)):
        return (e.left, e.right)
    return ()


def operator_count(e: Expr) -> int:
    return sum(1 for node in walk(e) if isinstance(node, BinOp))


def walk(e: Expr):
    """Pre-order traversal of every node (including repeats)."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def has_var(e: Expr) -> bool:
    return any(isinstance(node, Var) for node in walk(e))


@dataclass(frozen=True)
class EvalBudget:
    max_bits: int = DEFAULT_MAX_BITS

    def __post_init__(self):
        if self.max_bits < 1:
            raise ValueError("max_bits must be >= 1")


DEFAULT_BUDGET = EvalBudget()


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(n)|([-+*^()])|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(4) is not None:
            raise ExprSyntaxError(f"unexpected character {m.group(4)!r}", m.start(4))
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("n", "n", m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at_op(self, symbol):
        kind, value, _ = self.peek()
        return kind == "op" and value == symbol

    def parse(self):
        e = self.sum()
        kind, value, pos = self.peek()
        if kind != "end":
            if value == "-":
                raise ExprSyntaxError("subtraction is not part of the language", pos)
            raise ExprSyntaxError(f"unexpected {value!r}", pos)
        return e

    def sum(self):
        e = self.product()
        while self.at_op("+"):
            self.take()
            e = Add(e, self.product())
        return e

    def product(self):
        e = self.power()
        while self.at_op("*"):
            self.take()
            e = Mul(e, self.power())
        return e

    def power(self):
        base = self.atom()
        if self.at_op("^"):
            self.take()
            return Pow(base, self.power())
        return base

    def atom(self):
        kind, value, pos = self.take()
        if kind == "int":
            number = int(value)
            if number == 0:
                raise DomainError(f"literal 0 at offset {pos}: constants must be >= 1")
            return Const(number)
        if kind == "n":
            return VAR
        if kind == "op" and value == "(":
            e = self.sum()
            if not self.at_op(")"):
                _, got, where = self.peek()
                raise ExprSyntaxError(f"expected ')' but found {got or 'end of input'!r}", where)
            self.take()
            return e
        if kind == "op" and value in "+-" and self.peek()[0] == "int":
            raise DomainError(f"signed literal at offset {pos}: constants are unsigned and >= 1")
        if kind == "end":
            raise ExprSyntaxError("unexpected end of input", pos)
        raise ExprSyntaxError(f"unexpected {value!r}", pos)


def parse(text: str) -> Expr:
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression")
    return _Parser(text).parse()


# -- rendering -------------------------------------------------------------

_PREC = {Add: 1, Mul: 2, Pow: 3}


def _prec(e):
    return _PREC.get(type(e), 4)


def render(e: Expr) -> str:
    """Text with the fewest parentheses that still parses back to ``e``."""
    if isinstance(e, Var):
        return "n"
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Pow):
        left, right = e.base, e.exponent
        left_s = render(left)
        if _prec(left) <= 3:
            left_s = f"({left_s})"
        right_s = render(right)
        if _prec(right) < 3:
            right_s = f"({right_s})"
        return f"{left_s}^{right_s}"
    p = _prec(e)
    left_s = render(e.left)
    if _prec(e.left) < p:
        left_s = f"({left_s})"
    right_s = render(e.right)
    if _prec(e.right) <= p:
        right_s = f"({right_s})"
    return f"{left_s}{SYMBOLS[type(e)]}{right_s}"


# -- evaluation ------------------------------------------------------------

def _pow_bits_exceed(base: int, exponent: int, max_bits: int) -> bool:
    # bit_length(base**exponent) == floor(exponent * log2(base)) + 1
    if base == 1:
        return False
    if exponent >= max_bits:
        return True
    return exponent * math.log2(base) >= max_bits


def evaluate(e: Expr, n: int, budget: EvalBudget = DEFAULT_BUDGET) -> int:
    """Exact value of ``e`` at ``n``.

    Raises BudgetExceeded, naming the offending subexpression, rather than
    build any intermediate longer than ``budget.max_bits`` bits.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return _eval(e, n, budget.max_bits)


def _eval(e, n, max_bits):
    if isinstance(e, Var):
        value = n
    elif isinstance(e, Const):
        value = e.value
    elif isinstance(e, Pow):
        base = _eval(e.base, n, max_bits)
        if base == 1:
            return 1
        exponent = _eval(e.exponent, n, max_bits)
        if _pow_bits_exceed(base, exponent, max_bits):
            raise BudgetExceeded(
                f"{render(e)} exceeds {max_bits} bits at n={n}", subexpr=e
            )
        return base**exponent
    else:
        left = _eval(e.left, n, max_bits)
        right = _eval(e.right, n, max_bits)
        if isinstance(e, Add):
            value = left + right
        else:
            if left.bit_length() + right.bit_length() - 1 > max_bits:
                raise BudgetExceeded(
                    f"{render(e)} exceeds {max_bits} bits at n={n}", subexpr=e
                )
            value = left * right
    if value.bit_length() > max_bits:
        raise BudgetExceeded(f"{render(e)} exceeds {max_bits} bits at n={n}", subexpr=e)
    return value


# -- substitution ----------------------------------------------------------

def substitute(e: Expr, replacement: Expr) -> Expr:
    if isinstance(e, Var):
        return replacement
    if isinstance(e, Const):
        return e
    if isinstance(e, Pow):
        return Pow(substitute(e.base, replacement), substitute(e.exponent, replacement))
    return type(e)(substitute(e.left, replacement), substitute(e.right, replacement))


def shift(e: Expr, k: int) -> Expr:
    """The expression for ``n -> f(n + k)``."""
    if k < 1:
        raise DomainError(f"shift amount must be >= 1, got {k}")
    return substitute(e, Add(VAR, Const(k)))
