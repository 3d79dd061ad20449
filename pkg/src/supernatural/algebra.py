"""Elevation-structure laws as rewrite rules, normal forms, length, enumeration.

The seven laws, for all a, b, c::

    (i)   a + b = b + a                 (ii)  a + (b + c) = (a + b) + c
    (iii) a * b = b * a                 (iv)  a * (b * c) = (a * b) * c
    (v)   a * (b + c) = a*b + a*c       (vi)  a^b * a^c = a^(b + c)
    (vii) (a^b)^c = a^(b * c)

``normalize`` only runs orientations that never grow the tree, so it always
terminates; the result is a best-effort representative, not a canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import BudgetExceeded, SizeLimitExceeded
from .expr import (
    DEFAULT_BUDGET,
    VAR,
    Add,
    Const,
    EvalBudget,
    Expr,
    Mul,
    Pow,
    Var,
    children,
    evaluate,
    operator_count,
    _pow_bits_exceed,
)

# -- total order on ASTs ---------------------------------------------------

_RANK = {Var: 0, Add: 1, Mul: 2, Pow: 3, Const: 4}


def order_key(e: Expr) -> tuple:
    """Node kind first, then constant value, then children left to right.

    Constants sort last so sums read ``n+1`` rather than ``1+n``.
    """
    if isinstance(e, Const):
        return (4, e.value)
    if isinstance(e, Var):
        return (0,)
    return (_RANK[type(e)],) + tuple(order_key(c) for c in children(e))


# -- rewrite rules ---------------------------------------------------------

@dataclass(frozen=True)
class RewriteRule:
    """``match`` returns the bound subterms or None; ``build`` assembles the result."""

    name: str
    match: Callable[[Expr], Optional[tuple]]
    build: Callable[..., Expr]

    def apply(self, e: Expr) -> Optional[Expr]:
        bound = self.match(e)
        if bound is None:
            return None
        return self.build(*bound)


def _m_binary(kind):
    def match(e):
        return (e.left, e.right) if isinstance(e, kind) else None
    return match


def _m_right_nested(kind):
    def match(e):
        if isinstance(e, kind) and isinstance(e.right, kind):
            return (e.left, e.right.left, e.right.right)
        return None
    return match


def _m_left_nested(kind):
    def match(e):
        if isinstance(e, kind) and isinstance(e.left, kind):
            return (e.left.left, e.left.right, e.right)
        return None
    return match


def _m_distribute(e):
    if isinstance(e, Mul) and isinstance(e.right, Add):
        return (e.left, e.right.left, e.right.right)
    return None


def _m_factor(e):
    if (
        isinstance(e, Add)
        and isinstance(e.left, Mul)
        and isinstance(e.right, Mul)
        and e.left.left == e.right.left
    ):
        return (e.left.left, e.left.right, e.right.right)
    return None


def _m_merge_powers(e):
    if (
        isinstance(e, Mul)
        and isinstance(e.left, Pow)
        and isinstance(e.right, Pow)
        and e.left.base == e.right.base
    ):
        return (e.left.base, e.left.exponent, e.right.exponent)
    return None


def _m_split_power(e):
    if isinstance(e, Pow) and isinstance(e.exponent, Add):
        return (e.base, e.exponent.left, e.exponent.right)
    return None


def _m_flatten_tower(e):
    if isinstance(e, Pow) and isinstance(e.base, Pow):
        return (e.base.base, e.base.exponent, e.exponent)
    return None


def _m_stack_tower(e):
    if isinstance(e, Pow) and isinstance(e.exponent, Mul):
        return (e.base, e.exponent.left, e.exponent.right)
    return None


def _m_fold(e):
    if isinstance(e, (Add, Mul, Pow)):
        a, b = children(e)
        if isinstance(a, Const) and isinstance(b, Const):
            if isinstance(e, Pow) and _pow_bits_exceed(a.value, b.value, DEFAULT_BUDGET.max_bits):
                return None
            return (type(e), a.value, b.value)
    return None


def _b_fold(kind, a, b):
    if kind is Add:
        return Const(a + b)
    if kind is Mul:
        return Const(a * b)
    return Const(a**b)


def _m_mul_one(e):
    if isinstance(e, Mul):
        if e.left == Const(1):
            return (e.right,)
        if e.right == Const(1):
            return (e.left,)
    return None


def _m_pow_one(e):
    if isinstance(e, Pow) and e.exponent == Const(1):
        return (e.base,)
    return None


def _m_one_pow(e):
    if isinstance(e, Pow) and e.base == Const(1):
        return ()
    return None


AXIOM_RULES = (
    RewriteRule("i:add-comm", _m_binary(Add), lambda a, b: Add(b, a)),
    RewriteRule("ii:add-assoc", _m_right_nested(Add), lambda a, b, c: Add(Add(a, b), c)),
    RewriteRule("ii:add-assoc-rev", _m_left_nested(Add), lambda a, b, c: Add(a, Add(b, c))),
    RewriteRule("iii:mul-comm", _m_binary(Mul), lambda a, b: Mul(b, a)),
    RewriteRule("iv:mul-assoc", _m_right_nested(Mul), lambda a, b, c: Mul(Mul(a, b), c)),
    RewriteRule("iv:mul-assoc-rev", _m_left_nested(Mul), lambda a, b, c: Mul(a, Mul(b, c))),
    RewriteRule("v:distribute", _m_distribute, lambda a, b, c: Add(Mul(a, b), Mul(a, c))),
    RewriteRule("v:factor", _m_factor, lambda a, b, c: Mul(a, Add(b, c))),
    RewriteRule("vi:merge-powers", _m_merge_powers, lambda a, b, c: Pow(a, Add(b, c))),
    RewriteRule("vi:split-power", _m_split_power, lambda a, b, c: Mul(Pow(a, b), Pow(a, c))),
    RewriteRule("vii:flatten-tower", _m_flatten_tower, lambda a, b, c: Pow(a, Mul(b, c))),
    RewriteRule("vii:stack-tower", _m_stack_tower, lambda a, b, c: Pow(Pow(a, b), c)),
)

FOLDING_RULES = (
    RewriteRule("fold", _m_fold, _b_fold),
    RewriteRule("mul-one", _m_mul_one, lambda a: a),
    RewriteRule("pow-one", _m_pow_one, lambda a: a),
    RewriteRule("one-pow", _m_one_pow, lambda: Const(1)),
)

RULES = AXIOM_RULES + FOLDING_RULES


# -- normalization ---------------------------------------------------------

def _flatten(e, kind, out):
    if isinstance(e, kind):
        _flatten(e.left, kind, out)
        _flatten(e.right, kind, out)
    else:
        out.append(e)
    return out


def _chain(kind, items):
    result = items[0]
    for item in items[1:]:
        result = kind(result, item)
    return result


def _norm_add(left, right):
    terms = _flatten(left, Add, []) + _flatten(right, Add, [])
    total = sum(t.value for t in terms if isinstance(t, Const))
    rest = sorted((t for t in terms if not isinstance(t, Const)), key=order_key)
    if total:
        rest.append(Const(total))
    return _chain(Add, rest)


def _norm_mul(left, right):
    factors = _flatten(left, Mul, []) + _flatten(right, Mul, [])
    product = 1
    powers = {}  # base -> exponents, insertion ordered
    others = []
    for f in factors:
        if isinstance(f, Const):
            product *= f.value
        elif isinstance(f, Pow):
            powers.setdefault(f.base, []).append(f.exponent)
        else:
            others.append(f)
    for base, exponents in powers.items():
        if len(exponents) == 1:
            others.append(Pow(base, exponents[0]))
        else:
            merged = _norm_pow(base, _chain(Add, sorted(exponents, key=order_key)))
            if isinstance(merged, Const):
                product *= merged.value
            else:
                others.append(merged)
    others.sort(key=order_key)
    if product != 1 or not others:
        others.append(Const(product))
    return _chain(Mul, others)


def _norm_pow(base, exponent):
    if exponent == Const(1):
        return base
    if base == Const(1):
        return Const(1)
    if isinstance(base, Const) and isinstance(exponent, Const):
        if not _pow_bits_exceed(base.value, exponent.value, DEFAULT_BUDGET.max_bits):
            return Const(base.value**exponent.value)
    if isinstance(base, Pow):
        return _norm_pow(base.base, _norm_mul(base.exponent, exponent))
    return Pow(base, exponent)


def _pass(e):
    if isinstance(e, (Var, Const)):
        return e
    if isinstance(e, Pow):
        return _norm_pow(_pass(e.base), _pass(e.exponent))
    left, right = _pass(e.left), _pass(e.right)
    if isinstance(e, Add):
        return _norm_add(left, right)
    return _norm_mul(left, right)


def normalize(e: Expr, max_passes: int = 64) -> Expr:
    """Rewrite to a fixpoint of folding, unit elimination, (vi), (vii) and sorting."""
    for _ in range(max_passes):
        nxt = _pass(e)
        if nxt == e:
            return e
        e = nxt
    return e


# -- sampled semantic equality ---------------------------------------------

@dataclass(frozen=True)
class AgreeOnSamples:
    points: tuple


@dataclass(frozen=True)
class Differ:
    n: int
    left: int
    right: int


def semantic_equal(e1: Expr, e2: Expr, sample_points: Iterable[int],
                   budget: EvalBudget = DEFAULT_BUDGET):
    """``Differ`` proves inequality; ``AgreeOnSamples`` is only evidence."""
    points = tuple(sample_points)
    if not points:
        raise ValueError("sample_points must be non-empty")
    for n in points:
        v1 = evaluate(e1, n, budget)
        v2 = evaluate(e2, n, budget)
        if v1 != v2:
            return Differ(n, v1, v2)
    return AgreeOnSamples(points)


# -- syntactic length ------------------------------------------------------

LETTERS = {Add: "A+", Mul: "A*", Pow: "A^"}
_LETTER_KIND = {v: k for k, v in LETTERS.items()}


@dataclass(frozen=True)
class LengthResult:
    """``word`` lists the closure operators in the order they are applied."""

    length: int
    word: tuple


def _dag(e):
    """Distinct internal subterms in bottom-up order, with child indices."""
    index = {}
    nodes = []

    def visit(node):
        if node in index:
            return index[node]
        if isinstance(node, (Var, Const)):
            return None
        kids = tuple(i for i in (visit(c) for c in children(node)) if i is not None)
        index[node] = len(nodes)
        nodes.append((type(node), kids))
        return index[node]

    root = visit(e)
    return nodes, root


def generates(e: Expr, word: Sequence[str]) -> bool:
    """Whether applying ``word`` (in order) to the symbols produces ``e``."""
    nodes, root = _dag(e)
    if root is None:
        return True
    done = set()
    for letter in word:
        kind = _LETTER_KIND[letter]
        ready = [i for i, (k, kids) in enumerate(nodes)
                 if i not in done and k is kind and all(c in done for c in kids)]
        done.update(ready)
    return root in done


def syntactic_length(e: Expr, max_operators: int = 12) -> LengthResult:
    """Shortest word over {A+, A*, A^} generating ``e`` from the symbols.

    Exact iterative-deepening search. Each round completes every pending
    node of the round's kind whose children are already present, which is
    never worse than completing fewer.
    """
    ops = operator_count(e)
    if ops > max_operators:
        raise SizeLimitExceeded(
            f"{ops} operators exceed the exact-search bound {max_operators}", upper_bound=ops
        )
    nodes, root = _dag(e)
    if root is None:
        return LengthResult(0, ())

    height = []
    for _, kids in nodes:
        height.append(1 + max((height[c] for c in kids), default=0))
    count = len(nodes)
    kinds = (Pow, Mul, Add)

    def remaining(done):
        # longest chain of pending nodes, a lower bound on rounds still needed
        need = [0] * count
        for i, (_, kids) in enumerate(nodes):
            if i not in done:
                need[i] = 1 + max((need[c] for c in kids), default=0)
        return max(need)

    def search(done, depth_left, seen):
        if root in done:
            return ()
        if remaining(done) > depth_left:
            return None
        key = (done, depth_left)
        if key in seen:
            return None
        seen.add(key)
        for kind in kinds:
            ready = frozenset(i for i, (k, kids) in enumerate(nodes)
                              if i not in done and k is kind and all(c in done for c in kids))
            if not ready:
                continue
            rest = search(done | ready, depth_left - 1, seen)
            if rest is not None:
                return (LETTERS[kind],) + rest
        return None

    for k in range(height[root], count + 1):
        word = search(frozenset(), k, set())
        if word is not None:
            return LengthResult(len(word), word)
    raise AssertionError("unreachable: the operator count is always achievable")


# -- enumeration -----------------------------------------------------------

def _trees(ops, leaves, memo):
    if ops in memo:
        return memo[ops]
    if ops == 0:
        out = list(leaves)
    else:
        out = []
        for left_ops in range(ops):
            right_ops = ops - 1 - left_ops
            for kind in (Add, Mul, Pow):
                for a in _trees(left_ops, leaves, memo):
                    for b in _trees(right_ops, leaves, memo):
                        out.append(kind(a, b))
    memo[ops] = out
    return out


def enumerate_exprs(max_operators: int, constants: Iterable[int]) -> Iterator[Expr]:
    """Every expression with at most ``max_operators`` operators, normalized, once.

    Order: by operator count of the generating tree, then left-subtree size,
    then operator (+, *, ^), then left and right operands in the same order
    recursively; leaves are ``n`` followed by the constants ascending.
    """
    consts = sorted(set(constants))
    if not consts:
        raise ValueError("constants must be non-empty")
    leaves = [VAR] + [Const(c) for c in consts]
    seen = set()
    memo = {}
    for ops in range(max_operators + 1):
        for tree in _trees(ops, leaves, memo):
            try:
                form = normalize(tree)
            except BudgetExceeded:  # pragma: no cover - normalize never evaluates past budget
                form = tree
            if form not in seen:
                seen.add(form)
                yield form
