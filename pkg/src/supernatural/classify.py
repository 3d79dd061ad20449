"""Constant-or-strictly-increasing classification of natural expressions.

The classifier follows the inductive argument case by case and never samples
values; the constant value is computed only for the expression as a whole.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .expr import DEFAULT_BUDGET, Add, Const, EvalBudget, Expr, Mul, Pow, Var, evaluate


@dataclass(frozen=True)
class Constant:
    value: int

    def __str__(self):
        return f"constant {self.value}"


@dataclass(frozen=True)
class StrictlyIncreasing:
    def __str__(self):
        return "strictly increasing"


Classification = Union[Constant, StrictlyIncreasing]


def is_one(e: Expr) -> bool:
    """Whether a constant expression equals 1, decided without evaluating it.

    Sums are at least 2; a product is 1 only if both factors are; a power
    is 1 exactly when its base is (every exponent is at least 1).
    """
    if isinstance(e, Const):
        return e.value == 1
    if isinstance(e, Mul):
        return is_one(e.left) and is_one(e.right)
    if isinstance(e, Pow):
        return is_one(e.base)
    return False


def is_constant(e: Expr) -> bool:
    if isinstance(e, Var):
        return False
    if isinstance(e, Const):
        return True
    if isinstance(e, (Add, Mul)):
        return is_constant(e.left) and is_constant(e.right)
    base_const = is_constant(e.base)
    exp_const = is_constant(e.exponent)
    if base_const and exp_const:
        return True
    if base_const and not exp_const:
        # constant base over increasing exponent: 1^h is constant, c^h with c > 1 increases
        return is_one(e.base)
    # increasing base: with increasing exponent (both increasing), or any
    # constant exponent g >= 1 (h^g increases), the power increases
    return False


def classify(e: Expr, budget: EvalBudget = DEFAULT_BUDGET) -> Classification:
    """Constant(value) or StrictlyIncreasing.

    Increasing combined with increasing stays increasing under +, * and ^;
    increasing combined with a constant stays increasing under +, * and as
    the base of ^; a constant base c raised to an increasing exponent is
    increasing unless c = 1, when it is the constant 1. Raises
    BudgetExceeded if a constant's value does not fit the budget.
    """
    if is_constant(e):
        return Constant(evaluate(e, 1, budget))
    return StrictlyIncreasing()
