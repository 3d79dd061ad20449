"""Natural functions: expressions in n built from positive constants, +, * and ^.

Parsing, exact evaluation, structural classification, an elevation-law
rewriter, and a composite-witness harness for the claim that no
non-constant natural function outputs only primes.
"""

from .algebra import (
    AgreeOnSamples,
    Differ,
    LengthResult,
    RewriteRule,
    enumerate_exprs,
    generates,
    normalize,
    semantic_equal,
    syntactic_length,
)
from .arith import Factorization, PrimalityVerdict, factor, is_prime
from .classify import Constant, StrictlyIncreasing, classify
from .conjecture import (
    CompositeWitness,
    Exhausted,
    ScanRow,
    exponential_certificate,
    infinitude_samples,
    polynomial_certificate,
    scan_family,
    smallest_composite_witness,
)
from .errors import (
    BudgetExceeded,
    DomainError,
    ExprSyntaxError,
    NaturalError,
    NotIncreasing,
    NotPolynomial,
    SearchExhausted,
    SizeLimitExceeded,
    UnitInput,
)
from .expr import VAR, Add, Const, EvalBudget, Mul, Pow, Var, evaluate, parse, render, shift

__all__ = [
    "Add",
    "AgreeOnSamples",
    "BudgetExceeded",
    "CompositeWitness",
    "Const",
    "Constant",
    "Differ",
    "DomainError",
    "EvalBudget",
    "Exhausted",
    "ExprSyntaxError",
    "Factorization",
    "LengthResult",
    "Mul",
    "NaturalError",
    "NotIncreasing",
    "NotPolynomial",
    "Pow",
    "PrimalityVerdict",
    "RewriteRule",
    "ScanRow",
    "SearchExhausted",
    "SizeLimitExceeded",
    "StrictlyIncreasing",
    "UnitInput",
    "VAR",
    "Var",
    "classify",
    "enumerate_exprs",
    "evaluate",
    "exponential_certificate",
    "factor",
    "generates",
    "infinitude_samples",
    "is_prime",
    "normalize",
    "parse",
    "polynomial_certificate",
    "render",
    "scan_family",
    "semantic_equal",
    "shift",
    "smallest_composite_witness",
    "syntactic_length",
]

__version__ = "0.1.0"
