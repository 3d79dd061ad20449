"""Composite-witness search for non-constant natural functions.

A witness is an index n with f(n) not prime. Searches walk n = 1, 2, ...
and stop at the first output that is not (probably) prime; probable primes
never end a search, so a reported witness is always a genuine composite
(or the unit 1). The two certificate constructions produce witnesses
without searching, by a congruence argument.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

from .algebra import normalize
from .arith import Factorization, factor, is_prime, smallest_prime_factor
from .classify import Constant, classify
from .errors import BudgetExceeded, DomainError, NotIncreasing, NotPolynomial, SearchExhausted
from .expr import (
    DEFAULT_BUDGET,
    VAR,
    Add,
    Const,
    EvalBudget,
    Expr,
    Pow,
    evaluate,
    has_var,
    render,
    shift,
    walk,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Searched:
    def __str__(self):
        return "searched"


@dataclass(frozen=True)
class PolynomialCertificate:
    base_index: int
    prime: int

    def __str__(self):
        return f"polynomial certificate (n0={self.base_index}, p={self.prime})"


@dataclass(frozen=True)
class ExponentialCertificate:
    base_index: int
    prime: int

    def __str__(self):
        return f"exponential certificate (n0={self.base_index}, p={self.prime})"


Provenance = Union[Searched, PolynomialCertificate, ExponentialCertificate]


@dataclass(frozen=True)
class CompositeWitness:
    index: int
    value: int
    factorization: Factorization
    provenance: Provenance = Searched()

    @property
    def unit(self) -> bool:
        """The output 1, which is not prime but has no prime factors."""
        return self.value == 1


@dataclass(frozen=True)
class Exhausted:
    primes_found: int


def _require_increasing(expr: Expr, budget: EvalBudget):
    verdict = classify(expr, budget)
    if isinstance(verdict, Constant):
        raise NotIncreasing(f"{render(expr)} is the constant {verdict.value}")


def _witness(value: int, index: int, effort, seed: int, provenance=Searched()):
    if value == 1:
        return CompositeWitness(index, 1, Factorization(), provenance)
    return CompositeWitness(index, value, factor(value, effort, seed), provenance)


def _probe(expr, n_max, budget, start=1):
    """(index, value) of the first non-prime output in start..n_max, or the prime count."""
    for n in range(start, n_max + 1):
        try:
            value = evaluate(expr, n, budget)
        except BudgetExceeded as exc:
            exc.index = n
            raise
        if value == 1 or is_prime(value).is_composite:
            return n, value
    return None


def smallest_composite_witness(expr: Expr, n_max: int, budget: EvalBudget = DEFAULT_BUDGET,
                               effort="standard", seed: int = 0):
    """First n in 1..n_max with f(n) not prime, as a witness; else Exhausted.

    Raises NotIncreasing for constant functions and BudgetExceeded (with
    ``index`` set) if an output outgrows the budget before a witness appears.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    _require_increasing(expr, budget)
    hit = _probe(expr, n_max, budget)
    if hit is None:
        return Exhausted(n_max)
    index, value = hit
    return _witness(value, index, effort, seed)


# -- certificates ----------------------------------------------------------

def is_polynomial(expr: Expr) -> bool:
    """No power in the normalized form has ``n`` in its exponent."""
    return not any(isinstance(node, Pow) and has_var(node.exponent)
                   for node in walk(normalize(expr)))


def polynomial_certificate(expr: Expr, budget: EvalBudget = DEFAULT_BUDGET,
                           effort="standard", seed: int = 0) -> CompositeWitness:
    """Witness at n0 + p, where p is the smallest prime dividing f(n0) > 1.

    An integer polynomial satisfies f(n0 + p) = f(n0) mod p, so p divides
    both outputs, and f(n0 + p) > f(n0) >= p makes the second composite.
    """
    if not is_polynomial(expr):
        raise NotPolynomial(f"{render(expr)} has n in an exponent")
    _require_increasing(expr, budget)
    n0 = 1 if evaluate(expr, 1, budget) > 1 else 2
    p = smallest_prime_factor(evaluate(expr, n0, budget), effort, seed)
    index = n0 + p
    value = evaluate(expr, index, budget)
    return _witness(value, index, effort, seed, PolynomialCertificate(n0, p))


def exponential_expr(a: int, b: int) -> Expr:
    base = Pow(Const(a), VAR)
    return Add(base, Const(b)) if b else base


def exponential_certificate(a: int, b: int, effort="standard", seed: int = 0) -> CompositeWitness:
    """Witness for n -> a^n + b from n0 = 2 and p the smallest prime dividing f(2).

    If p does not divide a, Fermat's little theorem gives f(2 + p - 1) = f(2)
    mod p. If p divides a, then p <= a < f(2) and f(2) is itself composite.
    """
    if a < 2 or b < 0:
        raise DomainError(f"need a >= 2 and b >= 0, got a={a}, b={b}")
    f2 = a * a + b
    p = smallest_prime_factor(f2, effort, seed)
    if a % p:
        index = 2 + p - 1
        return _witness(a**index + b, index, effort, seed, ExponentialCertificate(2, p))
    return _witness(f2, 2, effort, seed)


# -- family scan -----------------------------------------------------------

@dataclass(frozen=True)
class ScanRow:
    function: str
    smallest_composite_index: Optional[int]
    composite_value: Optional[int]
    factorization: Optional[Factorization]
    primes_before: int
    error: Optional[str] = field(default=None, compare=False)


def fermat_like(c: int) -> Expr:
    """n -> 2^(2^n) + c"""
    return Add(Pow(Const(2), Pow(Const(2), VAR)), Const(c))


def scan_row(expr: Expr, n_check: int, budget: EvalBudget = DEFAULT_BUDGET,
             effort="standard", seed: int = 0) -> ScanRow:
    text = render(expr)
    try:
        result = smallest_composite_witness(expr, n_check, budget, effort, seed)
    except BudgetExceeded as exc:
        return ScanRow(text, None, None, None, exc.index - 1, error=str(exc))
    if isinstance(result, Exhausted):
        return ScanRow(text, None, None, None, result.primes_found)
    return ScanRow(text, result.index, result.value, result.factorization, result.index - 1)


def _scan_one(args):
    c, n_check, budget, effort, seed = args
    return c, scan_row(fermat_like(c), n_check, budget, effort, seed)


def scan_family(c_from: int, c_to: int, n_check: int, budget: EvalBudget = DEFAULT_BUDGET,
                effort="standard", seed: int = 0, jobs: int = 1) -> list:
    """One row per odd c in [c_from, c_to] for n -> 2^(2^n) + c.

    Rows come back sorted by primes_before descending, then c ascending,
    whatever the worker count.
    """
    if c_from < 1 or c_from % 2 == 0 or c_to % 2 == 0:
        raise DomainError("c_from and c_to must be odd, with c_from >= 1")
    if c_from > c_to:
        raise DomainError("c_from must not exceed c_to")
    tasks = [(c, n_check, budget, effort, seed) for c in range(c_from, c_to + 1, 2)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_one, tasks, chunksize=16))
    else:
        results = [_scan_one(t) for t in tasks]
    results.sort(key=lambda cr: cr[0])
    results.sort(key=lambda cr: -cr[1].primes_before)
    return [row for _, row in results]


# -- infinitude sampler ----------------------------------------------------

def infinitude_samples(expr: Expr, count: int, per_shift_n_max: int = 64,
                       budget: EvalBudget = DEFAULT_BUDGET, effort="standard",
                       seed: int = 0) -> list:
    """``count`` witnesses at strictly increasing indices.

    After a witness at q, the search restarts on g(n) = f(n + q), which is
    again natural and non-constant, so any witness d for g gives a new one
    at q + d > q. Raises SearchExhausted with the partial list if some
    shifted search finds nothing within ``per_shift_n_max`` steps.
    """
    _require_increasing(expr, budget)
    found = []
    offset = 0
    while len(found) < count:
        shifted = shift(expr, offset) if offset else expr
        try:
            hit = _probe(shifted, per_shift_n_max, budget)
        except BudgetExceeded as exc:
            raise SearchExhausted(
                f"budget exceeded at index {offset + exc.index} after {len(found)} witnesses",
                found,
            ) from exc
        if hit is None:
            raise SearchExhausted(
                f"no witness in {offset + 1}..{offset + per_shift_n_max} "
                f"after {len(found)} witnesses",
                found,
            )
        d, value = hit
        q = offset + d
        log.debug("witness %d at index %d", len(found) + 1, q)
        found.append(_witness(value, q, effort, seed))
        offset = q
    return found
