"""Exit criteria. Each test records one PASS/FAIL line, printed after the run."""

import contextlib
import itertools
import random
import time

import pytest

from conftest import ACCEPTANCE
from oracles import closure_generates, monotonicity_oracle, random_expr
from supernatural import report
from supernatural.algebra import enumerate_exprs, generates, normalize, syntactic_length
from supernatural.arith import COMPOSITE, Primality, factor, is_prime
from supernatural.classify import Constant, StrictlyIncreasing, classify, is_constant
from supernatural.cli import main
from supernatural.conjecture import exponential_certificate, polynomial_certificate
from supernatural.errors import BudgetExceeded
from supernatural.expr import VAR, Add, Const, EvalBudget, Mul, Pow, evaluate, parse


@contextlib.contextmanager
def criterion(number, detail):
    info = {"detail": detail}
    try:
        yield info
    except BaseException:
        ACCEPTANCE[number] = (False, info["detail"])
        raise
    ACCEPTANCE[number] = (True, info["detail"])


def cli_csv(capsys, *argv):
    start = time.perf_counter()
    code = main(list(argv) + ["--format", "csv"])
    elapsed = time.perf_counter() - start
    out, _ = capsys.readouterr()
    assert code == 0
    return report.parse_csv(out), elapsed


def test_criterion_1_euler(capsys):
    with criterion(1, "witness 2^2^n+1 --n-max 6 -> n=5, 4294967297 = 641*6700417, < 5 s") as c:
        rows, elapsed = cli_csv(capsys, "witness", "2^2^n+1", "--n-max", "6")
        assert rows == [{"function": "2^2^n+1", "smallest_composite_n": 5, "value": 4294967297,
                         "factorization": "641*6700417", "primes_before": 4}]
        assert elapsed < 5
        c["detail"] += f" ({elapsed:.2f} s)"


def test_criterion_2_f46(capsys):
    with criterion(2, "witness 2^2^n+93 --n-max 8 -> 6 primes, composite at n=7, < 120 s") as c:
        rows, elapsed = cli_csv(capsys, "witness", "2^2^n+93", "--n-max", "8", "--effort", "standard")
        (row,) = rows
        assert row["primes_before"] == 6 and row["smallest_composite_n"] == 7
        assert row["value"] == 2**128 + 93
        assert is_prime(row["value"]) == COMPOSITE
        parts = row["factorization"].split("*")
        assert len(parts) >= 2 or row["factorization"].startswith("C")
        assert elapsed < 120
        c["detail"] += f" ({elapsed:.2f} s, {row['factorization']})"


def test_criterion_3_kscan(capsys):
    with criterion(3, "scan c=1..2601, n<=7: c=1 and c=93 rows, another c with 6 primes, "
                      "primes_before>=4 frequent, < 1 h at quick effort") as c:
        rows, elapsed = cli_csv(capsys, "scan", "--c-from", "1", "--c-to", "2601",
                                "--n-check", "7", "--effort", "quick", "--jobs", "2")
        assert len(rows) == 1301
        by_fn = {r["function"]: r for r in rows}
        fermat = by_fn["2^2^n+1"]
        assert fermat["smallest_composite_n"] == 5 and fermat["factorization"] == "641*6700417"
        f46 = by_fn["2^2^n+93"]
        assert f46["primes_before"] == 6 and f46["smallest_composite_n"] == 7
        others = [r["function"] for r in rows
                  if r["primes_before"] >= 6 and r["function"] != "2^2^n+93"]
        assert others
        frequent = sum(r["primes_before"] >= 4 for r in rows)
        assert frequent >= 10
        assert elapsed < 3600
        c["detail"] += (f" (other six-prime: {', '.join(others)}; primes_before>=4 for "
                        f"{frequent}/1301 c; {elapsed:.1f} s)")


def _random_polynomial(rng):
    while True:
        coeffs = [rng.randint(0, 9) for _ in range(rng.randint(2, 5))]
        if any(coeffs[1:]):
            break
    terms = []
    for k, a in enumerate(coeffs):
        if a == 0:
            continue
        monomial = Const(a) if k == 0 else Mul(Const(a), Pow(VAR, Const(k)))
        terms.append(monomial)
    e = terms[0]
    for t in terms[1:]:
        e = Add(e, t)
    return e, coeffs


def test_criterion_4_polynomial_certificates():
    with criterion(4, "200 random polynomials (deg<=4, coeff<=9): certificate conditions hold, "
                      "values composite") as c:
        rng = random.Random(20240601)
        for _ in range(200):
            e, coeffs = _random_polynomial(rng)
            f = lambda n: sum(a * n**k for k, a in enumerate(coeffs))  # noqa: E731
            w = polynomial_certificate(e)
            n0, p = w.provenance.base_index, w.provenance.prime
            assert w.index == n0 + p and w.value == f(w.index)
            assert f(n0) % p == 0 and f(n0 + p) % p == 0 and 1 < f(n0) < f(n0 + p)
            assert is_prime(w.value) == COMPOSITE
        c["detail"] += " (200/200)"


def test_criterion_5_exponential_certificates():
    with criterion(5, "a in 2..20, b in 0..20: exponential certificates sound, checked by factor") as c:
        checked = 0
        for a, b in itertools.product(range(2, 21), range(0, 21)):
            w = exponential_certificate(a, b, effort="quick")
            p = w.provenance.prime if hasattr(w.provenance, "prime") else None
            assert w.value == a**w.index + b
            if p is not None:
                assert w.index == 2 + p - 1
                assert (a * a + b) % p == 0 and w.value % p == 0 and a % p != 0
                assert 1 < a * a + b < w.value
            f = factor(w.value, "quick")
            assert f.value == w.value and f.part_count >= 2
            assert is_prime(w.value) == COMPOSITE
            checked += 1
        assert checked == 19 * 21
        c["detail"] += f" ({checked}/{checked})"


def test_criterion_6_classifier_oracle():
    with criterion(6, "enumerate(3, {1,2,3}): classify matches the 20-point oracle") as c:
        corpus = list(enumerate_exprs(3, {1, 2, 3}))
        too_big = 0
        for e in corpus:
            kind, value = monotonicity_oracle(e)
            assert kind in ("constant", "increasing"), e
            assert is_constant(e) == (kind == "constant"), e
            if kind == "increasing":
                assert classify(e) == StrictlyIncreasing(), e
            elif value is None:
                # constant past the evaluation budget: the contract is BudgetExceeded
                with pytest.raises(BudgetExceeded):
                    classify(e)
                too_big += 1
            else:
                assert classify(e) == Constant(value), e
        c["detail"] += (f" ({len(corpus)}/{len(corpus)} verdicts agree; {too_big} constants "
                        f"exceed the 2^20-bit budget and raise BudgetExceeded)")


LAWS = (
    lambda a, b, c: a + b == b + a,
    lambda a, b, c: a + (b + c) == (a + b) + c,
    lambda a, b, c: b * a == a * b,
    lambda a, b, c: a * (b * c) == (a * b) * c,
    lambda a, b, c: a * (b + c) == a * b + a * c,
    lambda a, b, c: a**b * a**c == a ** (b + c),
    lambda a, b, c: (a**b) ** c == a ** (b * c),
)


def test_criterion_7_axioms_and_normalize():
    with criterion(7, "10,000 triples x 7 laws; 1,000 expressions normalize-preserving on n=1..8") as c:
        rng = random.Random(7)
        for _ in range(10_000):
            a = rng.randint(1, 2**64)
            b, cc = rng.randint(1, 12), rng.randint(1, 12)
            assert all(law(a, b, cc) for law in LAWS), (a, b, cc)
        budget = EvalBudget(1 << 16)
        compared = both_overflow = 0
        for _ in range(1000):
            e = random_expr(rng, rng.randint(1, 6), max_const=5)
            form = normalize(e)
            for n in range(1, 9):
                try:
                    before = evaluate(e, n, budget)
                except BudgetExceeded:
                    with pytest.raises(BudgetExceeded):
                        evaluate(form, n, budget)
                    both_overflow += 1
                    continue
                assert evaluate(form, n, budget) == before, (e, form, n)
                compared += 1
        c["detail"] += f" (0 violations; {compared} points compared, {both_overflow} overflow on both sides)"


def test_criterion_8_infinitude(capsys):
    with criterion(8, "infinitude 2^2^n+1 --count 2 -> n=5, n=6; n=6 factors rebuild 2^64+1") as c:
        rows, _ = cli_csv(capsys, "infinitude", "2^2^n+1", "--count", "2")
        assert [r["index"] for r in rows] == [5, 6]
        assert rows[1]["value"] == 2**64 + 1
        primes = [int(p) for p in rows[1]["factorization"].split("*")]
        assert primes == [274177, 67280421310721]
        product = 1
        for p in primes:
            assert is_prime(p).kind is Primality.PRIME
            product *= p
        assert product == 2**64 + 1
        c["detail"] += f" ({rows[1]['factorization']})"


def test_criterion_9_length():
    with criterion(9, "syntactic length 0 for symbols, 3 for 2^2^n+1 with a replayable word") as c:
        assert syntactic_length(VAR).length == 0
        assert syntactic_length(Const(7)).length == 0
        fermat = parse("2^2^n+1")
        result = syntactic_length(fermat)
        assert result.length == 3
        assert generates(fermat, result.word) and closure_generates(fermat, result.word)
        for k in range(3):
            for word in itertools.product(("A+", "A*", "A^"), repeat=k):
                assert not closure_generates(fermat, word) and not generates(fermat, word)
        c["detail"] += f" (word {' '.join(result.word)})"
