import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from supernatural.arith import COMPOSITE, Factorization, is_prime
from supernatural.conjecture import (
    CompositeWitness,
    ExponentialCertificate,
    Exhausted,
    PolynomialCertificate,
    Searched,
    exponential_certificate,
    fermat_like,
    infinitude_samples,
    is_polynomial,
    polynomial_certificate,
    scan_family,
    scan_row,
    smallest_composite_witness,
)
from supernatural.errors import BudgetExceeded, DomainError, NotIncreasing, NotPolynomial, SearchExhausted
from supernatural.expr import Const, EvalBudget, evaluate, parse

FERMAT = parse("2^2^n+1")


def test_euler_witness():
    w = smallest_composite_witness(FERMAT, 6)
    assert w == CompositeWitness(5, 4294967297, Factorization(((641, 1), (6700417, 1))), Searched())


def test_f46_has_six_leading_primes():
    e = parse("2^2^n+93")
    w = smallest_composite_witness(e, 8)
    assert w.index == 7
    assert w.value == 2**128 + 93
    assert is_prime(w.value) == COMPOSITE
    assert not sympy.isprime(2**128 + 93)
    assert all(sympy.isprime(2 ** 2**n + 93) for n in range(1, 7))


def test_small_fermat_like():
    w = smallest_composite_witness(parse("2^2^n+3"), 4)
    assert (w.index, w.value) == (3, 259)
    assert w.factorization == Factorization(((7, 1), (37, 1)))


def test_constant_rejected():
    with pytest.raises(NotIncreasing):
        smallest_composite_witness(Const(5), 3)


def test_exhausted():
    assert smallest_composite_witness(FERMAT, 4) == Exhausted(4)


def test_budget_exceeded_reports_index():
    with pytest.raises(BudgetExceeded) as info:
        smallest_composite_witness(parse("2^2^n+93"), 8, EvalBudget(100))
    assert info.value.index == 7


def test_unit_output_counts_as_witness():
    # 1^n * n is n, whose first output is 1
    w = smallest_composite_witness(parse("1^n*n"), 3)
    assert w.index == 1 and w.unit and w.factorization == Factorization()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(1, 30))
def test_search_minimality(a, b):
    e = parse(f"{a + 1}^n+{b}")
    w = smallest_composite_witness(e, 40)
    if isinstance(w, Exhausted):
        return
    for n in range(1, w.index):
        assert is_prime(evaluate(e, n)).is_prime_like
    assert w.value == 1 or is_prime(w.value) == COMPOSITE
    assert w.factorization.value == w.value


# -- certificates ----------------------------------------------------------

def test_is_polynomial():
    assert is_polynomial(parse("n^2+3*n+1"))
    assert is_polynomial(parse("n^(1+1)"))
    assert is_polynomial(parse("1^n+n"))
    assert not is_polynomial(FERMAT)


@pytest.mark.parametrize("text, n0, p, index, value", [
    ("n+1", 1, 2, 3, 4),
    ("n^2+1", 1, 2, 3, 10),
    ("n", 2, 2, 4, 4),
    ("3*n^2+2", 1, 5, 6, 110),
])
def test_polynomial_certificate(text, n0, p, index, value):
    w = polynomial_certificate(parse(text))
    assert w.provenance == PolynomialCertificate(n0, p)
    assert (w.index, w.value) == (index, value)
    assert w.factorization.value == value


def test_polynomial_certificate_rejects():
    with pytest.raises(NotPolynomial):
        polynomial_certificate(FERMAT)
    with pytest.raises(NotIncreasing):
        polynomial_certificate(parse("2*3+1"))


def test_certificate_conditions_on_random_polynomials():
    rng = random.Random(11)
    for _ in range(50):
        coeffs = [rng.randint(0, 9) for _ in range(4)]
        if not any(coeffs[1:]):
            coeffs[1] = 1
        terms = [f"{c}*n^{k}" for k, c in enumerate(coeffs) if c and k] + ([str(coeffs[0])] if coeffs[0] else [])
        e = parse("+".join(terms))
        w = polynomial_certificate(e)
        n0, p = w.provenance.base_index, w.provenance.prime
        base = evaluate(e, n0)
        assert base % p == 0 and w.value % p == 0 and 1 < base < w.value
        assert is_prime(w.value) == COMPOSITE
        plain = smallest_composite_witness(e, 64)
        assert plain.value == 1 or is_prime(plain.value) == COMPOSITE


@pytest.mark.parametrize("a, b, index, value, provenance", [
    (2, 1, 6, 65, ExponentialCertificate(2, 5)),
    (2, 0, 2, 4, Searched()),
    (3, 0, 2, 9, Searched()),
])
def test_exponential_certificate(a, b, index, value, provenance):
    w = exponential_certificate(a, b)
    assert (w.index, w.value, w.provenance) == (index, value, provenance)
    assert w.factorization.value == value


def test_exponential_certificate_domain():
    with pytest.raises(DomainError):
        exponential_certificate(1, 3)
    with pytest.raises(DomainError):
        exponential_certificate(2, -1)


# -- scan ----------------------------------------------------------------------

def test_scan_rows_small_range():
    rows = scan_family(1, 9, 6)
    assert [r.function for r in rows][:1] == ["2^2^n+1"]
    by_fn = {r.function: r for r in rows}
    assert by_fn["2^2^n+1"].smallest_composite_index == 5
    assert by_fn["2^2^n+1"].factorization.render() == "641*6700417"
    assert by_fn["2^2^n+3"].primes_before == 2
    for r in rows:
        if r.factorization is not None:
            assert r.factorization.value == r.composite_value
    keys = [(-r.primes_before, int(r.function.rsplit("+", 1)[1])) for r in rows]
    assert keys == sorted(keys)


def test_scan_row_c93():
    row = scan_row(fermat_like(93), 7)
    assert row.primes_before == 6 and row.smallest_composite_index == 7


def test_scan_rejects_even_bounds():
    with pytest.raises(DomainError):
        scan_family(2, 9, 3)
    with pytest.raises(DomainError):
        scan_family(9, 3, 3)


def test_scan_is_independent_of_job_count():
    assert scan_family(1, 201, 5, effort="quick") == scan_family(1, 201, 5, effort="quick", jobs=2)


def test_second_six_prime_constant_is_confirmed_by_sympy():
    # recorded from the full scan: c = 2535 is the only other c <= 2601 with six leading primes
    rows = scan_family(2401, 2601, 7, effort="quick")
    six = [r for r in rows if r.primes_before >= 6]
    assert [r.function for r in six] == ["2^2^n+2535"]
    assert all(sympy.isprime(2 ** 2**n + 2535) for n in range(1, 7))
    assert not sympy.isprime(2**128 + 2535)


# -- infinitude --------------------------------------------------------------

def test_infinitude_fermat():
    ws = infinitude_samples(FERMAT, 2)
    assert [w.index for w in ws] == [5, 6]
    assert ws[1].factorization == Factorization(((274177, 1), (67280421310721, 1)))


def test_infinitude_successor():
    ws = infinitude_samples(parse("n+1"), 3)
    assert [(w.index, w.value) for w in ws] == [(3, 4), (5, 6), (7, 8)]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["n^2+1", "n^n+n+1", "7^n+6", "2^n+3", "n*n+n+41", "3^n+2"]),
       st.integers(1, 5))
def test_infinitude_indices_increase_and_values_match(text, count):
    e = parse(text)
    ws = infinitude_samples(e, count)
    indices = [w.index for w in ws]
    assert indices == sorted(set(indices)) and len(ws) == count
    for w in ws:
        assert evaluate(e, w.index) == w.value
        assert is_prime(w.value) == COMPOSITE


def test_infinitude_exhausted_keeps_partial_list():
    with pytest.raises(SearchExhausted) as info:
        infinitude_samples(FERMAT, 3, per_shift_n_max=1, budget=EvalBudget(80))
    assert [w.index for w in info.value.partial] == []
    with pytest.raises(SearchExhausted) as info:
        infinitude_samples(FERMAT, 2, per_shift_n_max=5, budget=EvalBudget(40))
    assert [w.index for w in info.value.partial] == [5]
