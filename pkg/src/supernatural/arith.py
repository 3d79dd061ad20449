"""Primality testing and integer factorization for big integers.

Below 2**64 the strong-pseudoprime test with the first twelve prime bases
is deterministic. At or above 2**64 a value is reported as a probable prime
after a Baillie-PSW test (strong base-2 plus strong Lucas) and 64 further
Miller-Rabin rounds with bases drawn from a stream seeded by the value
itself, so verdicts are reproducible.

Factoring is trial division followed by Brent's variant of Pollard rho,
bounded by an effort level. Whatever cannot be split within the effort is
kept as an unresolved composite cofactor.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .errors import DomainError, UnitInput

DETERMINISTIC_LIMIT = 1 << 64
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
EXTRA_ROUNDS = 64  # each round errs with probability <= 1/4


@lru_cache(maxsize=8)
def primes_below(limit: int) -> tuple:
    if limit < 3:
        return ()
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit - 1) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, limit, p)))
    return tuple(i for i in range(limit) if sieve[i])


SMALL_PRIMES = primes_below(200)


class Primality(enum.Enum):
    PRIME = "prime"
    COMPOSITE = "composite"
    PROBABLE_PRIME = "probable prime"


@dataclass(frozen=True)
class PrimalityVerdict:
    kind: Primality
    error_bound_exponent: Optional[int] = None

    @property
    def is_composite(self):
        return self.kind is Primality.COMPOSITE

    @property
    def is_prime_like(self):
        return self.kind is not Primality.COMPOSITE

    def __str__(self):
        if self.kind is Primality.PROBABLE_PRIME:
            return f"probable prime (error <= 2^-{self.error_bound_exponent})"
        return self.kind.value


PRIME = PrimalityVerdict(Primality.PRIME)
COMPOSITE = PrimalityVerdict(Primality.COMPOSITE)


def _strong_probable_prime(n: int, a: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _half(x: int, n: int) -> int:
    x %= n
    if x & 1:
        x += n
    return x >> 1


def _strong_lucas_probable_prime(n: int) -> bool:
    """Strong Lucas test with Selfridge's parameters (method A). ``n`` odd, > 2."""
    r = math.isqrt(n)
    if r * r == n:
        return False
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4

    d = n + 1
    s = (d & -d).bit_length() - 1
    d >>= s

    U, V, Qk = 1, P % n, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = _half(P * U + V, n), _half(D * U + P * V, n)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(x: int) -> PrimalityVerdict:
    if x < 1:
        raise DomainError(f"primality is defined here for x >= 1, got {x}")
    if x == 1:
        raise UnitInput("1 is neither prime nor composite")
    for p in SMALL_PRIMES:
        if x == p:
            return PRIME
        if x % p == 0:
            return COMPOSITE
    if x < 200 * 200:
        return PRIME
    if x < DETERMINISTIC_LIMIT:
        if all(_strong_probable_prime(x, a) for a in MR_BASES):
            return PRIME
        return COMPOSITE
    if not _strong_probable_prime(x, 2) or not _strong_lucas_probable_prime(x):
        return COMPOSITE
    rng = random.Random(x)
    for _ in range(EXTRA_ROUNDS):
        if not _strong_probable_prime(x, rng.randrange(3, x - 1)):
            return COMPOSITE
    return PrimalityVerdict(Primality.PROBABLE_PRIME, 2 * EXTRA_ROUNDS)


# -- factorization ---------------------------------------------------------

@dataclass(frozen=True)
class Effort:
    """Trial-division bound and rho budget.

    ``rho_iterations`` is the iteration count for operands up to 256 bits;
    larger operands get proportionally fewer iterations (quadratic in size),
    which keeps the time per effort level roughly constant.
    """

    name: str
    trial_limit: int
    rho_iterations: int

    def rho_budget(self, bits: int) -> int:
        if bits <= 256:
            return self.rho_iterations
        return max(1, self.rho_iterations * 256 * 256 // (bits * bits))


EFFORTS = {
    "quick": Effort("quick", 10_000, 200_000),
    "standard": Effort("standard", 100_000, 2_000_000),
    "deep": Effort("deep", 1_000_000, 20_000_000),
}
DEFAULT_EFFORT = EFFORTS["standard"]


def get_effort(effort) -> Effort:
    if isinstance(effort, Effort):
        return effort
    try:
        return EFFORTS[effort]
    except KeyError:
        raise ValueError(f"unknown effort {effort!r}; choose from {sorted(EFFORTS)}") from None


@dataclass(frozen=True)
class Factorization:
    """Prime powers, ascending, plus an optional composite cofactor left unsplit."""

    primes: tuple = ()
    cofactor: Optional[int] = None

    @property
    def value(self) -> int:
        v = self.cofactor or 1
        for p, e in self.primes:
            v *= p**e
        return v

    @property
    def complete(self) -> bool:
        return self.cofactor is None

    @property
    def part_count(self) -> int:
        """Number of factors counted with multiplicity; a cofactor counts as two."""
        return sum(e for _, e in self.primes) + (2 if self.cofactor else 0)

    def smallest_factor(self) -> Optional[int]:
        if self.primes:
            return self.primes[0][0]
        return None

    def render(self) -> str:
        """``p1^e1*p2^e2`` with ``^1`` omitted; a trailing ``*C<digits>`` is the cofactor."""
        parts = [str(p) if e == 1 else f"{p}^{e}" for p, e in self.primes]
        if self.cofactor is not None:
            parts.append(f"C{self.cofactor}")
        return "*".join(parts) if parts else "1"

    @classmethod
    def parse(cls, text: str) -> "Factorization":
        primes = []
        cofactor = None
        if text == "1":
            return cls()
        for part in text.split("*"):
            if part.startswith("C"):
                cofactor = int(part[1:])
            elif "^" in part:
                p, e = part.split("^")
                primes.append((int(p), int(e)))
            else:
                primes.append((int(part), 1))
        return cls(tuple(primes), cofactor)


def _iroot(x: int, k: int) -> int:
    """floor(x ** (1/k)) for x >= 0."""
    if x < 2:
        return x
    r = 1 << ((x.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + x // r ** (k - 1)) // k
        if s >= r:
            return r
        r = s


def _perfect_power(m: int):
    for k in range(2, m.bit_length() + 1):
        r = _iroot(m, k)
        if r < 2:
            break
        if r**k == m:
            return r, k
    return None


def _brent(n: int, rng: random.Random, max_iter: int):
    """A nontrivial factor of odd composite ``n`` and the iterations spent, or (None, spent)."""
    spent = 0
    while spent < max_iter:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1 and spent < max_iter:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            spent += r
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            spent += min(r, k)
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g, spent
    return None, spent


def factor(x: int, effort="standard", seed: int = 0) -> Factorization:
    """Factor ``x >= 2`` as far as ``effort`` allows.

    The rho stream is seeded from (seed, x), so the result is a pure
    function of the arguments.
    """
    if x < 2:
        raise DomainError(f"factor needs x >= 2, got {x}")
    effort = get_effort(effort)
    counts = {}
    leftovers = []
    rest = x
    for p in primes_below(effort.trial_limit):
        if p * p > rest:
            break
        while rest % p == 0:
            counts[p] = counts.get(p, 0) + 1
            rest //= p
    rng = random.Random(f"{seed}:{x}")
    budget = effort.rho_budget(rest.bit_length())
    stack = [(rest, 1)] if rest > 1 else []
    while stack:
        m, mult = stack.pop()
        if m == 1:
            continue
        if is_prime(m).is_prime_like:
            counts[m] = counts.get(m, 0) + mult
            continue
        power = _perfect_power(m)
        if power is not None:
            stack.append((power[0], mult * power[1]))
            continue
        d = None
        if budget > 0:
            d, spent = _brent(m, rng, budget)
            budget -= spent
        if d is None:
            leftovers.append(m**mult)
        else:
            stack.append((d, mult))
            stack.append((m // d, mult))
    cofactor = math.prod(leftovers) if leftovers else None
    return Factorization(tuple(sorted(counts.items())), cofactor)


def smallest_prime_factor(x: int, effort="standard", seed: int = 0) -> int:
    """Smallest prime divisor when the factorization completes; else the smallest one found.

    Raises ValueError when no prime divisor can be exhibited.
    """
    for p in SMALL_PRIMES:
        if x % p == 0:
            return p
    f = factor(x, effort, seed)
    if not f.primes:
        raise ValueError(f"no prime divisor of {x} found at effort {get_effort(effort).name}")
    return f.primes[0][0]
