"""Integer factorization: trial division, Pollard rho (Brent), Miller-Rabin."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import gmpy2

TRIAL_LIMIT = 10_000

# deterministic for n < 3.3e24, which covers everything below 2^64
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class FactorizationBudgetExceeded(RuntimeError):
    """Pollard rho ran past its iteration budget without splitting a cofactor."""

    def __init__(self, n: int, budget: int):
        super().__init__(f"could not split {n} within {budget} rho iterations")
        self.n = n
        self.budget = budget


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


SMALL_PRIMES = _small_primes(TRIAL_LIMIT)


def primes_up_to(limit: int) -> list[int]:
    if limit <= TRIAL_LIMIT:
        return [p for p in SMALL_PRIMES if p <= limit]
    return _small_primes(limit)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in SMALL_PRIMES[:25]:
        if n % p == 0:
            return n == p
    if n < 2**64:
        return all(gmpy2.is_strong_prp(n, a) for a in _MR_BASES)
    return bool(gmpy2.is_strong_bpsw_prp(n)) and all(
        gmpy2.is_strong_prp(n, a) for a in _MR_BASES
    )


def pollard_brent(n: int, budget: int = 1_000_000, seed: int = 1) -> int:
    """Return a nontrivial factor of composite ``n``."""
    if n % 2 == 0:
        return 2
    n = gmpy2.mpz(n)
    spent = 0
    c = seed
    while True:
        y, m, g, r, q = gmpy2.mpz(2), 128, 1, 1, gmpy2.mpz(1)
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gmpy2.gcd(q, n)
                k += m
            r *= 2
            spent += r
            if spent > budget:
                raise FactorizationBudgetExceeded(n, budget)
        if g == n:
            while True:
                ys = (ys * ys + c) % n
                g = gmpy2.gcd(abs(x - ys), n)
                if g > 1:
                    break
        if g != n:
            return int(g)
        c += 1


@dataclass(frozen=True)
class FactoredInteger:
    value: int
    factors: tuple[tuple[int, int], ...] = field(default=())

    @property
    def sign(self) -> int:
        return -1 if self.value < 0 else 1

    def __int__(self) -> int:
        return self.value

    def __iter__(self):
        return iter(self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def square_root_part(self) -> int:
        """Largest t with t^2 dividing the value."""
        t = 1
        for p, e in self.factors:
            t *= p ** (e // 2)
        return t

    def squarefree_square_part(self) -> int:
        """Largest squarefree m with m^2 dividing the value."""
        m = 1
        for p, e in self.factors:
            if e >= 2:
                m *= p
        return m

    def reassemble(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out


def _split(n: int, out: dict[int, int], budget: int) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = isqrt(n)
    if r * r == n:
        _split(r, out, budget)
        _split(r, out, budget)
        return
    d = pollard_brent(n, budget)
    _split(d, out, budget)
    _split(n // d, out, budget)


def factor(n, budget: int = 1_000_000) -> FactoredInteger:
    """Complete factorization of a nonzero integer.

    ``budget`` caps Pollard rho iterations per cofactor; running out raises
    FactorizationBudgetExceeded rather than returning a partial answer.
    """
    if isinstance(n, FactoredInteger):
        return n
    n = int(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    m = abs(n)
    found: dict[int, int] = {}
    for p in SMALL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        if m < TRIAL_LIMIT * TRIAL_LIMIT:
            found[m] = found.get(m, 0) + 1
        else:
            _split(m, found, budget)
    return FactoredInteger(n, tuple(sorted(found.items())))
