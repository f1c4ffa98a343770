import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import factorint

from discsieve.factor import (
    FactorizationBudgetExceeded,
    factor,
    is_probable_prime,
    pollard_brent,
    primes_up_to,
)
from discsieve import fpx
from oracles import small_primes, square_parts


def test_examples():
    f = factor(-2**4 * 3**3 * 7)
    assert f.sign == -1
    assert f.factors == ((2, 4), (3, 3), (7, 1))
    assert f.square_root_part() == 2**2 * 3
    assert f.squarefree_square_part() == 6
    assert not f.is_squarefree()
    assert factor(1).factors == ()
    with pytest.raises(ValueError):
        factor(0)


def test_primes_up_to():
    assert primes_up_to(1000) == small_primes(1000)


def test_primality_against_sympy():
    rng = random.Random(3)
    from sympy import isprime

    for _ in range(3000):
        n = rng.randrange(2, 2**64)
        assert is_probable_prime(n) == isprime(n)
    for n in (2**89 - 1, 2**127 - 1, (2**61 - 1) * (2**31 - 1), 3215031751, 2152302898747):
        assert is_probable_prime(n) == isprime(n)


def test_semiprime_split():
    p, q = 1000003, 998244353
    d = pollard_brent(p * q)
    assert d in (p, q)


def test_budget():
    with pytest.raises(FactorizationBudgetExceeded):
        factor((2**61 - 1) * (2**89 - 1), budget=5)


def test_reassembly_bulk():
    rng = random.Random(11)
    for _ in range(100_000):
        n = rng.randrange(1, 2**64)
        f = factor(n)
        assert f.reassemble() == n
        assert all(is_probable_prime(p) for p, _ in f.factors)


@settings(max_examples=300, deadline=None)
@given(st.integers(-(10**12), 10**12).filter(lambda x: x != 0))
def test_matches_sympy(n):
    f = factor(n)
    assert dict(f.factors) == factorint(abs(n))
    assert (f.square_root_part(), f.squarefree_square_part()) == square_parts(n)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**9), st.integers(1, 10**9))
def test_multiplicative_exponents(a, b):
    fa, fb, fab = factor(a), factor(b), factor(a * b)
    for p in set(fa.primes()) | set(fb.primes()):
        assert fab.exponent(p) == fa.exponent(p) + fb.exponent(p)


def test_fpx_arithmetic():
    p = 7
    a, b = [1, 2, 3], [5, 0, 1]
    q, r = fpx.divmod_(fpx.mul(a, b, p), b, p)
    assert q == fpx.reduce(a, p) and r == []
    # (x - 1)^2 (x + 2) has radical (x - 1)(x + 2)
    f = fpx.mul(fpx.mul([p - 1, 1], [p - 1, 1], p), [2, 1], p)
    assert fpx.radical(f, p) == fpx.mul([p - 1, 1], [2, 1], p)
    # x^p - x is squarefree; x^p is not
    assert fpx.radical([0] * p + [1], p) == [0, 1]
