import itertools
from fractions import Fraction

import pytest

from discsieve.densities import DensityBudgetExceeded, euler_product_lambda, fiber_density, local_density
from oracles import hankel_disc


def brute_theta(n, m):
    M2 = m * m
    hits = sum(hankel_disc(list(a)) % M2 == 0 for a in itertools.product(range(M2), repeat=n))
    return Fraction(hits, M2**n)


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 2), (2, 5), (3, 3)])
def test_against_full_enumeration(n, m):
    assert local_density(n, m).density == brute_theta(n, m)


def test_examples():
    assert local_density(2, 2).density == Fraction(1, 2)
    assert local_density(3, 1).density == 1
    assert fiber_density((0, 0), 3).density == 1


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("m", [2, 3, 5])
def test_depression_shortcut(n, m):
    assert local_density(n, m).density == local_density(n, m, depress=False).density


def test_multiplicativity():
    for n, (a, b) in [(3, (2, 3)), (3, (3, 5)), (2, (2, 5)), (2, (3, 4))]:
        assert local_density(n, a * b).density == local_density(n, a).density * local_density(n, b).density


def test_odd_prime_cubic_formula():
    for p in (3, 5, 7, 11, 13):
        assert local_density(3, p).density == Fraction(2 * p - 1, p**3)


def test_budget():
    with pytest.raises(DensityBudgetExceeded):
        local_density(4, 11, budget=1000)


def test_lambda_product():
    lam = euler_product_lambda(2, 2)
    assert lam.product == Fraction(1, 2)
    lam = euler_product_lambda(3, 50)
    assert abs(float(lam.product) - 0.3452528765) < 1e-9
    assert lam.decay_constant <= 4  # p^2 theta(p) stays bounded
    assert 0 < lam.lower <= float(lam.product)
