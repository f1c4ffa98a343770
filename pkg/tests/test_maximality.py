import random

import pytest

from discsieve.maximality import ZeroDiscriminant, dedekind_test, is_maximal, is_squarefree_disc, p_maximal
from discsieve.polyarith import MonicPoly, discriminant
from oracles import brute_maximal, cubic_p_maximal, dedekind_sympy


def test_examples():
    v = is_maximal(MonicPoly.of(0, -5))
    assert not v.is_maximal and v.obstruction_primes == (2,)
    v = is_maximal(MonicPoly.of(-1, 0, 9))
    assert not v.is_maximal and v.obstruction_primes == (3,)
    v = is_maximal(MonicPoly.of(0, -2))
    assert v.is_maximal and v.squarefree_disc is False
    assert is_maximal(MonicPoly.of(1, -1)).squarefree_disc


def test_zero_discriminant_rejected():
    with pytest.raises(ZeroDiscriminant):
        is_maximal(MonicPoly.of(0, 0))


def test_squarefree_implies_maximal():
    rng = random.Random(0)
    for _ in range(300):
        f = MonicPoly(tuple(rng.randint(-20, 20) for _ in range(rng.randint(2, 4))))
        if discriminant(f) and is_squarefree_disc(f):
            assert is_maximal(f).is_maximal


def test_dedekind_agrees_with_sympy_lift():
    rng = random.Random(4)
    checked = 0
    for _ in range(600):
        n = rng.randint(2, 5)
        a = [rng.randint(-30, 30) for _ in range(n)]
        d = discriminant(MonicPoly(tuple(a)))
        for p in (2, 3, 5, 7):
            if d and d % (p * p) == 0:
                assert dedekind_test([a[-1 - i] for i in range(n)] + [1], p) == dedekind_sympy(a, p)
                checked += 1
    assert checked > 300


def test_cubic_root_criterion():
    rng = random.Random(9)
    for _ in range(500):
        a = [rng.randint(-50, 50) for _ in range(3)]
        f = MonicPoly(tuple(a))
        d = discriminant(f)
        for p in (2, 3, 5, 7, 11):
            if d and d % (p * p) == 0:
                assert p_maximal(f, p) == cubic_p_maximal(a, p)


def test_whole_verdict_against_oracle():
    rng = random.Random(12)
    for _ in range(300):
        a = [rng.randint(-15, 15) for _ in range(rng.randint(2, 5))]
        f = MonicPoly(tuple(a))
        if discriminant(f):
            assert is_maximal(f).is_maximal == brute_maximal(a)


def test_primes_not_dividing_square_part_are_maximal():
    f = MonicPoly.of(0, -1, 0)  # disc 4
    assert p_maximal(f, 3)
