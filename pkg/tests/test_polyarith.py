import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discsieve.polyarith import (
    MonicPoly,
    bareiss_det,
    delta_prime,
    delta_prime_fast,
    depress,
    diff_poly,
    diff_poly_power_sums,
    discriminant,
    discriminant_fast,
    fiber_delta_prime,
    fiber_discriminant,
    horner,
    interpolate,
    resultant,
    translate,
    trinomial_disc,
)
from oracles import frac_det, hankel_disc, root_disc_and_dprime, trinomial_closed

coeff = st.integers(-30, 30)
polys = st.integers(1, 6).flatmap(lambda n: st.tuples(*[coeff] * n)).map(MonicPoly)


def test_known_values():
    f = MonicPoly.of(0, -1, 0)
    assert discriminant(f) == 4
    assert diff_poly(f).coeffs == (-4, 9, -6, 1)
    assert delta_prime(f) == 9
    assert discriminant(MonicPoly.of(0, 0, 0, -2)) == -2048
    g = MonicPoly.of(-1, 0, 9)
    assert discriminant(g) == -2151
    assert delta_prime(g) == 1


def test_degree_one_and_two():
    assert discriminant(MonicPoly.of(7)) == 1
    for b in range(-6, 7):
        for c in range(-6, 7):
            f = MonicPoly.of(b, c)
            assert discriminant(f) == b * b - 4 * c
            assert delta_prime(f) == 1


def test_translate_and_depress():
    f = MonicPoly.of(3, 0, -1)
    assert translate(f, 1)(0) == f(1)
    assert depress(MonicPoly.of(3, 3, 1)) == MonicPoly.of(0, 0, 0)
    with pytest.raises(ValueError):
        depress(MonicPoly.of(1, 0, 0))


def test_json_roundtrip_and_degree_mismatch():
    f = MonicPoly.of(-5, 10**30, 0)
    assert MonicPoly.from_json(f.to_json()) == f
    with pytest.raises(ValueError):
        MonicPoly.from_json("[3, 1]")


def test_height_below_is_strict():
    assert MonicPoly.of(1, 3).height_below(2)
    assert not MonicPoly.of(2, 0).height_below(2)
    assert not MonicPoly.of(0, 4).height_below(2)


def test_bareiss_matches_fraction_elimination():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 7)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert bareiss_det(M) == frac_det(M)


def test_interpolate_recovers_polynomial():
    coeffs = [3, -1, 0, 7]
    nodes = list(range(5))
    vals = [horner(coeffs, x) for x in nodes]
    assert interpolate(nodes, vals)[:4] == coeffs


@settings(max_examples=200, deadline=None)
@given(polys)
def test_discriminant_matches_hankel_oracle(f):
    assert discriminant(f) == hankel_disc(list(f.coeffs))


@settings(max_examples=200, deadline=None)
@given(polys)
def test_two_delta_prime_routes_agree(f):
    assert diff_poly(f) == diff_poly_power_sums(f)
    assert delta_prime(f) == delta_prime_fast(f)
    assert discriminant_fast(f) == discriminant(f)


@settings(max_examples=100, deadline=None)
@given(polys, st.integers(-50, 50))
def test_translation_invariance(f, k):
    g = translate(f, k)
    assert discriminant(g) == discriminant(f)
    assert delta_prime_fast(g) == delta_prime_fast(f)


@settings(max_examples=100, deadline=None)
@given(polys)
def test_diff_poly_constant_term_is_signed_discriminant(f):
    D = diff_poly(f)
    N = D.N
    assert D.degree_n == f.degree
    assert D.coeffs[0] == (-1) ** N * discriminant(f)
    assert D.coeffs[-1] == 1


def test_resultant_symmetry():
    f, g = [1, 0, -2], [1, 3, 0, 1]
    assert resultant(f, g) == (-1) ** (2 * 3) * resultant(g, f)


def test_root_oracle_agreement_small_sample():
    rng = random.Random(1)
    for _ in range(100):
        a = [rng.randint(-10, 10) for _ in range(rng.randint(2, 5))]
        f = MonicPoly(tuple(a))
        if discriminant(f):
            assert root_disc_and_dprime(a) == (discriminant(f), delta_prime(f))


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(*[coeff] * (n - 1))), st.integers(-40, 40))
def test_fiber_polynomials(head, t):
    f = MonicPoly(tuple(head) + (t,))
    assert horner(fiber_discriminant(head), t) == discriminant(f)
    assert horner(fiber_delta_prime(head), t) == delta_prime_fast(f)


def test_fiber_leading_coefficient():
    for n in range(2, 7):
        lead = fiber_discriminant((0,) * (n - 1))[-1]
        assert lead == (-1) ** (n * (n - 1) // 2) * n**n


@pytest.mark.parametrize("n", range(2, 7))
def test_trinomial_closed_form(n):
    for b in (-3, 0, 5):
        for c in (-2, 1, 4):
            assert trinomial_disc(n, b, c) == trinomial_closed(n, b, c)
