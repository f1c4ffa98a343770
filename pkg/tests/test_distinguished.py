import itertools
from fractions import Fraction

import mpmath
import pytest

from discsieve.distinguished import (
    CandidateRoots,
    FormPair,
    anti_diagonal,
    build_P,
    candidate_roots,
    detect_rational_root,
    exact_matmul,
    isotropic_line_oracle,
    line_value,
    linear_forms,
    random_pair,
    rational_candidates,
    transpose,
    witness_distinguished,
)


@pytest.mark.parametrize("n", [1, 3, 5, 7])
def test_P_conjugates_A0_to_identity_exactly(n):
    P = build_P(n)
    PAPt = exact_matmul(exact_matmul(P, anti_diagonal(n)), transpose(P))
    assert all(PAPt[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def test_P_rejects_even():
    with pytest.raises(ValueError):
        build_P(4)


def test_formpair_validation_and_resolvent():
    with pytest.raises(ValueError):
        FormPair(((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        FormPair(((0, 1, 0), (2, 0, 0), (0, 0, 0)))
    pair = FormPair(((1, 0, 0), (0, 2, 0), (0, 0, 3)))
    # A0 B is [[0,0,3],[0,2,0],[1,0,0]]: eigenvalues 2, +-sqrt 3
    assert pair.resolvent().coeffs == (-2, -3, 6)


def _numeric_roots(pair, prec=128):
    with mpmath.workprec(prec):
        return mpmath.polyroots([1, *pair.resolvent().coeffs], maxsteps=200, extraprec=prec)


def test_eigenvalues_are_resolvent_roots():
    pair = random_pair(3, 10, 7)
    r = candidate_roots(pair)
    expected = _numeric_roots(pair)
    for c in r.eigenvalues:
        assert min(abs(c - e) for e in expected) < 1e-25


def test_D_solves_vandermonde_kernel():
    # the D_i satisfy sum D_i c_i^k = 0 for k < n - 1, which is what makes Y isotropic
    r = candidate_roots(random_pair(5, 6, 3))
    c = r.eigenvalues
    n = len(c)
    with mpmath.workprec(128):
        D = [1 / mpmath.fprod(c[j] - c[i] for j in range(n) if j != i) for i in range(n)]
        for k in range(n - 1):
            assert abs(mpmath.fsum(D[i] * c[i] ** k for i in range(n))) < 1e-25
        # the alternating sign (-1)^i does not give a kernel vector
        alt = [(-1) ** i * x for i, x in enumerate(D)]
        assert abs(mpmath.fsum(alt)) > 1e-5


@pytest.mark.parametrize("n,seed", [(3, 1), (3, 2), (5, 1), (5, 4)])
def test_planes_are_isotropic(n, seed):
    r = candidate_roots(random_pair(n, 10, seed))
    assert len(r) == 2 ** (n - 1)
    for key in ("residual_A0", "residual_B", "residual_identity", "residual_diagonal"):
        assert r.diagnostics[key] < 1e-30, key


def test_candidates_invariant_under_eigen_order():
    pair = random_pair(3, 10, 11)
    base = candidate_roots(pair).values
    for perm in itertools.permutations(range(3)):
        other = candidate_roots(pair, eigen_order=list(perm)).values
        for v in base:
            assert min(abs(v - w) for w in other) < 1e-25


def test_candidates_invariant_under_eigen_order_n5():
    pair = random_pair(5, 5, 2)
    base = candidate_roots(pair).values
    other = candidate_roots(pair, eigen_order=[4, 2, 0, 3, 1]).values
    for v in base:
        assert min(abs(v - w) for w in other) < 1e-25


def test_global_sign_flip_gives_same_planes():
    r = candidate_roots(random_pair(3, 10, 5))
    # negating every d_i negates Y, hence the plane, and the ratio is projective
    assert all(s[0] == 1 for s in r.signs) and len(set(r.signs)) == 4
    for W, v in zip(r.planes, r.values):
        L1, L2 = r.forms
        with mpmath.workprec(128):
            neg = [[-x for x in row] for row in W]
            num = mpmath.fsum(a * x for a, x in zip(L1, neg[0]))
            den = mpmath.fsum(b * x for b, x in zip(L2, neg[0]))
            assert abs(num / den - v) < 1e-25


def test_precision_changes_nothing_material():
    pair = witness_distinguished(3, 10, 3)
    a = detect_rational_root(candidate_roots(pair, prec=128))
    b = detect_rational_root(candidate_roots(pair, prec=256))
    assert a == b is not None


def test_detect_trivial_cases():
    def wrap(vals):
        return CandidateRoots([mpmath.mpc(v) for v in vals], [], [], ((1,), (1,)), [], [], precision=128)

    assert detect_rational_root(wrap([mpmath.mpf(3) / 2 + mpmath.mpf(10) ** -30, mpmath.sqrt(2)]), tol=1e-12) == Fraction(3, 2)
    assert detect_rational_root(wrap([mpmath.sqrt(2), mpmath.pi, mpmath.e, mpmath.sqrt(3)])) is None
    assert detect_rational_root(wrap([mpmath.mpc(1, 1e-3)])) is None
    assert detect_rational_root(wrap([mpmath.mpf(-7) / 3])) == Fraction(-7, 3)


def test_witness_has_b11_zero_and_oracle_line():
    for seed in range(5):
        pair = witness_distinguished(3, 10, seed)
        assert pair.B[0][0] == 0 and pair.disc() != 0
        assert isotropic_line_oracle(pair, 1) == (1, 0, 0)
        r = candidate_roots(pair)
        assert Fraction(1) in [h for h, _ in rational_candidates(r)]
    with pytest.raises(ValueError):
        witness_distinguished(5, 10, 0)


def test_oracle_line_matches_detection():
    for seed in range(60):
        pair = random_pair(3, 10, seed)
        y = isotropic_line_oracle(pair, 12)
        if y is None:
            continue
        assert 2 * y[0] * y[2] + y[1] ** 2 == 0 and pair.form(y, y) == 0
        r = candidate_roots(pair)
        assert line_value(y, r.forms) in [h for h, _ in rational_candidates(r)]


def test_linear_forms_sequence():
    assert linear_forms(0, 3) == ((1, 2, 3), (1, 1, 1))
    assert len({linear_forms(i, 3) for i in range(10)}) == 10
