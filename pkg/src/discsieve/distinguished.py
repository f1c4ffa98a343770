"""Rational-root test for distinguished symmetric matrices, odd n = 2g + 1.

Given an integer symmetric B, change coordinates so the anti-diagonal form
A0 becomes the identity (B' = P B P^t), diagonalise B' by a complex
orthogonal h, write down the 2^(2g) common isotropic g-planes of I and
diag(c) explicitly, map them back by P^t h^t and read off their Pluecker
coordinates.  Two integer linear forms turn each plane into a number; if
B has a rational common isotropic g-plane, one of those numbers is rational.

Everything numeric runs in mpmath at a configurable precision.  Exact
confirmation for n = 3 comes from :func:`isotropic_line_oracle`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .polyarith import MonicPoly, bareiss_det, discriminant, interpolate


class DegenerateSpectrum(ArithmeticError):
    pass


class IsotropicEigenvector(ArithmeticError):
    pass


class FormCollision(ArithmeticError):
    pass


# --- exact Q[i] -------------------------------------------------------------


@dataclass(frozen=True)
class GaussRat:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, o):
        o = _gr(o)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = _gr(o)
        return GaussRat(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        o = _gr(o)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __eq__(self, o):
        o = _gr(o)
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


def _gr(x) -> GaussRat:
    if isinstance(x, GaussRat):
        return x
    return GaussRat(Fraction(x), Fraction(0))


def exact_matmul(A, B):
    return [
        [sum((_gr(A[i][k]) * _gr(B[k][j]) for k in range(len(B))), GaussRat()) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def transpose(A):
    return [list(col) for col in zip(*A)]


def anti_diagonal(n: int) -> list[list[int]]:
    return [[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)]


def build_P(n: int) -> list[list[GaussRat]]:
    """Exact P over Q[i] with P A0 P^t = I for odd n."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    g = (n - 1) // 2
    half = Fraction(1, 2)
    rows = []
    for j in range(g):
        row = [GaussRat() for _ in range(n)]
        row[j] = GaussRat(Fraction(1))
        row[n - 1 - j] = GaussRat(half)
        rows.append(row)
    mid = [GaussRat() for _ in range(n)]
    mid[g] = GaussRat(Fraction(1))
    rows.append(mid)
    for j in range(g):
        row = [GaussRat() for _ in range(n)]
        row[j] = GaussRat(Fraction(0), Fraction(1))
        row[n - 1 - j] = GaussRat(Fraction(0), -half)
        rows.append(row)
    return rows


# --- pairs of forms ---------------------------------------------------------


@dataclass(frozen=True)
class FormPair:
    B: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        B = tuple(tuple(int(x) for x in row) for row in self.B)
        n = len(B)
        if any(len(row) != n for row in B):
            raise ValueError("B must be square")
        if any(B[i][j] != B[j][i] for i in range(n) for j in range(n)):
            raise ValueError("B must be symmetric")
        if n % 2 == 0:
            raise ValueError("only odd n is supported")
        object.__setattr__(self, "B", B)

    @property
    def n(self) -> int:
        return len(self.B)

    @property
    def g(self) -> int:
        return (self.n - 1) // 2

    def resolvent(self) -> MonicPoly:
        """det(x I - A0 B): its roots are the eigenvalues of P B P^t."""
        n = self.n
        A0B = [list(self.B[n - 1 - i]) for i in range(n)]
        nodes = list(range(n + 1))
        vals = []
        for x in nodes:
            M = [[(x if i == j else 0) - A0B[i][j] for j in range(n)] for i in range(n)]
            vals.append(bareiss_det(M))
        coeffs = interpolate(nodes, vals)
        coeffs += [0] * (n + 1 - len(coeffs))
        assert coeffs[n] == 1
        return MonicPoly(tuple(reversed(coeffs[:n])))

    def disc(self) -> int:
        return discriminant(self.resolvent())

    def form(self, u, w, which="B"):
        n = self.n
        if which == "A0":
            return sum(u[i] * w[n - 1 - i] for i in range(n))
        return sum(u[i] * self.B[i][j] * w[j] for i in range(n) for j in range(n))

    def to_dict(self) -> dict:
        return {"B": [[str(x) for x in row] for row in self.B]}


def linear_forms(index: int, size: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Deterministic sequence of (L1, L2); index 0 is ((1, 2, ..., N), (1, ..., 1))."""
    L1 = tuple(j + 1 + index * j * j for j in range(size))
    L2 = tuple(1 + index * j for j in range(size))
    return L1, L2


@dataclass
class CandidateRoots:
    values: list  # mpc, one per g-plane
    plucker: list  # list of lists of mpc
    planes: list  # g x n matrices in the original coordinates
    forms: tuple
    signs: list  # sign vectors (d_1 fixed positive)
    eigenvalues: list
    diagnostics: dict = field(default_factory=dict)
    precision: int = 128

    def __len__(self):
        return len(self.values)

    def to_dict(self) -> dict:
        return {
            "candidates": [[mpmath.nstr(v.real, 30), mpmath.nstr(v.imag, 30)] for v in self.values],
            "forms": [list(f) for f in self.forms],
            "diagnostics": {k: (mpmath.nstr(v, 6) if isinstance(v, mpmath.mpf) else v) for k, v in self.diagnostics.items()},
        }


def _numeric_P(n):
    def conv(q):
        return mpmath.mpf(q.numerator) / q.denominator

    return [[mpmath.mpc(conv(x.re), conv(x.im)) for x in row] for row in build_P(n)]


def _eig(Bp, n):
    E, ER = mpmath.eig(mpmath.matrix(Bp))
    vecs = [[ER[i, k] for i in range(n)] for k in range(n)]
    return list(E), vecs


def _minors(W, g, n):
    out = []
    for cols in itertools.combinations(range(n), g):
        sub = mpmath.matrix([[W[r][c] for c in cols] for r in range(g)])
        out.append(mpmath.det(sub) if g > 1 else sub[0, 0])
    return out


def candidate_roots(
    pair: FormPair,
    prec: int = 128,
    forms_index: int = 0,
    max_form_tries: int = 20,
    tol: float | None = None,
    eigen_order: list[int] | None = None,
) -> CandidateRoots:
    """All 2^(2g) values L1(P_i)/L2(P_i) for the common isotropic g-planes of (A0, B).

    ``eigen_order`` permutes the eigenpairs before the construction; the
    resulting multiset is independent of it.
    """
    n, g = pair.n, pair.g
    if n < 3:
        raise ValueError("need n >= 3")
    with mpmath.workprec(prec):
        eps = mpmath.mpf(2) ** (-(prec // 2)) if tol is None else mpmath.mpf(tol)
        P = _numeric_P(n)
        Bm = [[mpmath.mpf(x) for x in row] for row in pair.B]
        PB = [[mpmath.fsum(P[i][k] * Bm[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        Bp = [[mpmath.fsum(PB[i][k] * P[j][k] for k in range(n)) for j in range(n)] for i in range(n)]
        scale = max(1, max(abs(x) for row in pair.B for x in row))
        c, vecs = _eig(Bp, n)
        if eigen_order is not None:
            c = [c[i] for i in eigen_order]
            vecs = [vecs[i] for i in eigen_order]
        gap = min(abs(c[i] - c[j]) for i in range(n) for j in range(i))
        if gap < eps * scale:
            raise DegenerateSpectrum(f"eigenvalue gap {mpmath.nstr(gap, 5)}")
        h = []
        min_iso = mpmath.inf
        for v in vecs:
            s = mpmath.fsum(x * x for x in v)
            norm2 = mpmath.fsum(abs(x) ** 2 for x in v)
            ratio = abs(s) / norm2
            min_iso = min(min_iso, ratio)
            if ratio < eps:
                raise IsotropicEigenvector(f"|v^t v| / |v|^2 = {mpmath.nstr(ratio, 5)}")
            r = mpmath.sqrt(s)
            h.append([x / r for x in v])
        D = []
        for i in range(n):
            prod_ = mpmath.mpf(1)
            for j in range(n):
                if j != i:
                    prod_ *= c[j] - c[i]
            D.append(1 / prod_)
        droot = [mpmath.sqrt(x) for x in D]
        hP = [[mpmath.fsum(h[i][k] * P[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        planes, signs, ys = [], [], []
        for tail in itertools.product((1, -1), repeat=n - 1):
            sign = (1, *tail)
            d = [s * x for s, x in zip(sign, droot)]
            Y = [[d[i] * c[i] ** k for i in range(n)] for k in range(g)]
            W = [[mpmath.fsum(y[i] * hP[i][j] for i in range(n)) for j in range(n)] for y in Y]
            planes.append(W)
            signs.append(sign)
            ys.append(Y)
        plucker = [_minors(W, g, n) for W in planes]
        size = len(plucker[0])
        for attempt in range(forms_index, forms_index + max_form_tries):
            L1, L2 = linear_forms(attempt, size)
            values, ok = [], True
            for pl in plucker:
                num = mpmath.fsum(a * x for a, x in zip(L1, pl))
                den = mpmath.fsum(b * x for b, x in zip(L2, pl))
                plnorm = max(abs(x) for x in pl)
                if abs(den) < eps * plnorm * sum(L2):
                    ok = False
                    break
                values.append(num / den)
            if ok:
                spread = max(1, max(abs(v) for v in values))
                if min(abs(values[i] - values[j]) for i in range(len(values)) for j in range(i)) < eps * spread:
                    ok = False
            if ok:
                break
        else:
            raise FormCollision(f"no admissible (L1, L2) among {max_form_tries} tries")
        diag = _residuals(pair, planes, ys, c)
        diag.update({"eigen_gap": gap, "min_isotropy_ratio": min_iso, "forms_index": attempt})
        return CandidateRoots(values, plucker, planes, (L1, L2), signs, c, diag, prec)


def _residuals(pair: FormPair, planes, ys, c) -> dict:
    n = pair.n
    worst_A0 = worst_B = worst_I = worst_diag = mpmath.mpf(0)
    for W, Y in zip(planes, ys):
        size = max(abs(x) for row in W for x in row) ** 2
        ysize = max(abs(x) for row in Y for x in row) ** 2
        for u, w in itertools.combinations_with_replacement(W, 2):
            worst_A0 = max(worst_A0, abs(pair.form(u, w, "A0")) / size)
            worst_B = max(worst_B, abs(pair.form(u, w)) / size)
        for u, w in itertools.combinations_with_replacement(Y, 2):
            worst_I = max(worst_I, abs(mpmath.fsum(u[i] * w[i] for i in range(n))) / ysize)
            worst_diag = max(worst_diag, abs(mpmath.fsum(u[i] * c[i] * w[i] for i in range(n))) / ysize)
    return {
        "residual_A0": worst_A0,
        "residual_B": worst_B,
        "residual_identity": worst_I,
        "residual_diagonal": worst_diag,
    }


# --- rationality ------------------------------------------------------------


def _to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    man = -int(man) if sign else int(man)
    return Fraction(man) * Fraction(2) ** exp


def default_tolerance(prec: int) -> float:
    """Half the working bits: genuine hits sit near 2^-prec, chance near-misses do not."""
    return float(mpmath.mpf(2) ** (-(prec // 2)))


def rational_candidates(roots: CandidateRoots, denominator_bound: int = 10**4, tol: float | None = None):
    """Every candidate that reconstructs to a rational within ``tol``, with residuals."""
    if tol is None:
        tol = default_tolerance(roots.precision)
    hits = []
    for v in roots.values:
        size = max(1, abs(v))
        if abs(v.imag) > tol * size:
            continue
        approx = _to_fraction(v.real).limit_denominator(denominator_bound)
        resid = abs(v.real - mpmath.mpf(approx.numerator) / approx.denominator)
        if resid < tol * size:
            hits.append((approx, float(resid / size)))
    return hits


def detect_rational_root(roots: CandidateRoots, denominator_bound: int = 10**4, tol: float | None = None):
    hits = rational_candidates(roots, denominator_bound, tol)
    if not hits:
        return None
    return min(hits, key=lambda h: (h[1], h[0].denominator))[0]


# --- witnesses and the exact oracle ----------------------------------------


def _random_symmetric(rng: random.Random, n: int, C: int) -> list[list[int]]:
    B = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            B[i][j] = B[j][i] = rng.randint(-C, C)
    return B


def random_pair(n: int, C: int, seed: int, max_tries: int = 1000) -> FormPair:
    """Symmetric B with entries uniform in [-C, C] and nonzero discriminant."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        pair = FormPair(tuple(map(tuple, _random_symmetric(rng, n, C))))
        if pair.disc() != 0:
            return pair
    raise RuntimeError(f"no nondegenerate B after {max_tries} draws")


def witness_distinguished(n: int = 3, C: int = 10, seed: int = 0, max_tries: int = 1000) -> FormPair:
    """Random B with b_11 = 0, so e_1 spans a rational line isotropic for A0 and B."""
    if n != 3:
        raise ValueError("witness generator is for n = 3")
    rng = random.Random(seed)
    for _ in range(max_tries):
        B = _random_symmetric(rng, n, C)
        B[0][0] = 0
        pair = FormPair(tuple(map(tuple, B)))
        if pair.disc() != 0:
            return pair
    raise RuntimeError(f"rejection sampling gave up after {max_tries} draws")


def isotropic_line_oracle(pair: FormPair, T: int):
    """Primitive y in [-T, T]^3 with y^t A0 y = y^t B y = 0, or None if none up to T."""
    if pair.n != 3:
        raise ValueError("oracle is for n = 3")
    from math import gcd

    for y in itertools.product(range(-T, T + 1), repeat=3):
        first = next((v for v in y if v), 0)
        if first <= 0:
            continue
        if gcd(gcd(y[0], y[1]), y[2]) != 1:
            continue
        if 2 * y[0] * y[2] + y[1] * y[1] != 0:
            continue
        if pair.form(y, y) == 0:
            return y
    return None


def line_value(y, forms) -> Fraction | None:
    """L1(y)/L2(y) for a line, whose Pluecker coordinates are y itself."""
    L1, L2 = forms
    den = sum(b * v for b, v in zip(L2, y))
    if den == 0:
        return None
    return Fraction(sum(a * v for a, v in zip(L1, y)), den)
