"""Exact arithmetic on monic integer polynomials.

A monic polynomial ``x^n + a_1 x^{n-1} + ... + a_n`` is stored by its
coefficient tuple ``(a_1, ..., a_n)``.  Everything here is exact integer
arithmetic; rationals only appear transiently inside interpolation and are
checked to be integral before they leave this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence


@dataclass(frozen=True)
class MonicPoly:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) < 1:
            raise ValueError("a monic polynomial needs degree >= 1")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, *coeffs: int) -> "MonicPoly":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def dense(self) -> list[int]:
        """Coefficients from the leading term down, leading 1 included."""
        return [1, *self.coeffs]

    def __call__(self, x):
        acc = 1
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def derivative_at(self, x):
        n = self.degree
        acc = n
        for i, c in enumerate(self.coeffs[:-1], start=1):
            acc = acc * x + (n - i) * c
        return acc

    def height(self) -> float:
        return max(abs(a) ** (1.0 / i) for i, a in enumerate(self.coeffs, start=1))

    def height_below(self, H) -> bool:
        """Exact test of ``H(f) < H``, i.e. ``|a_i| < H^i`` for every i."""
        H = Fraction(str(H)) if isinstance(H, float) else Fraction(H)
        return all(abs(a) < H**i for i, a in enumerate(self.coeffs, start=1))

    def to_json(self) -> str:
        return json.dumps([str(self.degree), *(str(a) for a in self.coeffs)])

    @classmethod
    def from_json(cls, text) -> "MonicPoly":
        data = json.loads(text) if isinstance(text, str) else list(text)
        n, *coeffs = (int(v) for v in data)
        if n != len(coeffs):
            raise ValueError(f"degree {n} does not match {len(coeffs)} coefficients")
        return cls(tuple(coeffs))

    def __str__(self) -> str:
        n = self.degree
        terms = [f"x^{n}"]
        for i, a in enumerate(self.coeffs, start=1):
            if a == 0:
                continue
            e = n - i
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            mag = abs(a)
            body = f"{mag}{mono}" if (mag != 1 or not mono) else mono
            terms.append(("- " if a < 0 else "+ ") + body)
        return " ".join(terms)


def as_poly(f) -> MonicPoly:
    if isinstance(f, MonicPoly):
        return f
    return MonicPoly(tuple(f))


# --- exact linear algebra -------------------------------------------------


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    M = [list(row) for row in matrix]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        row_k = M[k]
        for i in range(k + 1, n):
            row_i = M[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def sylvester_matrix(f: Sequence[int], g: Sequence[int]) -> list[list[int]]:
    """Sylvester matrix of two dense coefficient lists (leading term first)."""
    m, k = len(f) - 1, len(g) - 1
    size = m + k
    rows = []
    for i in range(k):
        rows.append([0] * i + list(f) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g) + [0] * (size - k - 1 - i))
    return rows


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Res(f, g) as the Sylvester determinant; equals prod g(r) over roots r of monic f."""
    return bareiss_det(sylvester_matrix(f, g))


def derivative_dense(dense: Sequence[int]) -> list[int]:
    n = len(dense) - 1
    return [c * (n - i) for i, c in enumerate(dense[:-1])]


def discriminant(f) -> int:
    f = as_poly(f)
    n = f.degree
    if n == 1:
        return 1
    dense = f.dense()
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(dense, derivative_dense(dense))


# --- translation ----------------------------------------------------------


def taylor_shift(dense: Sequence[int], k: int) -> list[int]:
    """Coefficients of p(x + k) given those of p (leading first)."""
    out = list(dense)
    n = len(out) - 1
    if k == 0:
        return out
    for i in range(n):
        for j in range(1, n - i + 1):
            out[j] += k * out[j - 1]
    return out


def translate(f, k: int) -> MonicPoly:
    f = as_poly(f)
    return MonicPoly(tuple(taylor_shift(f.dense(), int(k))[1:]))


def depress(f) -> MonicPoly:
    """Shift ``f`` so that its subleading coefficient vanishes.

    Only defined when the degree divides ``a_1``; otherwise the shift is not
    integral and a ValueError is raised.
    """
    f = as_poly(f)
    n, a1 = f.degree, f.coeffs[0]
    if a1 % n:
        raise ValueError(f"degree {n} does not divide a_1 = {a1}; use translate instead")
    return translate(f, -(a1 // n))


# --- interpolation ----------------------------------------------------------


def interpolate(nodes: Sequence[int], values: Sequence[int]) -> list[int]:
    """Integer-coefficient polynomial through the points, lowest degree first.

    Newton divided differences over Fractions; raises if the interpolant is
    not integral, which would mean the caller's degree bound was wrong.
    """
    m = len(nodes)
    table = [Fraction(v) for v in values]
    newton = [table[0]]
    for level in range(1, m):
        table = [
            (table[i + 1] - table[i]) / (nodes[i + level] - nodes[i])
            for i in range(m - level)
        ]
        newton.append(table[0])
    # expand the Newton form into monomial coefficients
    coeffs = [Fraction(0)] * m
    for level in range(m - 1, -1, -1):
        # coeffs <- coeffs * (y - nodes[level]) + newton[level]
        shifted = [Fraction(0)] + coeffs[:-1]
        coeffs = [s - nodes[level] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] += newton[level]
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ArithmeticError(f"non-integral interpolated coefficient {c}")
        out.append(int(c))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


# --- difference polynomial and delta prime --------------------------------


@dataclass(frozen=True)
class DiffPoly:
    """D(y) = prod_{i<j} (y - (r_i - r_j)^2), coefficients lowest degree first."""

    coeffs: tuple[int, ...]
    degree_n: int

    @property
    def N(self) -> int:
        return self.degree_n * (self.degree_n - 1) // 2

    def __call__(self, y):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def discriminant(self) -> int:
        return (-1) ** self.N * self.coeffs[0]

    def delta_prime(self) -> int:
        if self.N == 0:
            return 0
        return (-1) ** (self.N - 1) * self.coeffs[1]


def shift_resultant(f, z: int) -> int:
    """Res_x(f(x), f(x + z)) = z^n D(z^2)."""
    f = as_poly(f)
    dense = f.dense()
    return resultant(dense, taylor_shift(dense, z))


def diff_poly(f) -> DiffPoly:
    f = as_poly(f)
    n = f.degree
    N = n * (n - 1) // 2
    zs = range(1, N + 2)
    values = []
    for z in zs:
        r = shift_resultant(f, z)
        q, rem = divmod(r, z**n)
        if rem:
            raise ArithmeticError(f"z^{n} does not divide Res(f(x), f(x+{z}))")
        values.append(q)
    coeffs = interpolate([z * z for z in zs], values)
    coeffs += [0] * (N + 1 - len(coeffs))
    if coeffs[N] != 1:
        raise ArithmeticError("difference polynomial is not monic")
    return DiffPoly(tuple(coeffs), n)


def delta_prime(f) -> int:
    return diff_poly(f).delta_prime()


def diff_poly_power_sums(f) -> DiffPoly:
    """Same D(y) as :func:`diff_poly`, via Newton's identities.

    Power sums of the roots give power sums of the squared differences,
    which Newton's identities turn into the coefficients of D.  Independent
    of the resultant route and much cheaper, so it backs the hot loops.
    """
    f = as_poly(f)
    n = f.degree
    N = n * (n - 1) // 2
    a = f.coeffs
    # root power sums p_0 .. p_{2N}
    top = 2 * N
    p = [n] + [0] * top
    for k in range(1, top + 1):
        s = -k * a[k - 1] if k <= n else 0
        for i in range(1, min(k - 1, n) + 1):
            s -= a[i - 1] * p[k - i]
        p[k] = s
    # power sums of the squared differences: S_k = sum_{i<j} (r_i - r_j)^{2k}
    S = [N]
    for k in range(1, N + 1):
        total = 0
        for t in range(2 * k + 1):
            term = comb(2 * k, t) * p[2 * k - t] * p[t]
            total += -term if t % 2 else term
        S.append(total // 2)
    # elementary symmetric functions e_k of the squared differences
    e = [1]
    for k in range(1, N + 1):
        s = 0
        for i in range(1, k + 1):
            s += (-1) ** (i - 1) * e[k - i] * S[i]
        q, rem = divmod(s, k)
        if rem:
            raise ArithmeticError("Newton identity produced a non-integer")
        e.append(q)
    coeffs = [(-1) ** (N - j) * e[N - j] for j in range(N + 1)]
    return DiffPoly(tuple(coeffs), n)


def delta_prime_fast(f) -> int:
    return diff_poly_power_sums(f).delta_prime()


def discriminant_fast(f) -> int:
    return diff_poly_power_sums(f).discriminant()


# --- fibres over the constant coefficient ---------------------------------


@lru_cache(maxsize=4096)
def _fiber_coeffs(head: tuple[int, ...], which: str) -> tuple[int, ...]:
    n = len(head) + 1
    func = discriminant if which == "disc" else delta_prime_fast
    nodes = list(range(n))
    values = [func(MonicPoly(head + (t,))) for t in nodes]
    return tuple(interpolate(nodes, values))


def fiber_discriminant(head: Iterable[int]) -> tuple[int, ...]:
    """Coefficients (lowest first) of t -> disc(x^n + a_1 x^{n-1} + ... + t).

    ``head`` is ``(a_1, ..., a_{n-1})``; the result has degree n - 1.
    """
    return _fiber_coeffs(tuple(int(a) for a in head), "disc")


def fiber_delta_prime(head: Iterable[int]) -> tuple[int, ...]:
    """Coefficients of t -> delta_prime of the same fibre (degree <= n - 2)."""
    return _fiber_coeffs(tuple(int(a) for a in head), "dprime")


def horner(coeffs_low_first: Sequence[int], t):
    acc = 0
    for c in reversed(coeffs_low_first):
        acc = acc * t + c
    return acc


def trinomial_disc(n: int, b: int, c: int) -> int:
    """Closed form for disc(x^n + b x + c)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    s1 = -1 if (n * (n - 1) // 2) % 2 else 1
    s2 = -1 if (n * (n + 1) // 2) % 2 else 1
    return s1 * n**n * c ** (n - 1) - s2 * (n - 1) ** (n - 1) * b**n
