"""Local densities of W_m and the truncated Euler product for squarefree discriminants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .factor import primes_up_to
from .polyarith import fiber_discriminant, trinomial_disc  # noqa: F401  (re-exported)


class DensityBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class LocalDensity:
    m: int
    density: Fraction
    fiber: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "m": str(self.m),
            "fiber": None if self.fiber is None else [str(a) for a in self.fiber],
            "density": f"{self.density.numerator}/{self.density.denominator}",
            "float": float(self.density),
        }


def _roots_mod(coeff_rows: np.ndarray, modulus: int) -> np.ndarray:
    """For each row of (reduced) fibre coefficients, count t mod modulus with value = 0."""
    t = np.arange(modulus, dtype=np.int64)
    acc = np.zeros((coeff_rows.shape[0], modulus), dtype=np.int64)
    for j in range(coeff_rows.shape[1] - 1, -1, -1):
        acc = (acc * t + coeff_rows[:, j : j + 1]) % modulus
    return (acc == 0).sum(axis=1)


def _fiber_rows(heads, modulus: int, n: int) -> np.ndarray:
    rows = np.zeros((len(heads), n), dtype=np.int64)
    for i, head in enumerate(heads):
        for j, c in enumerate(fiber_discriminant(head)):
            rows[i, j] = c % modulus
    return rows


def fiber_density(a, m: int) -> LocalDensity:
    """Fraction of a_n mod m^2 with m^2 dividing disc(x^n + a_1 x^{n-1} + ... + a_n)."""
    a = tuple(int(x) for x in a)
    if m < 1:
        raise ValueError("m must be positive")
    M2 = m * m
    rows = _fiber_rows([a], M2, len(a) + 1)
    hits = int(_roots_mod(rows, M2)[0])
    return LocalDensity(m, Fraction(hits, M2), a)


def local_density(n: int, m: int, budget: int = 2 * 10**7, depress: bool = True) -> LocalDensity:
    """theta(m): the density of monic degree-n f with m^2 | disc(f).

    Fibres over (a_1, ..., a_{n-1}) mod m^2 and counts roots of the fibre
    discriminant.  When gcd(m, n) = 1 every class is a translate of exactly
    one class with a_1 = 0, so only that slice is enumerated.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return LocalDensity(1, Fraction(1))
    M2 = m * m
    reduce_a1 = depress and gcd(m, n) == 1
    free = n - 2 if reduce_a1 else n - 1
    work = M2 ** (free + 1)
    if work > budget:
        raise DensityBudgetExceeded(f"{work} evaluations over budget {budget}")
    first = [0] if reduce_a1 else range(M2)
    heads = [(a1, *rest) for a1 in first for rest in itertools.product(range(M2), repeat=n - 2)]
    hits = 0
    step = max(1, budget // (4 * M2))
    for i in range(0, len(heads), step):
        rows = _fiber_rows(heads[i : i + step], M2, n)
        hits += int(_roots_mod(rows, M2).sum())
    return LocalDensity(m, Fraction(hits, M2 ** (free + 1)))


@dataclass
class LambdaProduct:
    n: int
    cutoff: int
    thetas: dict[int, Fraction]
    product: Fraction
    decay_constant: float  # max over p of p^2 theta(p)
    lower: float  # product * (1 - c / P), using sum_{p > P} 1/p^2 < 1/P

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "cutoff": self.cutoff,
            "thetas": {str(p): f"{t.numerator}/{t.denominator}" for p, t in self.thetas.items()},
            "product": f"{self.product.numerator}/{self.product.denominator}",
            "product_float": float(self.product),
            "decay_constant": self.decay_constant,
            "tail_lower_bracket": self.lower,
        }


def euler_product_lambda(n: int, P: int, budget: int = 2 * 10**7) -> LambdaProduct:
    """prod_{p <= P} (1 - theta(p)), the truncated squarefree-discriminant density."""
    thetas = {}
    product = Fraction(1)
    for p in primes_up_to(P):
        theta = local_density(n, p, budget=budget).density
        thetas[p] = theta
        product *= 1 - theta
    c = max((float(t) * p * p for p, t in thetas.items()), default=0.0)
    lower = float(product) * max(0.0, 1 - c / max(P, 1))
    return LambdaProduct(n, P, thetas, product, c, lower)
