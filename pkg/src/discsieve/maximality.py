"""Squarefree discriminants and p-maximality of Z[x]/(f) via Dedekind's criterion."""

from __future__ import annotations

from dataclasses import dataclass

from . import fpx
from .factor import FactoredInteger, factor
from .polyarith import MonicPoly, as_poly, discriminant


class ZeroDiscriminant(ValueError):
    pass


@dataclass(frozen=True)
class MaximalityVerdict:
    is_maximal: bool
    obstruction_primes: tuple[int, ...]
    squarefree_disc: bool

    def to_dict(self) -> dict:
        return {
            "is_maximal": self.is_maximal,
            "obstruction_primes": [str(p) for p in self.obstruction_primes],
            "squarefree_disc": self.squarefree_disc,
        }


def _nonzero_disc(f: MonicPoly) -> int:
    d = discriminant(f)
    if d == 0:
        raise ZeroDiscriminant(f"discriminant of {f} is zero")
    return d


def is_squarefree_disc(f, disc: int | None = None) -> bool:
    f = as_poly(f)
    d = _nonzero_disc(f) if disc is None else disc
    if d == 0:
        raise ZeroDiscriminant(f"discriminant of {f} is zero")
    return factor(d).is_squarefree()


def dedekind_test(coeffs_low_first: list[int], p: int) -> bool:
    """Dedekind's criterion for a monic integer polynomial at the prime p."""
    fbar = fpx.reduce(coeffs_low_first, p)
    g = fpx.radical(fbar, p)
    h = fpx.divmod_(fbar, g, p)[0]
    # T = (g* h* - f) / p, computed over Z with the least nonnegative lifts
    gh = [0] * (len(g) + len(h) - 1)
    for i, x in enumerate(g):
        for j, y in enumerate(h):
            gh[i + j] += x * y
    diff = [a - b for a, b in zip(gh, coeffs_low_first)]
    assert all(c % p == 0 for c in diff)
    T = fpx.reduce([c // p for c in diff], p)
    common = fpx.gcd(fpx.gcd(g, h, p), T, p)
    return len(common) == 1


def p_maximal(f, p: int, disc: int | None = None) -> bool:
    f = as_poly(f)
    d = _nonzero_disc(f) if disc is None else disc
    if d == 0:
        raise ZeroDiscriminant(f"discriminant of {f} is zero")
    if d % (p * p):
        return True
    return dedekind_test(f.dense()[::-1], p)


def is_maximal(f, budget: int = 1_000_000, disc: int | None = None) -> MaximalityVerdict:
    """Maximality of Z[x]/(f); only primes whose square divides disc(f) are tested.

    Raises FactorizationBudgetExceeded when disc(f) cannot be factored within
    ``budget`` rho iterations.
    """
    f = as_poly(f)
    d = _nonzero_disc(f) if disc is None else disc
    if d == 0:
        raise ZeroDiscriminant(f"discriminant of {f} is zero")
    fd: FactoredInteger = factor(d, budget=budget)
    if fd.is_squarefree():
        return MaximalityVerdict(True, (), True)
    coeffs = f.dense()[::-1]
    bad = tuple(p for p, e in fd.factors if e >= 2 and not dedekind_test(coeffs, p))
    return MaximalityVerdict(not bad, bad, False)
