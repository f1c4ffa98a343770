"""Exact enumeration of monic polynomials in height boxes.

A box of degree n and height H holds every (a_1, ..., a_n) with
|a_i| < H^i, i.e. |a_i| <= ceil(H^i) - 1.  Enumeration walks the fibres
(a_1, ..., a_{n-1}) and evaluates the fibre discriminant t -> disc(..., t)
along the a_n axis; workers receive disjoint slices of the first free
coefficient and their tallies are summed, so reports do not depend on the
worker count.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod

import numpy as np

from .factor import FactorizationBudgetExceeded, factor
from .maximality import dedekind_test
from .parallel import default_workers, parallel_map
from .polyarith import MonicPoly, fiber_delta_prime, fiber_discriminant, horner
from .sieve import w2_witness

DEFAULT_BUDGET = 10**9
INT64_SAFE = 2**62


class BudgetExceeded(RuntimeError):
    def __init__(self, total: int, budget: int):
        super().__init__(f"box holds {total} polynomials, over the budget of {budget}")
        self.total = total
        self.budget = budget


def _exact(H) -> Fraction:
    if isinstance(H, Fraction):
        return H
    if isinstance(H, float):
        return Fraction(str(H))
    return Fraction(H)


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class HeightBox:
    n: int
    H: Fraction
    subleading_zero: bool = False

    def __post_init__(self):
        object.__setattr__(self, "H", _exact(self.H))
        if self.n < 2:
            raise ValueError("degree must be at least 2")
        if self.H <= 1:
            raise ValueError("height bound must exceed 1")

    @property
    def bounds(self) -> tuple[int, ...]:
        """Largest allowed |a_i| for i = 1..n."""
        out = [_ceil(self.H**i) - 1 for i in range(1, self.n + 1)]
        if self.subleading_zero:
            out[0] = 0
        return tuple(out)

    @property
    def total(self) -> int:
        return prod(2 * b + 1 for b in self.bounds)

    def ranges(self) -> list[range]:
        return [range(-b, b + 1) for b in self.bounds]

    def __iter__(self):
        for coeffs in itertools.product(*self.ranges()):
            yield MonicPoly(coeffs)

    def describe(self) -> dict:
        return {
            "n": self.n,
            "H": str(self.H),
            "subleading_zero": self.subleading_zero,
            "bounds": [str(b) for b in self.bounds],
        }


@dataclass(frozen=True)
class Predicates:
    """What to count in one sweep.

    ``small_threshold`` counts nonzero |disc| below it; ``tail_M`` counts
    polynomials lying in W_m for some m > M (one entry per M).
    """

    squarefree: bool = False
    maximal: bool = False
    small_threshold: int | None = None
    tail_M: tuple[int, ...] = ()
    w_tails: bool = False

    @classmethod
    def parse(cls, names, threshold=None, tail_M=()) -> "Predicates":
        names = {s.strip() for s in names if s.strip()}
        unknown = names - {"squarefree", "maximal", "smalldisc", "tail", "wtails"}
        if unknown:
            raise ValueError(f"unknown predicates: {sorted(unknown)}")
        return cls(
            squarefree="squarefree" in names,
            maximal="maximal" in names,
            small_threshold=threshold if "smalldisc" in names else None,
            tail_M=tuple(tail_M) if ("tail" in names or "wtails" in names) else (),
            w_tails="wtails" in names,
        )

    @property
    def needs_factor(self) -> bool:
        return self.squarefree or self.maximal or bool(self.tail_M)


@dataclass
class CensusReport:
    box: HeightBox
    total: int
    zero_disc: int = 0
    counts: dict[str, int] = field(default_factory=dict)
    budget_failures: int = 0
    max_abs_disc: int | None = None
    engine: str = "exact"

    def density(self, key: str) -> Fraction:
        return Fraction(self.counts[key], self.total)

    def to_dict(self) -> dict:
        return {
            "box": self.box.describe(),
            "total": str(self.total),
            "zero_disc": str(self.zero_disc),
            "budget_failures": str(self.budget_failures),
            "max_abs_disc": None if self.max_abs_disc is None else str(self.max_abs_disc),
            "counts": {k: str(v) for k, v in self.counts.items()},
            "densities": {
                k: {"exact": f"{v}/{self.total}", "float": v / self.total}
                for k, v in self.counts.items()
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# --- per-polynomial invariants --------------------------------------------


def w1_max_modulus(t: int, dprime: int) -> int:
    """Largest m with m^2 | disc and m | delta_prime, given t = sqrt of the square part."""
    return gcd(t, dprime)


def w2_max_modulus(f: MonicPoly, fd) -> int:
    """Largest m with m^2 | disc(f) and f in W2_m (W2 membership is multiplicative)."""
    m = 1
    for p, e in fd.factors:
        for j in range(e // 2, 0, -1):
            if w2_witness(f, p**j) is not None:
                m *= p**j
                break
    return m


def _fiber_values(coeffs, lo: int, hi: int):
    """Discriminants along one fibre, as int64 when they provably fit."""
    L = max(abs(lo), abs(hi))
    bound = sum(abs(c) * L**j for j, c in enumerate(coeffs))
    if bound < INT64_SAFE:
        t = np.arange(lo, hi + 1, dtype=np.int64)
        acc = np.zeros_like(t)
        for c in reversed(coeffs):
            acc = acc * t + c
        return acc, True
    return [horner(coeffs, t) for t in range(lo, hi + 1)], False


def _chunk_heads(box: HeightBox, workers: int):
    """Split the fibre space along its first non-degenerate coordinate."""
    ranges = box.ranges()[:-1]
    axis = next((i for i, r in enumerate(ranges) if len(r) > 1), 0)
    values = list(ranges[axis])
    parts = max(1, min(len(values), 4 * workers if workers > 1 else 1))
    return [(box, axis, values[i::parts]) for i in range(parts)]


def _census_chunk(args) -> tuple[int, Counter, int, int]:
    (box, axis, axis_values), preds, fbudget = args
    ranges = box.ranges()
    lo, hi = -box.bounds[-1], box.bounds[-1]
    head_ranges = list(ranges[:-1])
    head_ranges[axis] = axis_values
    zero = 0
    failures = 0
    biggest = 0
    counts: Counter = Counter()
    for head in itertools.product(*head_ranges):
        coeffs = fiber_discriminant(head)
        values, vectorised = _fiber_values(coeffs, lo, hi)
        if vectorised:
            biggest = max(biggest, int(np.abs(values).max()))
            nz = values != 0
            zero += int((~nz).sum())
            if preds.small_threshold is not None:
                counts["smalldisc"] += int((nz & (np.abs(values) < preds.small_threshold)).sum())
            if not preds.needs_factor:
                continue
            values = values.tolist()
        else:
            biggest = max(biggest, max(abs(v) for v in values))
            zero += sum(1 for v in values if v == 0)
            if preds.small_threshold is not None:
                counts["smalldisc"] += sum(1 for v in values if v and abs(v) < preds.small_threshold)
            if not preds.needs_factor:
                continue
        pcoef = fiber_delta_prime(head) if preds.w_tails else None
        for t, d in zip(range(lo, hi + 1), values):
            if d == 0:
                continue
            try:
                fd = factor(d, budget=fbudget)
            except FactorizationBudgetExceeded:
                failures += 1
                continue
            sqfree = fd.is_squarefree()
            if preds.squarefree and sqfree:
                counts["squarefree"] += 1
            if preds.maximal:
                if sqfree:
                    counts["maximal"] += 1
                else:
                    coeffs_low = [t, *reversed(head), 1]
                    if all(dedekind_test(coeffs_low, p) for p, e in fd.factors if e >= 2):
                        counts["maximal"] += 1
            if preds.tail_M:
                tpart = fd.square_root_part()
                upart = fd.squarefree_square_part()
                if preds.w_tails:
                    m1 = w1_max_modulus(tpart, horner(pcoef, t))
                    m2 = w2_max_modulus(MonicPoly(head + (t,)), fd) if tpart > 1 else 1
                for M in preds.tail_M:
                    if tpart > M:
                        counts[f"tail[M={M}]"] += 1
                    if upart > M:
                        counts[f"tail_squarefree_m[M={M}]"] += 1
                    if preds.w_tails:
                        if m1 > M:
                            counts[f"W1_tail[M={M}]"] += 1
                        if m2 > M:
                            counts[f"W2_tail[M={M}]"] += 1
    return zero, counts, failures, biggest


def _cubic_eligible(box: HeightBox, preds: Predicates) -> bool:
    from .cubic import safe_bounds

    return (
        box.n == 3
        and preds.small_threshold is None
        and not preds.tail_M
        and safe_bounds(*box.bounds)
    )


def enumerate_box(
    box: HeightBox,
    preds: Predicates,
    budget: int = DEFAULT_BUDGET,
    workers: int | None = None,
    engine: str = "auto",
    factor_budget: int = 1_000_000,
) -> CensusReport:
    """Exact counts of every requested predicate over the box.

    ``engine`` is "exact" (fibrewise discriminants plus factorization, any
    degree), "cubic" (compiled residue-class sieve, n = 3 with squarefree and
    maximal only) or "auto".
    """
    total = box.total
    if total > budget:
        raise BudgetExceeded(total, budget)
    workers = default_workers() if workers is None else workers
    if engine == "auto":
        engine = "cubic" if _cubic_eligible(box, preds) else "exact"
    report = CensusReport(box, total, engine=engine)
    if engine == "cubic":
        if not _cubic_eligible(box, preds):
            raise ValueError("the cubic engine handles n = 3 with squarefree/maximal only")
        zero, sqf, maxi = _cubic_parallel(box, workers)
        report.zero_disc = zero
        if preds.squarefree:
            report.counts["squarefree"] = sqf
        if preds.maximal:
            report.counts["maximal"] = maxi
        return report
    if engine != "exact":
        raise ValueError(f"unknown engine {engine!r}")
    counts: Counter = Counter()
    chunks = [(c, preds, factor_budget) for c in _chunk_heads(box, workers)]
    report.max_abs_disc = 0
    for zero, part, failures, biggest in parallel_map(_census_chunk, chunks, workers):
        report.max_abs_disc = max(report.max_abs_disc, biggest)
        report.zero_disc += zero
        report.budget_failures += failures
        counts.update(part)
    keys = []
    if preds.squarefree:
        keys.append("squarefree")
    if preds.maximal:
        keys.append("maximal")
    if preds.small_threshold is not None:
        keys.append("smalldisc")
    for M in preds.tail_M:
        keys += [f"tail[M={M}]", f"tail_squarefree_m[M={M}]"]
        if preds.w_tails:
            keys += [f"W1_tail[M={M}]", f"W2_tail[M={M}]"]
    report.counts = {k: counts.get(k, 0) for k in keys}
    return report


def _cubic_job(args):
    from .cubic import cubic_counts

    a1_values, B1, B2, B3 = args
    return cubic_counts(a1_values, B2, B3, B1=B1)


def _cubic_parallel(box: HeightBox, workers: int) -> tuple[int, int, int]:
    B1, B2, B3 = box.bounds
    a1s = list(range(-B1, B1 + 1))
    parts = max(1, min(len(a1s), workers))
    jobs = [(a1s[i::parts], B1, B2, B3) for i in range(parts)]
    out = [0, 0, 0]
    for res in parallel_map(_cubic_job, jobs, workers):
        out = [a + b for a, b in zip(out, res)]
    return out[0], out[1], out[2]


# --- named censuses ---------------------------------------------------------


def disc_threshold(H, exponent) -> int:
    """Smallest integer T with |d| < H^exponent  <=>  |d| < T for integers d."""
    H = _exact(H)
    e = _exact(exponent)
    if e <= 0:
        return 1
    target = H**e.numerator  # compare x^den < target
    q = e.denominator
    x = int(float(H) ** float(e))
    while x > 0 and Fraction(x) ** q >= target:
        x -= 1
    while Fraction(x + 1) ** q < target:
        x += 1
    return x + 1


def small_disc_census(n: int, H, kappa, budget: int = DEFAULT_BUDGET, workers: int | None = None) -> CensusReport:
    """Count f with a_1 = 0, H(f) < H and 0 < |disc f| < H^(n(n-1) - kappa)."""
    kappa = _exact(kappa)
    if not 0 < kappa < n * (n - 1):
        raise ValueError("kappa must lie strictly between 0 and n(n-1)")
    box = HeightBox(n, H, subleading_zero=True)
    T = disc_threshold(H, n * (n - 1) - kappa)
    report = enumerate_box(box, Predicates(small_threshold=T), budget, workers, engine="exact")
    report.counts["threshold"] = T
    return report


def scaling_exponent(n: int, kappa) -> Fraction:
    return Fraction((n - 1) * (n + 2), 2) - _exact(kappa) / (n - 1)


def tail_census(
    n: int,
    H,
    M_values,
    budget: int = DEFAULT_BUDGET,
    workers: int | None = None,
    w_tails: bool = False,
    subleading_zero: bool = False,
) -> CensusReport:
    """Count f in the union of W_m over m > M, for each M given."""
    box = HeightBox(n, H, subleading_zero)
    names = ["tail", "squarefree"] + (["wtails"] if w_tails else [])
    preds = Predicates.parse(names, tail_M=tuple(int(M) for M in M_values))
    return enumerate_box(box, preds, budget, workers, engine="exact")

