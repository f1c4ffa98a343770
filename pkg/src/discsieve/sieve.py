"""Square-divisibility classes W_m, W_m^(1), W_m^(2) and their prime-power splitting.

For a monic integer polynomial f and m >= 1:

* f is in W_m when m^2 divides disc(f) and disc(f) != 0;
* f is in W1_m when additionally m divides delta_prime(f);
* f is in W2_m when additionally some integer r has m | f'(r) and m^2 | f(r).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .factor import FactoredInteger, factor
from .parallel import parallel_map
from .polyarith import (
    MonicPoly,
    as_poly,
    delta_prime_fast,
    discriminant,
    fiber_delta_prime,
    fiber_discriminant,
    horner,
)


class InvariantViolation(RuntimeError):
    """A containment that must hold for every polynomial failed."""


def _modulus(m) -> FactoredInteger:
    fm = m if isinstance(m, FactoredInteger) else factor(int(m))
    if fm.value < 1:
        raise ValueError(f"modulus must be positive, got {fm.value}")
    return fm


@dataclass(frozen=True)
class SieveMembership:
    m: int
    in_Wm: bool
    in_W1: bool
    in_W2: bool
    witness_r: int | None = None

    def __post_init__(self):
        if (self.in_W1 or self.in_W2) and not self.in_Wm:
            raise InvariantViolation("W1/W2 membership without W_m membership")
        if self.in_W2 != (self.witness_r is not None):
            raise InvariantViolation("W2 witness present iff in_W2")

    def to_dict(self) -> dict:
        return {
            "m": str(self.m),
            "in_Wm": self.in_Wm,
            "in_W1": self.in_W1,
            "in_W2": self.in_W2,
            "witness_r": None if self.witness_r is None else str(self.witness_r),
        }


def member_Wm(f, m, disc: int | None = None) -> bool:
    f = as_poly(f)
    mm = _modulus(m).value
    d = discriminant(f) if disc is None else disc
    return d != 0 and d % (mm * mm) == 0


def member_W1(f, m, disc: int | None = None, dprime: int | None = None) -> bool:
    f = as_poly(f)
    mm = _modulus(m).value
    if not member_Wm(f, mm, disc):
        return False
    dp = delta_prime_fast(f) if dprime is None else dprime
    return dp % mm == 0


def _prime_power_witness(f: MonicPoly, p: int, k: int) -> int | None:
    """Some r mod p^k with p^k | f'(r) and p^(2k) | f(r), or None.

    Lifts residues digit by digit.  At level j a residue r mod p^j survives
    when p^j | f'(r) and p^(2j) | f(r); both conditions depend only on
    r mod p^j once the first holds, so pruning is exact.
    """
    if k == 0:
        return 0
    stack = [(r, 1) for r in range(p - 1, -1, -1)]
    while stack:
        r, j = stack.pop()
        pj = p**j
        if f.derivative_at(r) % pj or f(r) % (pj * pj):
            continue
        if j == k:
            return r
        for s in range(p - 1, -1, -1):
            stack.append((r + pj * s, j + 1))
    return None


def _crt(residues: list[tuple[int, int]]) -> int:
    r, mod = 0, 1
    for a, q in residues:
        t = (a - r) * pow(mod, -1, q) % q
        r, mod = r + mod * t, mod * q
    return r % mod


def w2_witness(f, m) -> int | None:
    """Residue r in [0, m) with m | f'(r) and m^2 | f(r), ignoring the W_m condition."""
    f = as_poly(f)
    fm = _modulus(m)
    parts = []
    for p, k in fm.factors:
        r = _prime_power_witness(f, p, k)
        if r is None:
            return None
        parts.append((r, p**k))
    return _crt(parts) if parts else 0


def member_W2(f, m, disc: int | None = None) -> SieveMembership:
    """Full membership record for (f, m); the W2 witness is reduced mod m."""
    f = as_poly(f)
    fm = _modulus(m)
    mm = fm.value
    d = discriminant(f) if disc is None else disc
    in_wm = d != 0 and d % (mm * mm) == 0
    if not in_wm:
        return SieveMembership(mm, False, False, False)
    in_w1 = delta_prime_fast(f) % mm == 0
    r = w2_witness(f, fm)
    return SieveMembership(mm, True, in_w1, r is not None, r)


def brute_w2_witness(f, m: int) -> int | None:
    """Exhaustive search over r in [0, m^2); the oracle for :func:`w2_witness`."""
    f = as_poly(f)
    for r in range(m * m):
        if f.derivative_at(r) % m == 0 and f(r) % (m * m) == 0:
            return r
    return None


# --- containment of W_{p^k} in W1 union W2 ------------------------------


def w2_exponent(p: int, k: int, sharp: bool = False) -> int:
    """Exponent e with W_{p^k} contained in W1_{p^k} union W2_{p^e}.

    The default is ceil(k/2) - v_p(2).  ``sharp`` gives floor(k/2) + 1 - v_p(2):
    in the W2 branch the closest root pair has valuation strictly above k/2,
    so its ceiling is at least floor(k/2) + 1.  The two agree for odd k.
    """
    v2 = 1 if p == 2 else 0
    return (k // 2 + 1 if sharp else (k + 1) // 2) - v2


@dataclass
class LemmaReport:
    p: int
    k: int
    n: int
    classes_total: int = 0
    classes_in_Wpk: int = 0
    in_W1: int = 0
    in_W2: int = 0
    skipped_zero_disc: int = 0
    violations: list = field(default_factory=list)

    def merge(self, other: "LemmaReport") -> "LemmaReport":
        self.classes_total += other.classes_total
        self.classes_in_Wpk += other.classes_in_Wpk
        self.in_W1 += other.in_W1
        self.in_W2 += other.in_W2
        self.skipped_zero_disc += other.skipped_zero_disc
        self.violations.extend(other.violations)
        return self

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "classes_total": self.classes_total,
            "classes_in_Wpk": self.classes_in_Wpk,
            "in_W1": self.in_W1,
            "in_W2": self.in_W2,
            "skipped_zero_disc": self.skipped_zero_disc,
            "violations": [[str(a) for a in v] for v in self.violations],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _lemma_chunk(args) -> LemmaReport:
    p, k, n, e, firsts = args
    pk = p**k
    P = pk * pk
    rep = LemmaReport(p, k, n)
    for a1 in firsts:
        for rest in itertools.product(range(P), repeat=n - 2):
            head = (a1, *rest)
            dcoef = fiber_discriminant(head)
            pcoef = None
            rep.classes_total += P
            for t in range(P):
                if horner(dcoef, t) % P:
                    continue
                for lift in range(n + 1):
                    an = t + lift * P
                    disc = horner(dcoef, an)
                    if disc:
                        break
                else:
                    rep.skipped_zero_disc += 1
                    continue
                rep.classes_in_Wpk += 1
                if pcoef is None:
                    pcoef = fiber_delta_prime(head)
                in1 = horner(pcoef, an) % pk == 0
                f = MonicPoly(head + (an,))
                in2 = w2_witness(f, p**e) is not None
                rep.in_W1 += in1
                rep.in_W2 += in2
                if not (in1 or in2):
                    rep.violations.append(f.coeffs)
    return rep


def _verify(p: int, k: int, n: int, e: int, ceiling: int, workers: int) -> LemmaReport:
    if n < 2:
        raise ValueError("degree must be at least 2")
    P = p ** (2 * k)
    if P**n > ceiling:
        raise ValueError(f"{P}^{n} residue classes exceed the enumeration ceiling {ceiling}")
    chunks = [(p, k, n, e, list(range(P))[i::max(workers, 1)]) for i in range(max(workers, 1))]
    rep = LemmaReport(p, k, n)
    for part in parallel_map(_lemma_chunk, chunks, workers):
        rep.merge(part)
    return rep


def verify_lemma31(
    p: int, k: int, n: int = 3, ceiling: int = 10**8, workers: int = 1, sharp: bool = False
) -> LemmaReport:
    """Check W_{p^k} in W1_{p^k} union W2_{p^ceil(k/2)} on every class mod p^(2k), p odd."""
    if p == 2:
        raise ValueError("use verify_lemma31_even for p = 2")
    if p < 2 or factor(p).factors != ((p, 1),):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("k must be positive")
    return _verify(p, k, n, w2_exponent(p, k, sharp), ceiling, workers)


def verify_lemma31_even(
    k: int, n: int = 3, ceiling: int = 10**8, workers: int = 1, sharp: bool = False
) -> LemmaReport:
    """The 2-adic variant: W_{2^k} in W1_{2^k} union W2_{2^(ceil(k/2)-1)}."""
    if k < 2:
        raise ValueError("k = 1 is vacuous: W2 at modulus 2^0 contains every polynomial")
    return _verify(2, k, n, w2_exponent(2, k, sharp), ceiling, workers)


# --- decomposition ---------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    m: int
    m1: int
    m2: int
    ledger: tuple[tuple[int, int, str, int], ...]  # (p, k, class, exponent used)

    @property
    def product(self) -> int:
        return self.m1 * self.m2 * self.m2

    def to_dict(self) -> dict:
        return {
            "m": str(self.m),
            "m1": str(self.m1),
            "m2": str(self.m2),
            "ledger": [
                {"p": str(p), "k": k, "class": cls, "exponent": e}
                for p, k, cls, e in self.ledger
            ],
        }


def decompose(f, m, disc: int | None = None, refine: bool = True) -> Decomposition:
    """Split m = prod p^k into m1 (W1 primes) and m2 (W2 primes).

    A prime qualifying for both classes goes to m1.  With ``refine`` the W2
    exponent first tries floor(k/2) + 1 - v_p(2), which is what the case
    split actually yields when the two closest roots are unusually close;
    it falls back to ceil(k/2) - v_p(2).  The refinement only matters at
    p = 2 with k even, where the plain exponent loses a factor of 4.
    """
    f = as_poly(f)
    fm = _modulus(m)
    d = discriminant(f) if disc is None else disc
    if not member_Wm(f, fm.value, d):
        raise ValueError(f"{f} is not in W_{fm.value}")
    dp = delta_prime_fast(f)
    m1 = m2 = 1
    ledger = []
    for p, k in fm.factors:
        if dp % p**k == 0:
            m1 *= p**k
            ledger.append((p, k, "W1", k))
            continue
        exponents = [w2_exponent(p, k)]
        if refine and w2_exponent(p, k, sharp=True) > exponents[0]:
            exponents.insert(0, w2_exponent(p, k, sharp=True))
        for e in exponents:
            if w2_witness(f, p**e) is not None:
                m2 *= p**e
                ledger.append((p, k, "W2", e))
                break
        else:
            raise InvariantViolation(f"{f} lies in neither W1_{p}^{k} nor W2_{p}^{exponents[-1]}")
    return Decomposition(fm.value, m1, m2, tuple(ledger))


def prop32_thresholds(M: float, alpha: float, beta: float) -> tuple[int, int]:
    """q1 = floor((M/2)^alpha), q2 = floor((M/2)^beta) with alpha + 2 beta = 1."""
    if abs(alpha + 2 * beta - 1) > 1e-12 or alpha <= 0 or beta <= 0:
        raise ValueError("need positive alpha, beta with alpha + 2*beta = 1")
    return int((M / 2) ** alpha), int((M / 2) ** beta)

