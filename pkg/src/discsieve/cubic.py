"""Compiled sieve for cubic height boxes.

For fixed (a1, a2) the discriminant of x^3 + a1 x^2 + a2 x + t is the
quadratic q(t) = -27 t^2 + b t + c, so the t with p^2 | q(t) form at most
two residue classes mod p^2 (or one class mod p), found by a square root
mod p and one Hensel step.  A cubic fails to be p-maximal exactly when
f lies in (p, x - r)^2 for some r, i.e. p | f'(r) and p^2 | f(r); the roots
r of f' mod p then pin t to one class mod p^2 each.  Marking those classes
over the a3 range replaces per-polynomial factorization.

All arithmetic stays in int64: residues are kept below p before any
product is formed, so callers must keep max|disc| under about 4e18 (see
``safe_bounds``).
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .factor import primes_up_to


@njit(cache=True)
def _powmod(b, e, m):
    r = 1
    b %= m
    while e > 0:
        if e & 1:
            r = r * b % m
        b = b * b % m
        e >>= 1
    return r


@njit(cache=True)
def _sqrt_mod(a, p):
    """Square root of a quadratic residue a mod an odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return _powmod(a, (p + 1) // 4, p)
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while _powmod(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m = s
    c = _powmod(z, q, p)
    t = _powmod(a, q, p)
    r = _powmod(a, (q + 1) // 2, p)
    while t != 1:
        i = 0
        tt = t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = b * b % p
        m = i
        c = b * b % p
        t = t * c % p
        r = r * b % p
    return r


@njit(cache=True)
def _mark(arr, lo, residue, step):
    L = arr.shape[0]
    start = (residue - lo) % step
    for idx in range(start, L, step):
        arr[idx] = True


@njit(cache=True)
def _fiber(a1, a2, lo, hi, primes, bad, nonmax):
    b = 18 * a1 * a2 - 4 * a1 * a1 * a1
    c = a1 * a1 * a2 * a2 - 4 * a2 * a2 * a2
    L = hi - lo + 1
    for i in range(L):
        bad[i] = False
        nonmax[i] = False
    # largest |q(t)| on [lo, hi]: endpoints or the vertex
    mx = 0
    for t in (lo, hi, b // 54, b // 54 + 1):
        if lo <= t <= hi:
            v = abs(-27 * t * t + b * t + c)
            if v > mx:
                mx = v
    D = b * b + 108 * c
    for p in primes:
        p2 = p * p
        if p2 > mx:
            break
        if p <= 3:
            for t0 in range(p2):
                if (-27 * t0 * t0 + b * t0 + c) % p2 == 0:
                    _mark(bad, lo, t0, p2)
            for r in range(p):
                if (3 * r * r + 2 * a1 * r + a2) % p == 0:
                    _mark(nonmax, lo, -(r * r * r + a1 * r * r + a2 * r), p2)
            continue
        inv2A = _powmod((-54) % p, p - 2, p)
        Dp = D % p
        if Dp == 0:
            if D % p2 == 0:
                _mark(bad, lo, (-b % p) * inv2A % p, p)
        elif _powmod(Dp, (p - 1) // 2, p) == 1:
            s = _sqrt_mod(Dp, p)
            for u0 in (s, p - s):
                t0 = ((u0 - b) % p) * inv2A % p
                qv = -27 * t0 * t0 + b * t0 + c
                # q'(t0) = -54 t0 + b = u0 (mod p), a unit
                s1 = ((-(qv // p)) % p) * _powmod(u0, p - 2, p) % p
                _mark(bad, lo, t0 + p * s1, p2)
        # roots of f'(r) = 3 r^2 + 2 a1 r + a2 mod p
        E = (a1 * a1 - 3 * a2) % p
        inv3 = _powmod(3, p - 2, p)
        if E == 0:
            roots = ((-a1 % p) * inv3 % p, -1)
        elif _powmod(E, (p - 1) // 2, p) == 1:
            s = _sqrt_mod(E, p)
            roots = (((s - a1) % p) * inv3 % p, ((p - s - a1) % p) * inv3 % p)
        else:
            roots = (-1, -1)
        for r in roots:
            if r >= 0:
                _mark(nonmax, lo, -(r * r * r + a1 * r * r + a2 * r), p2)
    zero = 0
    sqf = 0
    maxi = 0
    for i in range(L):
        t = lo + i
        if -27 * t * t + b * t + c == 0:
            zero += 1
            continue
        if not bad[i]:
            sqf += 1
        if not nonmax[i]:
            maxi += 1
    return zero, sqf, maxi


@njit(cache=True)
def _run(a1_values, B2, B3, primes):
    L = 2 * B3 + 1
    bad = np.zeros(L, dtype=np.bool_)
    nonmax = np.zeros(L, dtype=np.bool_)
    zero = 0
    sqf = 0
    maxi = 0
    for a1 in a1_values:
        for a2 in range(-B2, B2 + 1):
            z, s, m = _fiber(a1, a2, -B3, B3, primes, bad, nonmax)
            zero += z
            sqf += s
            maxi += m
    return zero, sqf, maxi


def max_abs_disc(B1: int, B2: int, B3: int) -> int:
    return B1 * B1 * B2 * B2 + 4 * B2**3 + 4 * B1**3 * B3 + 27 * B3 * B3 + 18 * B1 * B2 * B3


def safe_bounds(B1: int, B2: int, B3: int) -> bool:
    """Whether every intermediate of the compiled kernel fits in int64."""
    mx = max_abs_disc(B1, B2, B3)
    b = 18 * B1 * B2 + 4 * B1**3
    c = B1 * B1 * B2 * B2 + 4 * B2**3
    return max(mx, b * b + 108 * c, 27 * B3 * B3 * 4) < 2**62


def cubic_counts(a1_values, B2: int, B3: int, B1: int | None = None) -> tuple[int, int, int]:
    """(zero-discriminant, squarefree, maximal) counts over the given a1 values."""
    a1_values = np.asarray(list(a1_values), dtype=np.int64)
    if B1 is None:
        B1 = int(np.abs(a1_values).max()) if a1_values.size else 0
    if not safe_bounds(B1, B2, B3):
        raise OverflowError("box too large for the int64 cubic kernel")
    mx = max_abs_disc(B1, B2, B3)
    from math import isqrt

    primes = np.asarray(primes_up_to(isqrt(mx) + 1), dtype=np.int64)
    z, s, m = _run(a1_values, B2, B3, primes)
    return int(z), int(s), int(m)
