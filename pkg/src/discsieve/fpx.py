"""Schoolbook arithmetic in F_p[x].

Polynomials are lists of residues, lowest degree first, with no trailing
zeros; the zero polynomial is the empty list.
"""

from __future__ import annotations


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(coeffs, p: int) -> list[int]:
    return trim([c % p for c in coeffs])


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a, b, p):
    return add(a, [(-c) % p for c in b], p)


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return reduce(out, p)


def monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j, y in enumerate(b):
                a[i - db + j] = (a[i - db + j] - c * y) % p
    return trim(q), trim(a[:db] if db else [])


def gcd(a, b, p):
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, divmod_(a, b, p)[1]
    return monic(a, p)


def derivative(a, p):
    return reduce([i * c for i, c in enumerate(a)][1:], p)


def radical(a, p):
    """Product of the distinct monic irreducible factors of ``a``."""
    a = monic(a, p)
    if len(a) <= 1:
        return [1] if a else []
    da = derivative(a, p)
    if not da:
        # a(x) = b(x^p) = b(x)^p over F_p
        return radical(a[::p], p)
    g = gcd(a, da, p)
    if len(g) == 1:
        return a
    w = divmod_(a, g, p)[0]
    z = g
    while True:
        y = gcd(z, w, p)
        if len(y) == 1:
            break
        z = divmod_(z, y, p)[0]
    if len(z) == 1:
        return w
    return mul(w, radical(z, p), p)
