"""Dense univariate polynomials over F_p and root finding.

Coefficient lists are little-endian (``a[i]`` multiplies ``t^i``) and kept
trimmed.  Roots are found by splitting ``gcd(f, t^p - t)`` with the
Cantor–Zassenhaus random gcd trick.
"""

from __future__ import annotations

import random


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: list[int]) -> int:
    return len(a) - 1


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def divmod_poly(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], trim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return trim(q), trim(a[:db])


def monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gcd(a, b, p):
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, divmod_poly(a, b, p)[1]
    return monic(a, p)


def powmod(base, e, mod, p):
    result = [1]
    base = divmod_poly(base, mod, p)[1]
    while e:
        if e & 1:
            result = divmod_poly(mul(result, base, p), mod, p)[1]
        base = divmod_poly(mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def roots(f: list[int], p: int, rng: random.Random | None = None) -> list[int]:
    """Distinct roots of ``f`` in F_p, sorted."""
    f = trim([c % p for c in f])
    if len(f) <= 1:
        if not f:
            raise ValueError("the zero polynomial has every element as a root")
        return []
    if rng is None:
        rng = random.Random(p)
    f = monic(f, p)
    out = []
    if f[0] == 0:
        out.append(0)
        while f and f[0] == 0:
            f = f[1:]
    if len(f) <= 1:
        return sorted(out)
    xp = powmod([0, 1], p, f, p)
    g = gcd(f, sub(xp, [0, 1], p), p)
    out.extend(_split(g, p, rng))
    return sorted(set(out))


def _split(g, p, rng):
    d = len(g) - 1
    if d <= 0:
        return []
    if d == 1:
        return [(-g[0]) * pow(g[1], -1, p) % p]
    if p == 2:
        return [x for x in range(2) if evaluate(g, x, p) == 0]
    while True:
        a = rng.randrange(p)
        h = powmod([a, 1], (p - 1) // 2, g, p)
        k = gcd(g, sub(h, [1], p), p)
        if 0 < len(k) - 1 < d:
            q, _ = divmod_poly(g, k, p)
            return _split(k, p, rng) + _split(monic(q, p), p, rng)


def count_roots_with_multiplicity(f, p) -> int:
    """Number of roots in F_p counted with multiplicity."""
    f = trim([c % p for c in f])
    total = 0
    for r in roots(f, p):
        while True:
            q, rem = divmod_poly(f, [(-r) % p, 1], p)
            if rem:
                break
            total += 1
            f = q
    return total


def interpolate(xs, ys, p):
    """Lagrange interpolation through ``(xs[i], ys[i])``."""
    n = len(xs)
    out = [0] * n
    for i in range(n):
        num = [1]
        den = 1
        for j in range(n):
            if j != i:
                num = mul(num, [(-xs[j]) % p, 1], p)
                den = den * (xs[i] - xs[j]) % p
        c = ys[i] * pow(den, -1, p) % p
        for k, v in enumerate(num):
            out[k] = (out[k] + c * v) % p
    return trim(out)
