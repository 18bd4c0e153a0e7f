"""Small exact integer helpers: factorization, square-free tests, gcds.

Everything here is trial-division based; the inputs in this package are desk
scale (m up to a few thousand, norms up to 4m).
"""

from __future__ import annotations

from math import gcd, isqrt


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for e in factorize(n).values())


def squarefree_part(n: int) -> int:
    """n divided by its largest square divisor."""
    out = 1
    for p, e in factorize(n).items():
        if e % 2:
            out *= p
    return out


def prime_count(n: int) -> int:
    """Number of distinct prime divisors (0 for n = 1)."""
    return len(factorize(n))


def vec_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def divisors(n: int) -> list[int]:
    """All positive divisors of n, sorted."""
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]
