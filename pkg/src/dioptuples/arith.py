"""Exact integer helpers: primality, Legendre symbol, rational formatting.

All measures in this package are `fractions.Fraction` values; helpers here
keep the "num/den" wire format in one place.
"""

from __future__ import annotations

from fractions import Fraction


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (desk scale)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise ValueError(f"expected an odd prime, got {p}")


def odd_prime_power(q: int) -> tuple[int, int]:
    """Factor q = p^f with p an odd prime, or raise ValueError."""
    if q < 3 or q % 2 == 0:
        raise ValueError(f"expected an odd prime power, got {q}")
    p = 3
    while p * p <= q:
        if q % p == 0:
            break
        p += 2
    else:
        return q, 1
    f = 0
    m = q
    while m % p == 0:
        m //= p
        f += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, f


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, 1} via Euler's criterion."""
    require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return -1 if t == p - 1 else 1


def format_rational(x) -> str:
    """Canonical string for exact values: "num/den", or "num" when den == 1."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"
