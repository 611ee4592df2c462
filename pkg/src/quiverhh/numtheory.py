"""Multiplicative arithmetic functions: Moebius mu, theta(m) = prod (1 - p), divisor sums."""

from fractions import Fraction
from functools import lru_cache

from quiverhh.errors import ArithmeticInvariantError


def _check_positive(n):
    if not isinstance(n, int) or n < 1:
        raise ValueError("expected a positive integer, got %r" % (n,))


@lru_cache(maxsize=None)
def factorize(n):
    """Prime factorization by trial division, as a tuple of (prime, exponent)."""
    _check_positive(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n):
    _check_positive(n)
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def mobius(n):
    fs = factorize(n)
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def _theta_product(m):
    out = 1
    for p, _ in factorize(m):
        out *= 1 - p
    return out


def _theta_divisor_sum(m):
    return sum(d * mobius(d) for d in divisors(m))


@lru_cache(maxsize=None)
def theta(m):
    """sum_{d|m} d mu(d), computed both ways and cross-checked."""
    value = _theta_product(m)
    if value != _theta_divisor_sum(m):
        raise ArithmeticInvariantError("theta formulas disagree at m=%d" % m)
    return value


def euler_phi(n):
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


def f_weighted(m, a):
    """sum_{d|m} a_d * d * theta(m/d).

    ``a`` is a mapping (or sequence indexed from 0) giving ``a[d]``; a
    missing divisor raises ``KeyError``.
    """
    _check_positive(m)
    total = Fraction(0)
    for d in divisors(m):
        try:
            ad = a[d]
        except (IndexError, KeyError):
            raise KeyError("sequence value a_%d is missing" % d) from None
        if ad:
            total += Fraction(ad) * d * theta(m // d)
    return total
