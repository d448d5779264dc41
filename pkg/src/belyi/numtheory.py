"""Integer and rational helpers: valuations, primes, coprime bases, root bounds."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import InfiniteValuation, InvalidInput
from .fields import QQ, RationalField, is_prime
from .poly import Polynomial


def padic_valuation(r, p: int) -> int:
    """Exponent of the prime p in the nonzero rational r.

    Raises :class:`InfiniteValuation` for r = 0.
    """
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    r = Fraction(r)
    if r == 0:
        raise InfiniteValuation("valuation of zero is infinite")
    return _vint(r.numerator, p) - _vint(r.denominator, p)


def _vint(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def primes() -> Iterator[int]:
    n = 2
    while True:
        if is_prime(n):
            yield n
        n += 1


def coprime_base(values: Iterable[int]) -> list[int]:
    """Pairwise coprime integers > 1 whose products generate every |value| > 1.

    Obtained by repeated gcd refinement; no factorization is needed.
    """
    base: list[int] = []
    for v in values:
        v = abs(v)
        if v <= 1:
            continue
        pending = [v]
        while pending:
            a = pending.pop()
            if a == 1:
                continue
            for i, b in enumerate(base):
                g = math.gcd(a, b)
                if g > 1:
                    base.pop(i)
                    for piece in (g, a // g, b // g):
                        if piece > 1:
                            pending.append(piece)
                    break
            else:
                base.append(a)
    return sorted(set(base))


def integer_valuation(n: int, b: int) -> int:
    """Largest k with b**k dividing n (b > 1, n != 0)."""
    if n == 0:
        raise InfiniteValuation("valuation of zero is infinite")
    return _vint(n, b)


def _check_rational(a: Polynomial):
    if not isinstance(a.ring, RationalField):
        raise InvalidInput("root bounds need a polynomial over the rationals")
    if a.degree < 1:
        raise InvalidInput("root bounds need a nonconstant polynomial")


def cauchy_upper(a: Polynomial) -> Fraction:
    """1 + max |a_i / a_n|, an upper bound on the modulus of every complex root."""
    _check_rational(a)
    lc = a.lc
    return 1 + max(abs(c / lc) for c in a.coeffs[:-1])


def cauchy_lower(a: Polynomial) -> Fraction:
    """A positive lower bound on the modulus of every complex root (needs a(0) != 0)."""
    _check_rational(a)
    if not a.coeffs[0]:
        raise InvalidInput("lower root bound undefined: 0 is a root")
    return 1 / cauchy_upper(a.reverse())


def root_radius_bounds(a: Polynomial) -> tuple[Fraction, Fraction | None]:
    """(upper, lower) with upper >= |root| >= lower for every complex root.

    ``lower`` is None when 0 is a root.
    """
    upper = cauchy_upper(a)
    lower = cauchy_lower(a) if a.coeffs[0] else None
    return upper, lower


def smallest_nonneg_integer_not_in(excluded) -> int:
    k = 0
    excluded = set(excluded)
    while k in excluded or Fraction(k) in excluded:
        k += 1
    return k


__all__ = [
    "QQ",
    "cauchy_lower",
    "cauchy_upper",
    "coprime_base",
    "integer_valuation",
    "padic_valuation",
    "primes",
    "root_radius_bounds",
    "smallest_nonneg_integer_not_in",
]
