"""Polynomials over finite fields: irreducibility, distinct-degree data, roots.

All randomness comes from a seeded :class:`random.Random`, so results are
reproducible run to run.
"""

from __future__ import annotations

import math
import random
from itertools import product

from .errors import InvalidInput, ResourceLimit
from .poly import Polynomial, gcd, powmod, squarefree_part


def _field_size(ring) -> int:
    if not getattr(ring, "is_finite", False):
        raise InvalidInput(f"{ring!r} is not a finite field")
    return ring.size


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _frobenius_power(f: Polynomial, k: int) -> Polynomial:
    """x**(q**k) mod f."""
    q = _field_size(f.ring)
    h = Polynomial.x(f.ring) % f
    for _ in range(k):
        h = powmod(h, q, f)
    return h


def is_irreducible(f: Polynomial) -> bool:
    """Rabin's irreducibility test over a finite field."""
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    f = f.monic()
    q = _field_size(f.ring)
    x = Polynomial.x(f.ring)
    if powmod(x, q**n, f) != x % f:
        return False
    for r in _prime_divisors(n):
        h = powmod(x, q ** (n // r), f) - x
        if gcd(f, h).degree != 0:
            return False
    return True


def distinct_degree_factorization(f: Polynomial) -> list[tuple[int, Polynomial]]:
    """[(d, g_d)] where g_d is the product of the degree-d irreducible factors.

    ``f`` must be squarefree.
    """
    f = f.monic()
    q = _field_size(f.ring)
    x = Polynomial.x(f.ring)
    out = []
    h = x % f if f.degree > 0 else x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = powmod(h, q, f)
        g = gcd(f, h - x)
        if g.degree > 0:
            out.append((d, g))
            f = f.exquo(g)
            h = h % f
    if f.degree > 0:
        out.append((f.degree, f))
    return out


def splitting_degree(f: Polynomial) -> int:
    """Degree of the smallest extension containing every root of f (f nonzero)."""
    sf = squarefree_part(f)
    if sf.degree <= 0:
        return 1
    return math.lcm(*[d for d, _ in distinct_degree_factorization(sf)])


def smallest_irreducible(ring, m: int) -> Polynomial:
    """The first monic irreducible of degree m in a fixed enumeration order.

    Lower coefficients are enumerated as base-q digits (c0 fastest) using the
    field's own element order.
    """
    elems = list(ring.elements())
    for digits in product(elems, repeat=m):
        cs = list(reversed(digits)) + [ring.one]
        f = Polynomial._raw(ring, cs)
        if m > 1 and not cs[0]:
            continue
        if is_irreducible(f):
            return f
    raise AssertionError("irreducible polynomials exist in every degree")


def splitting_field(f: Polynomial):
    """A finite field containing every root of f, extending f's field."""
    from .extension import ExtensionField

    m = splitting_degree(f)
    if m == 1:
        return f.ring
    return ExtensionField(f.ring, smallest_irreducible(f.ring, m), check=False)


def lift_poly(f: Polynomial, field) -> Polynomial:
    if f.ring is field or f.ring == field:
        return f
    return Polynomial._raw(field, [field(c) for c in f.coeffs])


def _split_linear(f: Polynomial, rng: random.Random) -> list:
    """Roots of a monic squarefree f that splits into distinct linear factors."""
    ring = f.ring
    if f.degree == 0:
        return []
    if f.degree == 1:
        return [-f.coeffs[0] / f.coeffs[1]]
    q = _field_size(ring)
    p = ring.characteristic
    elems_small = q <= 64
    if elems_small:
        return [a for a in ring.elements() if not f(a)]
    x = Polynomial.x(ring)
    for _ in range(200):
        a = _random_element(ring, rng)
        base = x + a
        if p == 2:
            k = int(round(math.log2(q)))
            t = base % f
            acc = t
            for _ in range(k - 1):
                t = (t * t) % f
                acc = acc + t
            h = acc
        else:
            h = powmod(base, (q - 1) // 2, f) - 1
        g = gcd(f, h)
        if 0 < g.degree < f.degree:
            return _split_linear(g, rng) + _split_linear(f.exquo(g), rng)
    raise ResourceLimit("equal-degree splitting did not converge")


def _random_element(ring, rng: random.Random):
    if getattr(ring, "deg", None) is not None and hasattr(ring, "base"):
        return ring([_random_element(ring.base, rng) for _ in range(ring.deg)])
    return ring(rng.randrange(ring.size))


def roots_in_field(f: Polynomial, seed: int = 0) -> list:
    """Distinct roots of f lying in its own (finite) coefficient field."""
    if not f:
        raise InvalidInput("every element is a root of the zero polynomial")
    if f.degree <= 0:
        return []
    ring = f.ring
    sf = squarefree_part(f)
    x = Polynomial.x(ring)
    q = _field_size(ring)
    lin = gcd(sf, powmod(x, q, sf) - x)
    roots = _split_linear(lin, random.Random(seed))
    return sorted(roots, key=_sort_key)


def _sort_key(a):
    if hasattr(a, "c"):
        return tuple(_sort_key(c) for c in reversed(a.c))
    return (int(a),)


def all_roots(f: Polynomial, seed: int = 0):
    """(field, roots): a splitting field of f and the distinct roots of f there."""
    field = splitting_field(f)
    return field, roots_in_field(lift_poly(f, field), seed)
