"""Genus-zero Riemann-Roch spaces, the simple-pole map, and a brute-force
check of the count of functions lying in a union of subspaces."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import InvalidInput, ResourceLimit
from .orbits import OrbitSet
from .poly import Polynomial, gcd
from .ratfunc import RationalFunction

DEFAULT_ENUM_CAP = 2**20


def enum_cap() -> int:
    raw = os.environ.get("BELYI_ENUM_CAP")
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InvalidInput(f"BELYI_ENUM_CAP must be an integer, got {raw!r}") from exc
    if cap <= 0:
        raise InvalidInput("BELYI_ENUM_CAP must be positive")
    return cap


@dataclass(frozen=True)
class DivisorP1:
    """sum mult_i * (orbit_i) + inf_mult * (inf); orbits are finite and disjoint."""

    orbits: tuple = ()
    inf_mult: int = 0

    def __post_init__(self):
        orbits = tuple((o, int(k)) for o, k in self.orbits if int(k) != 0)
        for o, _ in orbits:
            if o.at_infinity:
                raise InvalidInput("orbits in a divisor must be finite; use inf_mult")
            if o.is_empty():
                raise InvalidInput("empty orbit in a divisor")
        for i in range(len(orbits)):
            for j in range(i + 1, len(orbits)):
                if not orbits[i][0].disjoint(orbits[j][0]):
                    raise InvalidInput("divisor orbits must be pairwise disjoint")
        object.__setattr__(self, "orbits", orbits)

    @property
    def degree(self) -> int:
        return sum(k * o.cardinality for o, k in self.orbits) + self.inf_mult

    def plus(self, orbit: OrbitSet, k: int = 1) -> "DivisorP1":
        if orbit.at_infinity:
            rest = OrbitSet(orbit.finite_part)
            d = DivisorP1(self.orbits, self.inf_mult + k)
            return d.plus(rest, k) if not rest.is_empty() else d
        new = []
        done = False
        for o, m in self.orbits:
            if o == orbit:
                new.append((o, m + k))
                done = True
            else:
                new.append((o, m))
        if not done:
            new.append((orbit, k))
        return DivisorP1(tuple(new), self.inf_mult)

    def contains(self, f: RationalFunction) -> bool:
        """True iff div(f) + D >= 0 (the zero function always belongs)."""
        if not f.num:
            return True
        den, num = f.den, f.num
        support = Polynomial.constant(1, f.ring)
        for o, k in self.orbits:
            g = o.finite_part
            support = support * g
            if k >= 0:
                # pole order at every root of g at most k
                h = gcd(den, g ** (k + 1))
                if (g**k) % h:
                    return False
            else:
                if num % (g ** (-k)):
                    return False
        # no poles outside the support
        if den.degree > 0:
            rest = den
            while True:
                h = gcd(rest, support)
                if h.degree == 0:
                    break
                rest = rest.exquo(h)
            if rest.degree > 0:
                return False
        # order at infinity: deg den - deg num >= -inf_mult
        return den.degree - num.degree >= -self.inf_mult


def rr_basis_p1(D: DivisorP1, field) -> list[RationalFunction]:
    """A basis of L(D) on the projective line; empty when deg D < 0."""
    if D.degree < 0:
        return []
    x = Polynomial.x(field)
    if all(k >= 0 for _, k in D.orbits) and D.inf_mult >= 0:
        basis = [RationalFunction(x**j) for j in range(D.inf_mult + 1)]
        for o, k in D.orbits:
            g = o.finite_part
            for i in range(1, k + 1):
                for j in range(g.degree):
                    basis.append(RationalFunction(x**j, g**i))
        return basis
    den = Polynomial.constant(1, field)
    zer = Polynomial.constant(1, field)
    for o, k in D.orbits:
        if k > 0:
            den = den * o.finite_part**k
        else:
            zer = zer * o.finite_part ** (-k)
    return [RationalFunction(zer * x**i, den) for i in range(D.degree + 1)]


def simple_pole_map(S: OrbitSet, T: OrbitSet) -> RationalFunction:
    """W'/W (plus x when infinity is in T) for W the finite part of T.

    Every point of T is a simple pole (residue 1 at finite points), there are
    no other poles, and therefore infinity is not a branch value.
    """
    if not S.disjoint(T):
        raise InvalidInput("S and T are not disjoint")
    if T.is_empty():
        raise InvalidInput("T must be nonempty")
    W = T.finite_part
    f = RationalFunction(W.derivative(), W)
    if T.at_infinity:
        f = f + RationalFunction(Polynomial.x(W.ring))
    return f


def augment_T(S: OrbitSet, T: OrbitSet) -> OrbitSet:
    """T itself if nonempty, otherwise a single point outside S."""
    if not T.is_empty():
        return T
    field = S.field
    if getattr(field, "is_finite", False):
        for a in field.elements():
            if not S.contains(a):
                return OrbitSet.from_points([a], field)
        if not S.at_infinity:
            return OrbitSet.infinity(field)
        from .ffroots import is_irreducible

        x = Polynomial.x(field)
        d = 2
        while True:
            for cs in product(list(field.elements()), repeat=d):
                g = x**d + Polynomial._raw(field, list(cs))
                if is_irreducible(g):
                    return OrbitSet(g)
            d += 1
    k = 0
    while S.contains(k):
        k += 1
    return OrbitSet.from_points([k], field)


@dataclass(frozen=True)
class CardinalityCheck:
    formula_count: int
    brute_count: int
    total: int

    @property
    def equal(self) -> bool:
        return self.formula_count == self.brute_count


def union_cardinality_check(D: DivisorP1, orbits: list[OrbitSet], field) -> CardinalityCheck:
    """Compare the closed-form size of the union of the subspaces
    L(D + sum_{i != j} D_i) inside L(D + sum_i D_i) with a brute-force count."""
    if not getattr(field, "is_finite", False):
        raise InvalidInput("union_cardinality_check needs a finite field")
    if D.degree < -1:
        raise InvalidInput("divisor degree must be at least -1")
    q = field.size
    r = D.degree + 1
    ms = [o.cardinality for o in orbits]
    m = sum(ms)
    prod_term = Fraction(1)
    for mi in ms:
        prod_term *= 1 - Fraction(1, q**mi)
    formula = q ** (r + m) * (1 - prod_term)
    assert formula.denominator == 1
    full = D
    for o in orbits:
        full = full.plus(o)
    basis = rr_basis_p1(full, field)
    total = q ** len(basis)
    if total > enum_cap():
        raise ResourceLimit(f"enumeration of {total} elements exceeds the cap")
    subs = []
    for j in range(len(orbits)):
        sub = D
        for i, o in enumerate(orbits):
            if i != j:
                sub = sub.plus(o)
        subs.append(sub)
    # common denominator representation for fast enumeration
    den = Polynomial.constant(1, field)
    for b in basis:
        den = den * b.den.exquo(gcd(den, b.den))
    nums = [b.num * den.exquo(b.den) for b in basis]
    elems = list(field.elements())
    count = 0
    zero = Polynomial._raw(field, [])
    for coeffs in product(elems, repeat=len(basis)):
        N = zero
        for c, h in zip(coeffs, nums):
            if c:
                N = N + h * c
        f = RationalFunction(N, den)
        if any(sub.contains(f) for sub in subs):
            count += 1
    return CardinalityCheck(int(formula), count, total)


__all__ = [
    "CardinalityCheck",
    "DivisorP1",
    "augment_T",
    "enum_cap",
    "rr_basis_p1",
    "simple_pole_map",
    "union_cardinality_check",
]
