"""Galois-stable finite subsets of the projective line.

An :class:`OrbitSet` is a squarefree monic polynomial over the base field
(whose roots in the algebraic closure are the finite members) together with a
flag recording whether the point at infinity belongs to the set.  All set
algebra is done with gcds and resultants; algebraic points are never
materialized.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldMismatch, InvalidInput, ResourceLimit
from .poly import Polynomial, PolyRing, gcd, is_squarefree, resultant, squarefree_part
from .ratfunc import INF, RationalFunction, evaluate_projective


@dataclass(frozen=True)
class OrbitSet:
    finite_part: Polynomial
    at_infinity: bool = False

    def __post_init__(self):
        fp = self.finite_part
        if not fp:
            raise InvalidInput("finite part must be a nonzero polynomial")
        if not fp.is_monic():
            raise InvalidInput("finite part must be monic")
        if fp.degree > 1 and not is_squarefree(fp):
            raise InvalidInput("finite part must be squarefree")

    # -- constructors ----------------------------------------------------

    @classmethod
    def empty(cls, field) -> "OrbitSet":
        return cls(Polynomial.constant(1, field), False)

    @classmethod
    def infinity(cls, field) -> "OrbitSet":
        return cls(Polynomial.constant(1, field), True)

    @classmethod
    def from_polynomial(cls, p: Polynomial, at_infinity: bool = False, *, warn: bool = False) -> "OrbitSet":
        """Orbit set of the roots of p; the squarefree part is taken if needed."""
        sf = squarefree_part(p)
        if warn and sf.degree != p.degree:
            warnings.warn("polynomial was not squarefree; using its squarefree part", stacklevel=2)
        return cls(sf, at_infinity)

    @classmethod
    def from_points(cls, points, field) -> "OrbitSet":
        """Orbit set of base-field points (INF allowed)."""
        x = Polynomial.x(field)
        p = Polynomial.constant(1, field)
        flag = False
        seen = set()
        for pt in points:
            if pt is INF:
                flag = True
                continue
            c = field(pt)
            if c in seen:
                continue
            seen.add(c)
            p = p * (x - c)
        return cls(p, flag)

    # -- basic properties -----------------------------------------------

    @property
    def field(self):
        return self.finite_part.ring

    @property
    def cardinality(self) -> int:
        return self.finite_part.degree + (1 if self.at_infinity else 0)

    def __len__(self) -> int:
        return self.cardinality

    def is_empty(self) -> bool:
        return self.cardinality == 0

    def contains(self, pt) -> bool:
        if pt is INF:
            return self.at_infinity
        return not self.finite_part(self.field(pt))

    __contains__ = contains

    def finite_points(self) -> list:
        """Base-field points of the set (over finite fields, or rational roots over QQ)."""
        from .fields import RationalField

        if isinstance(self.field, RationalField):
            return rational_roots(self.finite_part)
        from .ffroots import roots_in_field

        return roots_in_field(self.finite_part)

    def _check(self, other: "OrbitSet"):
        if self.field is not other.field and self.field != other.field:
            raise FieldMismatch("orbit sets over different fields")

    # -- set algebra -----------------------------------------------------

    def union(self, other: "OrbitSet") -> "OrbitSet":
        self._check(other)
        g = gcd(self.finite_part, other.finite_part)
        fp = (self.finite_part * other.finite_part).exquo(g).monic()
        return OrbitSet(fp, self.at_infinity or other.at_infinity)

    __or__ = union

    def difference(self, other: "OrbitSet") -> "OrbitSet":
        self._check(other)
        g = gcd(self.finite_part, other.finite_part)
        return OrbitSet(self.finite_part.exquo(g).monic(), self.at_infinity and not other.at_infinity)

    __sub__ = difference

    def intersection(self, other: "OrbitSet") -> "OrbitSet":
        self._check(other)
        return OrbitSet(gcd(self.finite_part, other.finite_part), self.at_infinity and other.at_infinity)

    __and__ = intersection

    def disjoint(self, other: "OrbitSet") -> bool:
        self._check(other)
        if self.at_infinity and other.at_infinity:
            return False
        return gcd(self.finite_part, other.finite_part).degree == 0

    def issubset(self, other: "OrbitSet") -> bool:
        self._check(other)
        if self.at_infinity and not other.at_infinity:
            return False
        return not (other.finite_part % self.finite_part)

    def __eq__(self, other):
        if not isinstance(other, OrbitSet):
            return NotImplemented
        return self.finite_part == other.finite_part and self.at_infinity == other.at_infinity

    def __hash__(self):
        return hash((self.finite_part, self.at_infinity))

    def __repr__(self):
        inf = ", inf" if self.at_infinity else ""
        return f"OrbitSet({self.finite_part}{inf})"

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        f = self.field
        return {"poly": [f.to_json(c) for c in self.finite_part.coeffs], "inf": self.at_infinity}

    @classmethod
    def from_json(cls, obj, field) -> "OrbitSet":
        try:
            coeffs = [field.from_json(c) for c in obj["poly"]]
            flag = obj["inf"]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed orbit set: {obj!r}") from exc
        if not isinstance(flag, bool):
            raise InvalidInput("orbit-set flag must be a boolean")
        return cls(Polynomial._raw(field, coeffs), flag)


def rational_roots(p: Polynomial) -> list[Fraction]:
    """Rational roots of a nonzero polynomial over QQ, by the rational root test."""
    from .poly import to_integer_poly

    if p.degree <= 0:
        return []
    ip, _ = to_integer_poly(p)
    cs = list(ip.coeffs)
    roots = []
    k = 0
    while not cs[k]:
        k += 1
    if k:
        roots.append(Fraction(0))
    cs = cs[k:]
    if len(cs) == 1:
        return roots
    a0, an = abs(cs[0]), abs(cs[-1])
    if a0.bit_length() > 40 or an.bit_length() > 40:
        raise ResourceLimit("rational root test limited to coefficients below 2**40")
    for num in _divisors(a0):
        for den in _divisors(an):
            for s in (1, -1):
                r = Fraction(s * num, den)
                if r.denominator == den and r not in roots and not p(r):
                    roots.append(r)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# -- pushforward and preimage ------------------------------------------------


def pushforward(F: RationalFunction, a: OrbitSet) -> OrbitSet:
    """{F(b) : b in a} as an orbit set."""
    if F.is_constant():
        raise InvalidInput("pushforward under a constant map")
    if a.field is not F.ring and a.field != F.ring:
        raise FieldMismatch("map and set over different fields")
    field = a.field
    fp = a.finite_part
    flag = False
    out = Polynomial.constant(1, field)
    if fp.degree > 0:
        g = gcd(fp, F.den)
        if g.degree > 0:
            flag = True
            fp = fp.exquo(g).monic()
        if fp.degree > 0:
            out = image_charpoly(F, fp)
    if a.at_infinity:
        v = F.value_at_infinity()
        if v is INF:
            flag = True
        else:
            out = out * (Polynomial.x(field) - v)
    return OrbitSet.from_polynomial(out, flag)


def image_charpoly(F: RationalFunction, fp: Polynomial) -> Polynomial:
    """prod over the roots b of fp of (x - F(b)); fp must be coprime to the poles.

    F is first reduced to a polynomial V of degree < deg fp modulo fp, and the
    result is the characteristic polynomial res_y(fp(y), x - V(y)) / lc.
    """
    from .poly import xgcd

    field = fp.ring
    fp = fp.monic()
    if fp.degree == 1:
        return Polynomial.x(field) - F(-fp.coeffs[0])
    g, s, _ = xgcd(F.den % fp, fp)
    if g.degree != 0:
        raise InvalidInput("orbit meets the poles of the map")
    V = ((F.num % fp) * s) % fp
    R = PolyRing(field)
    X = Polynomial.x(field)
    if V.degree <= 0:
        return (X - V[0]) ** fp.degree
    b = Polynomial._raw(R, [X - V[0]] + [R(-c) for c in V.coeffs[1:]])
    a = Polynomial._raw(R, [R(c) for c in fp.coeffs])
    r = resultant(a, b)
    return r.monic()


def image_polynomial(F: RationalFunction, fp: Polynomial) -> Polynomial:
    """res_y(fp(y), P(y) - x Q(y)) as a polynomial in x (nonzero).

    Its roots are the values F(b) at the roots b of fp that are not poles.
    """
    field = fp.ring
    if F.den.degree == 0 and F.num.degree == 1:
        # affine map: substitute the inverse directly
        a1, a0 = F.num.coeffs[1], F.num.coeffs[0]
        inv = RationalFunction(Polynomial._raw(field, [-a0 / a1, field.one / a1]))
        return fp.compose(inv.num)
    R = PolyRing(field)
    X = Polynomial.x(field)
    P, Q = F.num, F.den
    n = max(P.degree, Q.degree)
    b = Polynomial._raw(R, [R(P[i]) - X * Q[i] for i in range(n + 1)])
    a = Polynomial._raw(R, [R(c) for c in fp.coeffs])
    r = resultant(a, b)
    if not isinstance(r, Polynomial):
        r = Polynomial.constant(r, field)
    return r


def homogenized_preimage(F: RationalFunction, b: Polynomial) -> Polynomial:
    """Q**k * b(P/Q) with k = deg b; vanishes exactly on finite x with F(x) a root of b."""
    P, Q = F.num, F.den
    k = b.degree
    field = b.ring
    acc = Polynomial._raw(field, [])
    ppow = Polynomial.constant(1, field)
    qpows = [Polynomial.constant(1, field)]
    for _ in range(k):
        qpows.append(qpows[-1] * Q)
    for i, c in enumerate(b.coeffs):
        if c:
            acc = acc + ppow * qpows[k - i] * c
        ppow = ppow * P
    return acc


def preimage(F: RationalFunction, b: OrbitSet) -> OrbitSet:
    """F^{-1}(b) as an orbit set."""
    if F.is_constant():
        raise InvalidInput("preimage under a constant map")
    if b.field is not F.ring and b.field != F.ring:
        raise FieldMismatch("map and set over different fields")
    field = b.field
    out = Polynomial.constant(1, field)
    if b.finite_part.degree > 0:
        out = homogenized_preimage(F, b.finite_part)
    if b.at_infinity and F.den.degree > 0:
        out = out * F.den
    flag = b.contains(F.value_at_infinity())
    return OrbitSet.from_polynomial(out, flag)


# -- parsing the set grammar --------------------------------------------------


def _split_items(text: str) -> list[str]:
    items, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise InvalidInput(f"unbalanced brackets in {text!r}")
        if ch == "," and depth == 0:
            items.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise InvalidInput(f"unbalanced brackets in {text!r}")
    items.append("".join(cur))
    return [s.strip() for s in items]


_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_orbit_set(text: str, field) -> OrbitSet:
    """Parse the set grammar: comma list of "a/b", "inf" or "poly:[c0,...,ck]".

    The empty string denotes the empty set.
    """
    result = OrbitSet.empty(field)
    if text is None or not text.strip():
        return result
    for item in _split_items(text):
        if not item:
            raise InvalidInput(f"empty item in set expression {text!r}")
        low = item.lower()
        if low in ("inf", "infinity", "oo"):
            result = result.union(OrbitSet.infinity(field))
        elif low.startswith("poly:"):
            try:
                coeffs = json.loads(item[5:].strip())
            except json.JSONDecodeError as exc:
                raise InvalidInput(f"bad coefficient list in {item!r}") from exc
            if not isinstance(coeffs, list):
                raise InvalidInput(f"bad coefficient list in {item!r}")
            p = Polynomial._raw(field, [field.from_json(c) for c in coeffs])
            if p.degree < 1:
                raise InvalidInput(f"{item!r} is not a nonconstant polynomial")
            result = result.union(OrbitSet.from_polynomial(p, warn=True))
        elif _RATIONAL.match(item):
            result = result.union(OrbitSet.from_points([field.from_json(item)], field))
        else:
            raise InvalidInput(f"cannot parse set item {item!r}")
    return result


def format_orbit_set(s: OrbitSet) -> str:
    parts = []
    f = s.field
    if s.finite_part.degree > 0:
        parts.append("poly:" + json.dumps([f.to_json(c) for c in s.finite_part.coeffs]))
    if s.at_infinity:
        parts.append("inf")
    return ",".join(parts)


__all__ = [
    "INF",
    "OrbitSet",
    "evaluate_projective",
    "format_orbit_set",
    "homogenized_preimage",
    "image_polynomial",
    "parse_orbit_set",
    "preimage",
    "pushforward",
    "rational_roots",
]
