"""Dense univariate polynomials over an abstract coefficient ring.

Coefficients are stored lowest degree first and the list never carries a
trailing zero, so the zero polynomial has no coefficients and degree -1.

The coefficient ring may itself be a polynomial ring (:class:`PolyRing`),
which is how bivariate eliminants such as ``res_y(a(y), P(y) - x Q(y))`` are
computed.  Resultants and gcds over the rationals are computed fraction-free
over the integers with the subresultant remainder sequence.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import FieldMismatch
from .fields import QQ, ZZ, IntegerRing, RationalField


class PolyRing:
    """The ring ``base[x]``, used as a coefficient ring for bivariate work."""

    is_field = False
    is_finite = False

    def __init__(self, base):
        self.base = base
        self.zero = Polynomial._raw(base, [])
        self.one = Polynomial._raw(base, [base.one])

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self.base:
                raise FieldMismatch("polynomial over a different ring")
            return x
        return Polynomial._raw(self.base, [self.base(x)])

    @staticmethod
    def exquo(a: "Polynomial", b: "Polynomial") -> "Polynomial":
        return a.exquo(b)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.base == self.base

    def __hash__(self):
        return hash(("PolyRing", self.base))

    def __repr__(self):
        return f"{self.base!r}[x]"


def _same(r1, r2) -> bool:
    return r1 is r2 or r1 == r2


class Polynomial:
    __slots__ = ("ring", "coeffs")

    def __init__(self, coeffs: Iterable = (), ring=QQ):
        conv = [ring(c) for c in coeffs]
        while conv and not conv[-1]:
            conv.pop()
        self.ring = ring
        self.coeffs = tuple(conv)

    @classmethod
    def _raw(cls, ring, coeffs: list) -> "Polynomial":
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        p = object.__new__(cls)
        p.ring = ring
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def x(cls, ring=QQ) -> "Polynomial":
        return cls._raw(ring, [ring.zero, ring.one])

    @classmethod
    def constant(cls, c, ring=QQ) -> "Polynomial":
        return cls._raw(ring, [ring(c)])

    @classmethod
    def monomial(cls, n: int, c=1, ring=QQ) -> "Polynomial":
        return cls._raw(ring, [ring.zero] * n + [ring(c)])

    @classmethod
    def from_roots(cls, roots: Iterable, ring=QQ) -> "Polynomial":
        p = cls.constant(1, ring)
        x = cls.x(ring)
        for r in roots:
            p = p * (x - r)
        return p

    # -- basic accessors -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return _same(self.ring, other.ring) and self.coeffs == other.coeffs
        try:
            c = self.ring(other)
        except Exception:
            return NotImplemented
        if not c:
            return not self.coeffs
        return len(self.coeffs) == 1 and self.coeffs[0] == c

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(c)
            if any(ch in cs for ch in " +-/*"):
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
            elif c == self.ring.one:
                terms.append("x" if i == 1 else f"x^{i}")
            else:
                terms.append(f"{cs}*x" if i == 1 else f"{cs}*x^{i}")
        return " + ".join(terms)

    __str__ = __repr__

    # -- arithmetic ------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, Polynomial):
            if _same(other.ring, self.ring):
                return other
            if isinstance(self.ring, PolyRing) and _same(other.ring, self.ring.base):
                return Polynomial._raw(self.ring, [other])
            if isinstance(other.ring, PolyRing) and _same(other.ring.base, self.ring):
                return NotImplemented
            raise FieldMismatch(f"{self.ring!r} vs {other.ring!r}")
        return Polynomial._raw(self.ring, [self.ring(other)])

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] = res[i] + c
        return Polynomial._raw(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring(other)
            return Polynomial._raw(self.ring, [a * c for a in self.coeffs])
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial._raw(self.ring, [])
        if len(b) == 1:
            c = b[0]
            return Polynomial._raw(self.ring, [x * c for x in a])
        res = [self.ring.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                res[i + j] = res[i + j] + ai * bj
        return Polynomial._raw(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial._raw(self.ring, [self.ring.one])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        return self * c

    def shift(self, k: int) -> "Polynomial":
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        return Polynomial._raw(self.ring, [self.ring.zero] * k + list(self.coeffs))

    def _divmod(self, other: "Polynomial"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        ring = self.ring
        r = list(self.coeffs)
        db = other.degree
        if len(r) <= db:
            return Polynomial._raw(ring, []), self
        b = other.coeffs
        lcb = b[-1]
        inv = ring.one / lcb if ring.is_field else None
        q = [ring.zero] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if not c:
                continue
            c = c * inv if inv is not None else ring.exquo(c, lcb)
            q[k - db] = c
            off = k - db
            for j in range(db):
                if b[j]:
                    r[off + j] = r[off + j] - c * b[j]
            r[k] = ring.zero
        return Polynomial._raw(ring, q), Polynomial._raw(ring, r[:db])

    def __divmod__(self, other):
        other = self._lift(other)
        return self._divmod(other)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other) -> "Polynomial":
        """Exact division; raises ArithmeticError if ``other`` does not divide."""
        other = self._lift(other)
        q, r = self._divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "Polynomial") -> bool:
        return not (other % self)

    def prem(self, other: "Polynomial") -> "Polynomial":
        """Pseudo-remainder: lc(other)**(deg self - deg other + 1) * self mod other."""
        ring = self.ring
        db = other.degree
        if db < 0:
            raise ZeroDivisionError("pseudo-remainder by zero")
        r = list(self.coeffs)
        if len(r) <= db:
            return self
        b = other.coeffs
        lcb = b[-1]
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            off = k - db
            r = [x * lcb for x in r[:k]]
            if c:
                for j in range(db):
                    if b[j]:
                        r[off + j] = r[off + j] - c * b[j]
        return Polynomial._raw(ring, r[:db])

    # -- calculus and evaluation ----------------------------------------

    def derivative(self) -> "Polynomial":
        return Polynomial._raw(self.ring, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        if not self.coeffs:
            return self.ring.zero
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """self(inner(x))."""
        if not self.coeffs:
            return self
        acc = Polynomial._raw(self.ring, [self.coeffs[-1]])
        for c in reversed(self.coeffs[:-1]):
            acc = acc * inner + c
        return acc

    def taylor_shift(self, r) -> "Polynomial":
        """self(x + r)."""
        return self.compose(Polynomial._raw(self.ring, [self.ring(r), self.ring.one]))

    def reverse(self, n: int | None = None) -> "Polynomial":
        """x**n * self(1/x) with n defaulting to the degree."""
        if n is None:
            n = self.degree
        cs = list(self.coeffs) + [self.ring.zero] * (n + 1 - len(self.coeffs))
        return Polynomial._raw(self.ring, cs[: n + 1][::-1])

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == self.ring.one:
            return self
        inv = self.ring.one / lc
        return Polynomial._raw(self.ring, [c * inv for c in self.coeffs])

    def map_coeffs(self, f, ring) -> "Polynomial":
        return Polynomial._raw(ring, [f(c) for c in self.coeffs])

    def trailing_order(self) -> int:
        """Largest k with x**k dividing self (the order of vanishing at 0)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero polynomial vanishes to infinite order")


# -- gcd, resultants, squarefree decomposition --------------------------


def _check_same(a: Polynomial, b: Polynomial):
    if not _same(a.ring, b.ring):
        raise FieldMismatch(f"polynomials over {a.ring!r} and {b.ring!r}")


def content(p: Polynomial) -> int:
    """Integer content of a polynomial over ZZ."""
    return reduce(math.gcd, p.coeffs, 0)


def primitive(p: Polynomial) -> Polynomial:
    c = content(p)
    if c in (0, 1):
        return p
    if p.lc < 0:
        c = -c
    return Polynomial._raw(p.ring, [x // c for x in p.coeffs])


def _denominator(obj) -> int:
    if isinstance(obj, Polynomial):
        return reduce(math.lcm, (_denominator(c) for c in obj.coeffs), 1)
    if isinstance(obj, Fraction):
        return obj.denominator
    return 1


def _to_integer_ring(ring):
    if isinstance(ring, RationalField):
        return ZZ
    if isinstance(ring, PolyRing):
        return PolyRing(_to_integer_ring(ring.base))
    raise TypeError(f"no integer form for {ring!r}")


def _integerize(obj, scale: int, ring):
    """obj * scale with every rational coefficient mapped into ZZ."""
    if isinstance(obj, Polynomial):
        inner = _to_integer_ring(obj.ring)
        return Polynomial._raw(inner, [_integerize(c, scale, obj.ring) for c in obj.coeffs])
    v = obj * scale
    assert v.denominator == 1
    return v.numerator


def _rationalize(obj, ring):
    """Inverse of :func:`_integerize` (without the scale)."""
    if isinstance(ring, RationalField):
        return Fraction(obj)
    return Polynomial._raw(ring.base, [_rationalize(c, ring.base) for c in obj.coeffs]) if isinstance(
        ring, PolyRing
    ) else obj


def _over_rationals(ring) -> bool:
    while isinstance(ring, PolyRing):
        ring = ring.base
    return isinstance(ring, RationalField)


def to_integer_poly(p: Polynomial) -> tuple[Polynomial, int]:
    """Return (P, d) with P over ZZ (or ZZ[x]...) and p = P / d."""
    d = _denominator(p)
    return _integerize(p, d, p.ring), d


def _subresultant_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    # Cohen, Algorithm 3.3.1, over ZZ; returns a primitive gcd.
    if a.degree < b.degree:
        a, b = b, a
    if not b:
        return primitive(a)
    a, b = primitive(a), primitive(b)
    g = h = 1
    while True:
        delta = a.degree - b.degree
        r = a.prem(b)
        if not r:
            break
        if r.degree == 0:
            return Polynomial._raw(ZZ, [1])
        a = b
        b = Polynomial._raw(ZZ, [c // (g * h**delta) for c in r.coeffs])
        g = a.lc
        if delta == 0:
            h = h
        else:
            h = g**delta // h ** (delta - 1)
    return primitive(b)


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over a field; gcd(a, 0) = monic(a) and gcd(0, 0) = 0."""
    _check_same(a, b)
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    if isinstance(a.ring, RationalField):
        ia, _ = to_integer_poly(a)
        ib, _ = to_integer_poly(b)
        g = _subresultant_gcd(ia, ib)
        return Polynomial._raw(QQ, [Fraction(c) for c in g.coeffs]).monic()
    if not a.ring.is_field:
        raise TypeError(f"gcd needs a field, got {a.ring!r}")
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a: Polynomial, b: Polynomial):
    """(g, s, t) with s*a + t*b = g monic; coefficients over a field."""
    _check_same(a, b)
    ring = a.ring
    zero = Polynomial._raw(ring, [])
    one = Polynomial._raw(ring, [ring.one])
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while r1:
        q, r = r0._divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = ring.one / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if not a or not b:
        return Polynomial._raw(a.ring, [])
    return (a * b).exquo(gcd(a, b)).monic()


def _domain_resultant(a: Polynomial, b: Polynomial):
    # Subresultant algorithm for res(a, b) over an integral domain
    # (Cohen, Algorithm 3.3.7, without the optional content extraction).
    ring = a.ring
    if not a or not b:
        return ring.zero
    sign = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 and b.degree % 2:
            sign = -1
    if b.degree == 0:
        return b.lc ** a.degree * sign
    g = h = ring.one
    while True:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            sign = -sign
        r = a.prem(b)
        a = b
        if not r:
            return ring.zero
        div = g * h**delta
        b = Polynomial._raw(ring, [ring.exquo(c, div) for c in r.coeffs])
        g = a.lc
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = ring.exquo(g**delta, h ** (delta - 1))
        if b.degree == 0:
            n = a.degree
            if n == 1:
                h = b.lc
            else:
                h = ring.exquo(b.lc**n, h ** (n - 1))
            return h * sign


def resultant(a: Polynomial, b: Polynomial):
    """Resultant of a and b, an element of the coefficient ring.

    Convention: the determinant of the Sylvester matrix whose first deg(b)
    rows hold the coefficients of ``a`` (highest degree first) and whose last
    deg(a) rows hold those of ``b``.  Equivalently
    res(a, b) = lc(a)**deg(b) * prod(b(r) for the roots r of a), so
    res(y - 2, y - 5) = -3.
    """
    _check_same(a, b)
    if not a or not b:
        return a.ring.zero
    if _over_rationals(a.ring):
        ia, da = to_integer_poly(a)
        ib, db = to_integer_poly(b)
        r = _domain_resultant(ia, ib)
        scale = Fraction(1, da**b.degree * db**a.degree)
        return _rationalize(r, a.ring) * scale
    return _domain_resultant(a, b)


def discriminant(a: Polynomial):
    """disc(a) = (-1)**(n(n-1)/2) res(a, a') / lc(a), n = deg a (n >= 1)."""
    n = a.degree
    if n < 1:
        raise ValueError("discriminant of a constant")
    r = resultant(a, a.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return a.ring.exquo(r * sign, a.lc) if not isinstance(r, Polynomial) else (r * sign).exquo(
        Polynomial._raw(r.ring, [a.lc]) if not isinstance(a.lc, Polynomial) else a.lc
    )


def pth_root(p: Polynomial) -> Polynomial:
    """For p = h(x**q) in characteristic q, return h with coefficients Frobenius-inverted."""
    ring = p.ring
    char = ring.characteristic
    cs = p.coeffs
    if any(c for i, c in enumerate(cs) if i % char):
        raise ValueError("polynomial is not a p-th power")
    return Polynomial._raw(ring, [ring.frobenius_inverse(cs[i]) for i in range(0, len(cs), char)])


def squarefree_part(a: Polynomial) -> Polynomial:
    """Monic product of the distinct irreducible factors of a (a nonzero).

    Valid over the rationals and over finite (perfect) fields.
    """
    if not a:
        raise ValueError("squarefree part of the zero polynomial")
    a = a.monic()
    if a.degree <= 0:
        return a
    d = a.derivative()
    if not d:
        return squarefree_part(pth_root(a))
    g = gcd(a, d)
    w = a.exquo(g).monic()
    if a.ring.characteristic == 0 or g.degree == 0:
        return w
    # strip from g every factor already in w; the rest is a p-th power
    rest = g
    while True:
        y = gcd(rest, w)
        if y.degree == 0:
            break
        rest = rest.exquo(y)
    if rest.degree <= 0:
        return w
    return (w * squarefree_part(pth_root(rest.monic()))).monic()


def is_squarefree(a: Polynomial) -> bool:
    return squarefree_part(a).degree == a.degree


def powmod(base: Polynomial, e: int, mod: Polynomial) -> Polynomial:
    result = Polynomial._raw(base.ring, [base.ring.one]) % mod
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        e >>= 1
        if e:
            base = (base * base) % mod
    return result


def multiplicity(p: Polynomial, factor: Polynomial) -> int:
    """Largest k with factor**k dividing p (p nonzero, factor nonconstant)."""
    if not p:
        raise ValueError("multiplicity in the zero polynomial")
    k = 0
    while True:
        q, r = p._divmod(factor)
        if r:
            return k
        p = q
        k += 1


def poly(coeffs: Sequence, ring=QQ) -> Polynomial:
    """Convenience constructor, coefficients lowest degree first."""
    return Polynomial(coeffs, ring)


__all__ = [
    "IntegerRing",
    "PolyRing",
    "Polynomial",
    "content",
    "discriminant",
    "gcd",
    "is_squarefree",
    "lcm",
    "multiplicity",
    "poly",
    "powmod",
    "primitive",
    "pth_root",
    "resultant",
    "squarefree_part",
    "to_integer_poly",
    "xgcd",
]
