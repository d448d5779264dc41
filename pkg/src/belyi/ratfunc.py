"""Rational functions P/Q in lowest terms with a monic denominator."""

from __future__ import annotations

from .errors import FieldMismatch, InvalidInput, ResourceLimit
from .poly import Polynomial, gcd


class _Infinity:
    """The point at infinity of the projective line (a singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(pt) -> bool:
    return pt is INF


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial._raw(num.ring, [num.ring.one])
        if num.ring is not den.ring and num.ring != den.ring:
            raise FieldMismatch("numerator and denominator over different fields")
        if not den:
            raise ZeroDivisionError("zero denominator")
        if den.degree > 0 and num:
            g = gcd(num, den)
            if g.degree > 0:
                num = num.exquo(g)
                den = den.exquo(g)
        if not num:
            den = Polynomial._raw(den.ring, [den.ring.one])
        lc = den.lc
        if lc != den.ring.one:
            inv = den.ring.one / lc
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def _trusted(cls, num: Polynomial, den: Polynomial) -> "RationalFunction":
        f = object.__new__(cls)
        f.num = num
        f.den = den
        return f

    @classmethod
    def identity(cls, ring) -> "RationalFunction":
        return cls(Polynomial.x(ring))

    @classmethod
    def constant(cls, c, ring) -> "RationalFunction":
        return cls(Polynomial.constant(c, ring))

    @property
    def ring(self):
        return self.num.ring

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree <= 0

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.degree == 0:
            return f"RationalFunction({self.num})"
        return f"RationalFunction(({self.num}) / ({self.den}))"

    # -- arithmetic ------------------------------------------------------

    def _lift(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return RationalFunction(Polynomial.constant(other, self.ring))

    def __add__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._trusted(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if not o.num:
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den**-n, self.num**-n)
        return RationalFunction._trusted(self.num**n, self.den**n)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def wronskian(self) -> Polynomial:
        """P'Q - PQ'; its roots off the poles are the finite ramification points."""
        return self.num.derivative() * self.den - self.num * self.den.derivative()

    # -- evaluation and composition ---------------------------------------

    def value_at_infinity(self):
        dp, dq = self.num.degree, self.den.degree
        if dp > dq:
            return INF
        if dp < dq:
            return self.ring.zero
        return self.num.lc / self.den.lc

    def __call__(self, pt):
        return evaluate_projective(self, pt)

    def compose(self, inner: "RationalFunction", threshold: int | None = None) -> "RationalFunction":
        return compose(self, inner, threshold)

    def homogeneous_parts(self, inner: "RationalFunction"):
        """(A, B) with self(inner) = A/B before reduction."""
        n = self.degree
        P, Q = inner.num, inner.den
        ppow = [Polynomial._raw(P.ring, [P.ring.one])]
        qpow = [Polynomial._raw(P.ring, [P.ring.one])]
        for _ in range(n):
            ppow.append(ppow[-1] * P)
            qpow.append(qpow[-1] * Q)

        def hom(poly: Polynomial) -> Polynomial:
            acc = Polynomial._raw(P.ring, [])
            for i, c in enumerate(poly.coeffs):
                if c:
                    acc = acc + ppow[i] * qpow[n - i] * c
            return acc

        return hom(self.num), hom(self.den)


def compose(outer: RationalFunction, inner: RationalFunction, threshold: int | None = None) -> RationalFunction:
    """outer(inner(x)) in reduced form.

    Raises :class:`ResourceLimit` when the degree of the result would exceed
    ``threshold``; callers then fall back to compositional certification.
    """
    if outer.ring is not inner.ring and outer.ring != inner.ring:
        raise FieldMismatch("composition across different fields")
    d = outer.degree * inner.degree
    if threshold is not None and d > threshold:
        raise ResourceLimit(f"composition degree {d} exceeds threshold {threshold}")
    if outer.degree == 0:
        return outer
    a, b = outer.homogeneous_parts(inner)
    return RationalFunction(a, b)


def evaluate_projective(F: RationalFunction, pt):
    """F(pt) on the projective line; pt may be INF and the result may be INF."""
    if pt is INF:
        return F.value_at_infinity()
    q = F.den(pt)
    if not q:
        return INF
    return F.num(pt) / q


def parse_rational_function(num, den, ring) -> RationalFunction:
    try:
        return RationalFunction(Polynomial(num, ring), Polynomial(den, ring))
    except ZeroDivisionError as exc:
        raise InvalidInput("zero denominator") from exc
