"""Quotient rings K[y]/(g) and explicit finite extension fields.

Elements are stored as tuples of base-ring coefficients of length deg g, lowest
degree first.  When g is squarefree but reducible, K[y]/(g) is a product of
fields; inverting a zero divisor raises :class:`NotInvertible` carrying the
common factor so callers can split g and continue on each component.  This is
how algebraic points of an orbit are handled without factoring.
"""

from __future__ import annotations

from .errors import FieldMismatch, InvalidInput, NotInvertible
from .poly import Polynomial, gcd, xgcd


def _lies_over(ring, base) -> bool:
    r = getattr(ring, "base", None)
    while r is not None:
        if r is base or r == base:
            return True
        r = getattr(r, "base", None)
    return False


class _Promote(Exception):
    """Internal signal: the other operand lives in a ring built over ours."""

    def __init__(self, ring):
        super().__init__()
        self.ring = ring


def _promoting(op):
    def wrapper(self, other):
        try:
            return op(self, other)
        except _Promote as up:
            return op(up.ring(self), other)

    wrapper.__name__ = op.__name__
    return wrapper


class QElem:
    __slots__ = ("ring", "c")

    def __init__(self, ring: "QuotientRing", c: tuple):
        self.ring = ring
        self.c = c

    def poly(self) -> Polynomial:
        return Polynomial._raw(self.ring.base, list(self.c))

    def _coerce(self, other):
        if isinstance(other, QElem):
            if other.ring is not self.ring and other.ring != self.ring:
                if _lies_over(other.ring, self.ring):
                    raise _Promote(other.ring)
                if _lies_over(self.ring, other.ring):
                    return self.ring(other)
                raise FieldMismatch("elements of different quotient rings")
            return other
        if isinstance(other, Polynomial):
            return None
        try:
            return self.ring(other)
        except InvalidInput:
            return None

    @_promoting
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QElem(self.ring, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return QElem(self.ring, tuple(-a for a in self.c))

    @_promoting
    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QElem(self.ring, tuple(a - b for a, b in zip(self.c, o.c)))

    @_promoting
    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    @_promoting
    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.ring.from_poly(self.poly() * o.poly())

    __rmul__ = __mul__

    def inverse(self) -> "QElem":
        ring = self.ring
        p = self.poly()
        if not p:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = xgcd(p, ring.modulus)
        if g.degree > 0:
            raise NotInvertible(g)
        return ring.from_poly(s)

    @_promoting
    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    @_promoting
    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    @_promoting
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return f"[{', '.join(str(a) for a in self.c)}]"


class QuotientRing:
    """K[y]/(modulus) for a monic nonconstant modulus over a field K."""

    def __init__(self, base, modulus: Polynomial):
        if not _same_ring(modulus.ring, base):
            raise FieldMismatch("modulus over a different field")
        if modulus.degree < 1:
            raise InvalidInput("modulus must be nonconstant")
        self.base = base
        self.modulus = modulus.monic()
        self.deg = self.modulus.degree
        self.zero = QElem(self, (base.zero,) * self.deg)
        self.one = QElem(self, (base.one,) + (base.zero,) * (self.deg - 1))

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def is_field(self) -> bool:
        # reducible moduli are allowed; inversion then may raise NotInvertible
        return True

    is_finite = False

    @property
    def prime_field(self):
        return self.base.prime_field

    def gen(self) -> QElem:
        if self.deg == 1:
            return self.from_poly(Polynomial.x(self.base))
        return QElem(self, (self.base.zero, self.base.one) + (self.base.zero,) * (self.deg - 2))

    def from_poly(self, p: Polynomial) -> QElem:
        r = p % self.modulus if p.degree >= self.deg else p
        cs = list(r.coeffs) + [self.base.zero] * (self.deg - len(r.coeffs))
        return QElem(self, tuple(cs))

    def __call__(self, x) -> QElem:
        if isinstance(x, QElem):
            if x.ring is self or x.ring == self:
                return x
            if not _lies_over(self, x.ring):
                raise FieldMismatch("element of a different quotient ring")
        if isinstance(x, (list, tuple)):
            return self.from_poly(Polynomial([self.base(a) for a in x], self.base))
        c = self.base(x)
        return QElem(self, (c,) + (self.base.zero,) * (self.deg - 1))

    @staticmethod
    def exquo(a, b):
        return a / b

    def embed(self, a) -> QElem:
        return self(a)

    @_promoting
    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and _same_ring(other.base, self.base)
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("Quot", self.base, self.modulus.coeffs))

    def __repr__(self):
        return f"{self.base!r}[y]/({self.modulus})"


class ExtensionField(QuotientRing):
    """A finite field F_q[y]/(h) with h irreducible over the finite field F_q."""

    is_finite = True

    def __init__(self, base, modulus: Polynomial, *, check: bool = True):
        if not getattr(base, "is_finite", False):
            raise InvalidInput("extension fields are built over finite fields")
        super().__init__(base, modulus)
        if check:
            from .ffroots import is_irreducible

            if not is_irreducible(self.modulus):
                raise InvalidInput(f"modulus {self.modulus} is not irreducible")
        self.size = base.size**self.deg

    kind = "extension"

    @property
    def degree(self) -> int:
        """Absolute degree over the prime field."""
        return self.deg * self.base.degree

    def elements(self):
        from itertools import product

        for cs in product(list(self.base.elements()), repeat=self.deg):
            yield QElem(self, tuple(reversed(cs)))

    def frobenius_inverse(self, a: QElem) -> QElem:
        # a -> a**(size/p) inverts a -> a**p on a finite field
        return a ** (self.size // self.characteristic)

    def to_json(self, a: QElem) -> list:
        return [self.base.to_json(c) for c in a.c]

    def from_json(self, obj) -> QElem:
        if not isinstance(obj, list):
            obj = [obj]
        if len(obj) > self.deg:
            raise InvalidInput("too many coefficients for an extension element")
        return self([self.base.from_json(c) for c in obj])

    def spec(self) -> dict:
        if self.base.degree != 1:
            raise InvalidInput("only extensions of prime fields serialize")
        return {
            "kind": "extension",
            "characteristic": self.characteristic,
            "degree": self.deg,
            "modulus": [self.base.to_json(c) for c in self.modulus.coeffs],
        }

    def __repr__(self):
        return f"GF({self.characteristic}^{self.degree})"


def _same_ring(a, b) -> bool:
    return a is b or a == b


def split_modulus(ring: QuotientRing, factor: Polynomial):
    """Split a reducible modulus along a nontrivial factor into two quotient rings."""
    f = gcd(ring.modulus, factor)
    if f.degree <= 0 or f.degree >= ring.deg:
        raise ValueError("not a proper factor of the modulus")
    return QuotientRing(ring.base, f), QuotientRing(ring.base, ring.modulus.exquo(f))
