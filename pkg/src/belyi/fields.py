"""Coefficient rings: the integers, the rationals and prime fields.

Rationals are plain :class:`fractions.Fraction` values and integers are plain
``int``.  Prime-field elements are :class:`GF` instances.  Extension fields and
general quotient rings live in :mod:`belyi.extension`.

Every ring object exposes the same small protocol used by the generic
polynomial code: ``zero``, ``one``, ``__call__`` (coercion), ``exquo`` (exact
division), ``is_field`` and ``characteristic``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInput


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, trial division below 1000."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    if n < 1681:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class IntegerRing:
    kind = "integers"
    characteristic = 0
    is_field = False
    is_finite = False
    zero = 0
    one = 1

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise InvalidInput(f"{x} is not an integer")
            return x.numerator
        return int(x)

    @staticmethod
    def exquo(a: int, b: int) -> int:
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return q

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")

    def __repr__(self):
        return "ZZ"


class RationalField:
    kind = "rationals"
    characteristic = 0
    degree = 1
    is_field = True
    is_finite = False
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            try:
                return Fraction(x.strip())
            except ValueError as exc:
                raise InvalidInput(f"not an exact rational: {x!r}") from exc
        if isinstance(x, float):
            raise InvalidInput("floating point values are not accepted")
        return Fraction(x)

    @staticmethod
    def exquo(a, b):
        return a / b

    @property
    def prime_field(self):
        return self

    def to_json(self, a: Fraction) -> str:
        return str(a)

    def from_json(self, obj) -> Fraction:
        if isinstance(obj, (int, str)) and not isinstance(obj, bool):
            return self(obj)
        raise InvalidInput(f"not an exact rational: {obj!r}")

    def spec(self) -> dict:
        return {"kind": "rationals"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


ZZ = IntegerRing()
QQ = RationalField()


class GF:
    """Element of a prime field; ``v`` is the canonical residue in [0, p)."""

    __slots__ = ("field", "v")

    def __init__(self, field: "PrimeField", v: int):
        self.field = field
        self.v = v

    def _other(self, other):
        if isinstance(other, GF):
            if other.field.p != self.field.p:
                raise TypeError("elements of different prime fields")
            return other.v
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GF(self.field, (self.v + o) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GF(self.field, (self.v - o) % self.field.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GF(self.field, (o - self.v) % self.field.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GF(self.field, self.v * o % self.field.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero in prime field")
        p = self.field.p
        return GF(self.field, self.v * pow(o, -1, p) % p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in prime field")
        p = self.field.p
        return GF(self.field, o * pow(self.v, -1, p) % p)

    def __neg__(self):
        return GF(self.field, -self.v % self.field.p)

    def __pow__(self, n: int):
        if n < 0 and self.v == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return GF(self.field, pow(self.v, n, self.field.p))

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.field.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return str(self.v)


class PrimeField:
    """The field with p elements."""

    kind = "prime"
    degree = 1
    is_field = True
    is_finite = True

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise InvalidInput(f"characteristic {p!r} is not prime")
        self.p = p
        self.zero = GF(self, 0)
        self.one = GF(self, 1)

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def size(self) -> int:
        return self.p

    @property
    def prime_field(self):
        return self

    def __call__(self, x) -> GF:
        if isinstance(x, GF):
            if x.field.p != self.p:
                raise InvalidInput("element of a different prime field")
            return x
        if isinstance(x, bool):
            raise InvalidInput("booleans are not field elements")
        if isinstance(x, int):
            return GF(self, x % self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise InvalidInput(f"{x} has no image in F_{self.p}")
            return GF(self, x.numerator * pow(x.denominator, -1, self.p) % self.p)
        if isinstance(x, str):
            return self(QQ(x))
        raise InvalidInput(f"cannot coerce {x!r} into F_{self.p}")

    @staticmethod
    def exquo(a, b):
        return a / b

    def elements(self):
        for v in range(self.p):
            yield GF(self, v)

    def frobenius_inverse(self, a):
        return a

    def to_json(self, a: GF) -> int:
        return a.v

    def from_json(self, obj) -> GF:
        if isinstance(obj, int) and not isinstance(obj, bool):
            return self(obj)
        if isinstance(obj, str):
            return self(obj)
        raise InvalidInput(f"not an element of F_{self.p}: {obj!r}")

    def spec(self) -> dict:
        return {"kind": "prime", "characteristic": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"
