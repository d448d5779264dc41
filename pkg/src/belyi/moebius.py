"""Degree-one maps x -> (ax + b)/(cx + d) and the normalizations built from them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput
from .fields import QQ
from .numtheory import cauchy_lower
from .orbits import OrbitSet, pushforward
from .poly import Polynomial
from .ratfunc import INF, RationalFunction


@dataclass(frozen=True)
class MoebiusMap:
    a: object
    b: object
    c: object
    d: object
    field: object = QQ

    def __post_init__(self):
        f = self.field
        for name in "abcd":
            object.__setattr__(self, name, f(getattr(self, name)))
        if not self.det:
            raise InvalidInput("Moebius map with zero determinant")

    @classmethod
    def identity(cls, field=QQ) -> "MoebiusMap":
        return cls(1, 0, 0, 1, field)

    @classmethod
    def translation(cls, t, field=QQ) -> "MoebiusMap":
        """x -> x + t."""
        return cls(1, t, 0, 1, field)

    @classmethod
    def scaling(cls, s, field=QQ) -> "MoebiusMap":
        """x -> s x."""
        return cls(s, 0, 0, 1, field)

    @classmethod
    def inversion_at(cls, u, field=QQ) -> "MoebiusMap":
        """x -> 1/(x - u)."""
        return cls(0, 1, 1, -field(u), field)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def degree(self) -> int:
        return 1

    def __call__(self, pt):
        a, b, c, d = self.a, self.b, self.c, self.d
        if pt is INF:
            return INF if not c else a / c
        den = c * pt + d
        if not den:
            return INF
        return (a * pt + b) / den

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a, self.field)

    def then(self, outer: "MoebiusMap") -> "MoebiusMap":
        """outer o self."""
        A, B, C, D = outer.a, outer.b, outer.c, outer.d
        a, b, c, d = self.a, self.b, self.c, self.d
        return MoebiusMap(A * a + B * c, A * b + B * d, C * a + D * c, C * b + D * d, self.field)

    def as_rational_function(self) -> RationalFunction:
        f = self.field
        num = Polynomial._raw(f, [self.b, self.a])
        den = Polynomial._raw(f, [self.d, self.c])
        return RationalFunction(num, den)

    def pushforward(self, s: OrbitSet) -> OrbitSet:
        return pushforward(self.as_rational_function(), s)

    def is_identity(self) -> bool:
        return not self.b and not self.c and self.a == self.d

    def to_json(self) -> list:
        return [self.field.to_json(v) for v in (self.a, self.b, self.c, self.d)]

    def __repr__(self):
        return f"MoebiusMap(({self.a}*x + {self.b})/({self.c}*x + {self.d}))"


def smallest_avoiding(excluded_set: OrbitSet, extra=()) -> int:
    """Smallest nonnegative integer outside an orbit set and a list of points."""
    k = 0
    extra = [e for e in extra if e is not INF]
    while excluded_set.contains(k) or any(e == k for e in extra):
        k += 1
    return k


def normalize_input(A: OrbitSet, alpha) -> tuple[MoebiusMap, OrbitSet]:
    """A rational map psi0 with psi0(alpha) = 0 and infinity outside psi0(A)."""
    field = A.field
    if A.contains(alpha):
        raise InvalidInput("alpha lies in A")
    if alpha is INF:
        u = smallest_avoiding(A)
        psi0 = MoebiusMap.inversion_at(u, field)
    elif not A.at_infinity:
        psi0 = MoebiusMap.translation(-field(alpha), field)
    else:
        u = smallest_avoiding(A, [alpha])
        # (x - alpha)/(x - u)
        psi0 = MoebiusMap(1, -field(alpha), 1, -field(u), field)
    A2 = psi0.pushforward(A)
    assert psi0(alpha) == 0 and not A2.at_infinity
    return psi0, A2


def _largest_dyadic_below(bound: Fraction) -> Fraction:
    k = 0
    r = Fraction(1)
    while r >= bound:
        k += 1
        r = Fraction(1, 2**k)
    return r


def separating_map(A: OrbitSet, c) -> MoebiusMap:
    """psi = s/(x - r) with |psi(0)| > c and |psi(b)| < 1 for every root b of A.

    Both inequalities are certified with Cauchy-type root bounds valid for all
    complex conjugates at once.
    """
    c = Fraction(c)
    if A.at_infinity:
        raise InvalidInput("separating map needs infinity outside A")
    f = A.finite_part
    if f.degree < 1:
        raise InvalidInput("separating map needs a nonempty set")
    if not f.coeffs[0]:
        raise InvalidInput("separating map needs 0 outside A")
    if c <= 0:
        raise InvalidInput("separation constant must be positive")
    L = cauchy_lower(f)
    r = _largest_dyadic_below(L / (c + 1))
    # min |b - r| >= max(lower bound of the shifted polynomial, L - r)
    m_shift = cauchy_lower(f.taylor_shift(r))
    M = max(m_shift, L - r)
    s = (r * c + M) / 2
    assert r * c < s < M
    return MoebiusMap(0, s, 1, -r, QQ)


def separation_certificate(A: OrbitSet, psi: MoebiusMap, c) -> dict:
    """Recompute the bounds proving psi separates 0 from A with constant c."""
    c = Fraction(c)
    s, r = psi.b, -psi.d
    f = A.finite_part
    M = max(cauchy_lower(f.taylor_shift(r)), cauchy_lower(f) - r)
    value0 = abs(psi(QQ(0)))
    return {
        "psi_at_0_exceeds_c": value0 > c,
        "sup_over_A_below_1": s < M,
    }


def integerize(B: list, beta) -> tuple[list[MoebiusMap], list[int], int]:
    """Moebius maps moving B (rationals and possibly INF) into integers.

    Returns (maps, B', beta') with maps applied first to last.
    """
    if beta is INF or any(b is not INF and b == beta for b in B):
        raise InvalidInput("beta must be a rational point outside B")
    maps: list[MoebiusMap] = []
    pts = list(B)
    bt = QQ(beta)
    if any(b is INF for b in pts):
        finite = [b for b in pts if b is not INF]
        a = 0
        while any(b == a for b in finite) or bt == a:
            a += 1
        m = MoebiusMap.inversion_at(a)
        maps.append(m)
        pts = [m(b) for b in pts]
        bt = m(bt)
    den = math.lcm(*[Fraction(b).denominator for b in pts + [bt]])
    if den != 1:
        m = MoebiusMap.scaling(den)
        maps.append(m)
        pts = [m(b) for b in pts]
        bt = m(bt)
    ints = [int(b) for b in pts]
    assert int(bt) not in ints
    return maps, ints, int(bt)
