"""Wild covers in characteristic p built from additive polynomials.

For a set B over a finite field F_q with 0 outside B, let V be the F_p-span of
the finite points of B and T = prod_{v in V} (x - v), an additive polynomial
sum a_i x^(p^i) with a_0 != 0.  With S = T^p / x^p the map
g = x^p + 1/(T + S) has a simple pole at every point of V other than 0, a pole
of order p at infinity, and derivative -a_0/(T + S)^2 without finite zeros.
Then f = g^p + g is branched only over infinity and ramified at all of B.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput, ResourceLimit
from .ffroots import all_roots
from .orbits import OrbitSet
from .poly import Polynomial
from .ratfunc import RationalFunction
from .rr import enum_cap


@dataclass(frozen=True)
class AdditivePolynomial:
    """sum coeffs[i] * x**(p**i) over a field of characteristic p."""

    coeffs: tuple
    field: object

    def __post_init__(self):
        if not self.coeffs or not self.coeffs[0]:
            raise InvalidInput("additive polynomial needs a nonzero linear coefficient")
        if self.field.characteristic == 0:
            raise InvalidInput("additive polynomials live in positive characteristic")

    @property
    def p(self) -> int:
        return self.field.characteristic

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def to_poly(self) -> Polynomial:
        p = self.p
        cs = [self.field.zero] * (p**self.n + 1)
        for i, a in enumerate(self.coeffs):
            cs[p**i] = a
        return Polynomial._raw(self.field, cs)

    def __call__(self, u):
        return self.to_poly()(u)

    @classmethod
    def from_poly(cls, f: Polynomial) -> "AdditivePolynomial":
        p = f.ring.characteristic
        coeffs = []
        k = 1
        for i, c in enumerate(f.coeffs):
            if c:
                j = 0
                while p**j < i:
                    j += 1
                if p**j != i:
                    raise InvalidInput("polynomial is not additive")
        while k <= f.degree:
            coeffs.append(f[k])
            k *= p
        return cls(tuple(coeffs), f.ring)


def _descend(f: Polynomial, base) -> Polynomial:
    """Coefficients of f lie in base (embedded as constants); map them down."""
    if f.ring is base or f.ring == base:
        return f
    out = []
    for c in f.coeffs:
        if any(c.c[1:]):
            raise AssertionError("coefficient not in the base field")
        out.append(c.c[0])
    return Polynomial._raw(base, out)


def fp_span_polynomial(B: OrbitSet, cap: int | None = None) -> AdditivePolynomial:
    """T = prod over the F_p-span V of the finite points of B of (x - v)."""
    field = B.field
    if field.characteristic == 0:
        raise InvalidInput("fp_span_polynomial needs a finite field")
    if B.finite_part.degree >= 1 and not B.finite_part.coeffs[0]:
        raise InvalidInput("0 must not lie in B")
    cap = enum_cap() if cap is None else cap
    p = field.characteristic
    fp = B.finite_part
    if fp.degree <= 0:
        return AdditivePolynomial((field.one,), field)
    ext, roots = all_roots(fp)
    # T_{V + <a>} = T_V^p - T_V(a)^(p-1) T_V, which vanishes exactly on V + F_p a
    T = Polynomial.x(ext)
    size = 1
    for a in roots:
        ta = T(a)
        if not ta:
            continue
        size *= p
        if size > cap:
            raise ResourceLimit(f"F_p-span of size {size} exceeds the cap {cap}")
        T = T**p - T * ta ** (p - 1)
    T = _descend(T, field)
    return AdditivePolynomial.from_poly(T)


def span_by_enumeration(B: OrbitSet) -> Polynomial:
    """Oracle: enumerate the F_p-span explicitly and multiply out."""
    field = B.field
    p = field.characteristic
    if B.finite_part.degree <= 0:
        return Polynomial.x(field)
    ext, roots = all_roots(B.finite_part)
    V = {ext.zero}
    for a in roots:
        if a in V:
            continue
        V = {v + a * k for v in V for k in range(p)}
    x = Polynomial.x(ext)
    T = Polynomial.constant(1, ext)
    for v in sorted(V, key=lambda e: repr(e)):
        T = T * (x - v)
    return _descend(T, field)


@dataclass(frozen=True)
class WildPin:
    T: AdditivePolynomial
    S: Polynomial
    g: RationalFunction
    outer: Polynomial  # x^p + x

    @property
    def stages(self):
        return [self.g, self.outer]

    def f(self) -> RationalFunction:
        return self.g ** self.outer.ring.characteristic + self.g


def wild_pin_map(B: OrbitSet) -> WildPin:
    field = B.field
    p = field.characteristic
    if p == 0:
        raise InvalidInput("wild_pin_map needs positive characteristic")
    if B.contains(field.zero):
        raise InvalidInput("0 must not lie in B")
    T = fp_span_polynomial(B)
    Tp = T.to_poly()
    # S = T^p / x^p = sum a_i^p x^(p(p^i - 1))
    S = (Tp**p).exquo(Polynomial.monomial(p, 1, field))
    x = Polynomial.x(field)
    g = RationalFunction(x**p) + RationalFunction(Polynomial.constant(1, field), Tp + S)
    outer = x**p + x
    return WildPin(T, S, g, outer)


__all__ = ["AdditivePolynomial", "WildPin", "fp_span_polynomial", "span_by_enumeration", "wild_pin_map"]
