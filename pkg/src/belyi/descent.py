"""Collapse a Galois-stable set and its critical values into rational points.

Starting from the minimal polynomial f0 of a set A, each step replaces f by
res_y(f'(y), f(y) - x), whose roots are the finite critical values of f.
Composing the resulting polynomials sends A and every branch value into a
finite set of rationals.  A separating Moebius map chosen first guarantees
that the image of the marked point alpha stays outside that set; the
separation constant is doubled until an exact check confirms it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput, ResourceLimit
from .fields import QQ
from .moebius import normalize_input, separating_map
from .orbits import OrbitSet, image_polynomial
from .poly import Polynomial, gcd
from .ratfunc import INF, RationalFunction

DEFAULT_C_CAP = 2**64


def critical_value_polynomial(f: Polynomial) -> Polynomial:
    """res_y(f'(y), f(y) - x) as a polynomial in x."""
    return image_polynomial(RationalFunction(f), f.derivative())


def collapse_chain(A: OrbitSet) -> list[Polynomial]:
    """[f0, f1, ...] with f0 the finite part of A and f_i the critical-value
    polynomial of f_{i-1}, stopping once a polynomial is linear."""
    if A.at_infinity:
        raise InvalidInput("collapse_chain needs infinity outside A")
    f = A.finite_part
    if f.degree < 1:
        raise InvalidInput("collapse_chain needs a nonempty set")
    chain = [f]
    while f.degree > 1:
        r = critical_value_polynomial(f)
        g = gcd(r, r.derivative())
        if g.degree > 0:
            r = r.exquo(g)
        chain.append(r)
        f = r
    return chain


def eval_chain(fs: list[Polynomial], t):
    for f in fs:
        t = f(t)
    return t


@dataclass(frozen=True)
class Reduction:
    """Output of :func:`reduce_to_rationals`."""

    moebius: tuple  # maps applied first, in order
    polys: tuple  # f0, f1, ... applied after the Moebius maps
    B: tuple  # rationals plus INF (always present), sorted with INF last
    beta: Fraction
    c: Fraction

    @property
    def stages(self) -> list:
        return list(self.moebius) + list(self.polys)


def reduce_to_rationals(A: OrbitSet, alpha, c_cap: int = DEFAULT_C_CAP) -> Reduction:
    """Moebius maps and polynomials phi2 with phi2(A) and br(phi2) inside B,
    B a finite set of rationals together with infinity, and phi2(alpha) = beta
    a rational outside B."""
    field = A.field
    if field != QQ:
        raise InvalidInput("reduction to rationals needs a set over QQ")
    if A.contains(alpha):
        raise InvalidInput("alpha lies in A")
    if A.is_empty():
        u = 0
        while alpha is not INF and alpha == u:
            u += 1
        A = OrbitSet.from_points([u], field)
    psi0, A1 = normalize_input(A, alpha)
    c = Fraction(2)
    while c <= c_cap:
        psi = separating_map(A1, c)
        A2 = psi.pushforward(A1)
        fs = collapse_chain(A2)
        # G_k = f_last o ... o f_k, evaluated at 0
        values = []
        for k in range(1, len(fs) + 1):
            values.append(eval_chain(fs[k:], QQ(0)))
        finite = sorted(set(values))
        beta = eval_chain(fs, psi(QQ(0)))
        if beta not in finite:
            return Reduction(
                moebius=(psi0, psi),
                polys=tuple(fs),
                B=tuple(finite) + (INF,),
                beta=beta,
                c=c,
            )
        c *= 2
    raise ResourceLimit(f"separation constant exceeded cap {c_cap}")


def branch_values_by_resultants(fs: list[Polynomial]) -> OrbitSet:
    """Finite branch values of f_last o ... o f_0 via the critical-value
    polynomials, as an independent cross-check of the rational list."""
    acc = OrbitSet.empty(QQ)
    for f in fs:
        acc = _push_poly(f, acc)
        if f.degree > 1:
            acc = acc.union(OrbitSet.from_polynomial(critical_value_polynomial(f)))
    return acc


def _push_poly(f: Polynomial, s: OrbitSet) -> OrbitSet:
    from .orbits import pushforward

    if s.is_empty():
        return s
    return pushforward(RationalFunction(f), s)


__all__ = [
    "Reduction",
    "collapse_chain",
    "critical_value_polynomial",
    "reduce_to_rationals",
    "branch_values_by_resultants",
]
