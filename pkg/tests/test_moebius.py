from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from belyi.errors import InvalidInput
from belyi.fields import QQ
from belyi.moebius import (
    MoebiusMap,
    integerize,
    normalize_input,
    separating_map,
    separation_certificate,
    smallest_avoiding,
)
from belyi.orbits import OrbitSet
from belyi.poly import Polynomial, squarefree_part
from belyi.ratfunc import INF
from strategies import qq_polys, rationals

x = Polynomial.x(QQ)

maps = st.tuples(rationals, rationals, rationals, rationals).filter(lambda t: t[0] * t[3] != t[1] * t[2])
points = st.one_of(rationals, st.just(INF))


@given(maps, points)
def test_inverse(m, pt):
    M = MoebiusMap(*m)
    assert M.inverse()(M(pt)) == pt


@given(maps, maps, points)
def test_then_is_composition(m1, m2, pt):
    A, B = MoebiusMap(*m1), MoebiusMap(*m2)
    assert A.then(B)(pt) == B(A(pt))


def test_zero_determinant_rejected():
    with pytest.raises(InvalidInput):
        MoebiusMap(1, 2, 2, 4)


def test_pushforward_matches_pointwise():
    M = MoebiusMap.inversion_at(3)
    s = OrbitSet.from_points([0, 3, INF], QQ)
    assert M.pushforward(s) == OrbitSet.from_points([Fraction(-1, 3), INF, 0], QQ)


@pytest.mark.parametrize(
    "A,alpha",
    [
        (OrbitSet(x**2 - 2), 0),
        (OrbitSet(x**2 - 2, True), 1),
        (OrbitSet(x * (x - 1)), INF),
        (OrbitSet(x - 5, True), 0),
    ],
)
def test_normalize_input(A, alpha):
    psi0, A2 = normalize_input(A, alpha)
    assert psi0(alpha) == 0
    assert not A2.at_infinity
    assert A2 == psi0.pushforward(A)


def test_normalize_input_rejects_alpha_in_A():
    with pytest.raises(InvalidInput):
        normalize_input(OrbitSet(x - 1), 1)


@st.composite
def sets_avoiding_zero(draw):
    f = draw(qq_polys(1, 4))
    f = squarefree_part(f).monic()
    assume(f.degree >= 1 and f.coeffs[0] != 0)
    return OrbitSet(f)


@given(sets_avoiding_zero(), st.sampled_from([2, 4, 16, 1024]))
def test_separation_postconditions(A, c):
    psi = separating_map(A, c)
    cert = separation_certificate(A, psi, c)
    assert cert["psi_at_0_exceeds_c"] and cert["sup_over_A_below_1"]
    # numerically, every root of A lands inside the unit disc
    coeffs = [sympy.Rational(v.numerator, v.denominator) for v in reversed(A.finite_part.coeffs)]
    for z in sympy.Poly(coeffs, sympy.Symbol("x")).nroots(n=30):
        w = complex(psi.b) / (complex(z) + complex(psi.d))
        assert abs(w) < 1
    assert abs(psi(QQ(0))) > c


def test_separation_rejects_zero_in_A():
    with pytest.raises(InvalidInput):
        separating_map(OrbitSet(x * (x - 1)), 2)


def test_integerize():
    B = [Fraction(1, 2), Fraction(-3, 4), INF]
    maps, ints, beta = integerize(B, Fraction(5, 3))
    pts = list(B)
    bt = Fraction(5, 3)
    for m in maps:
        pts = [m(p) for p in pts]
        bt = m(bt)
    assert pts == ints and bt == beta
    assert all(isinstance(v, int) for v in ints)
    assert beta not in ints


def test_smallest_avoiding():
    assert smallest_avoiding(OrbitSet(x * (x - 1)), [2]) == 3
