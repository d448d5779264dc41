from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from belyi.descent import (
    branch_values_by_resultants,
    collapse_chain,
    critical_value_polynomial,
    eval_chain,
    reduce_to_rationals,
)
from belyi.errors import InvalidInput
from belyi.fields import QQ
from belyi.orbits import OrbitSet, pushforward
from belyi.poly import Polynomial, squarefree_part
from belyi.ratfunc import INF, RationalFunction
from belyi.stages import branch_locus_by_discriminant
from strategies import qq_polys

x = Polynomial.x(QQ)


def test_collapse_chain_sqrt2():
    fs = collapse_chain(OrbitSet(x**2 - 2))
    assert len(fs) == 2
    assert OrbitSet.from_polynomial(fs[1]) == OrbitSet(x + 2)
    composite = fs[1].compose(fs[0])
    assert composite == -4 * x**2
    assert branch_values_by_resultants(fs) == OrbitSet(x)


def test_critical_value_polynomial_sign_independent_roots():
    r = critical_value_polynomial(x**2 - 2)
    assert r.monic() == x + 2


def test_collapse_chain_rejects_infinity():
    with pytest.raises(InvalidInput):
        collapse_chain(OrbitSet(x, True))


@st.composite
def small_sets(draw):
    f = squarefree_part(draw(qq_polys(1, 3))).monic()
    assume(f.degree >= 1)
    return OrbitSet(f, draw(st.booleans()))


def _expanded(red) -> RationalFunction:
    F = RationalFunction(x)
    for m in red.moebius:
        F = m.as_rational_function().compose(F)
    for f in red.polys:
        F = RationalFunction(f).compose(F)
    return F


@settings(max_examples=40)
@given(small_sets(), st.sampled_from([Fraction(0), Fraction(7), Fraction(-1, 2), INF]))
def test_reduce_postconditions(A, alpha):
    assume(not A.contains(alpha))
    red = reduce_to_rationals(A, alpha)
    assert red.B[-1] is INF
    finite = [b for b in red.B if b is not INF]
    assert all(isinstance(b, Fraction) for b in finite)
    assert red.beta not in finite
    Bset = OrbitSet.from_points(list(red.B), QQ)
    image, value = A, alpha
    for m in red.moebius:
        image, value = m.pushforward(image), m(value)
    for f in red.polys:
        image, value = pushforward(RationalFunction(f), image), RationalFunction(f)(value)
    assert value == red.beta
    assert image.issubset(Bset)
    assert branch_values_by_resultants(list(red.polys)).union(OrbitSet.infinity(QQ)).issubset(Bset)
    total = 1
    for f in red.polys:
        total *= f.degree
    if total <= 6:
        # expanded oracle for small composites
        F = _expanded(red)
        assert F(alpha) == red.beta
        assert pushforward(F, A).issubset(Bset)
        assert branch_locus_by_discriminant(F).issubset(Bset)


def test_eval_chain():
    assert eval_chain([x + 1, x**2], Fraction(2)) == 9
