from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from belyi.errors import InvalidInput
from belyi.ffroots import all_roots, lift_poly
from belyi.fields import PrimeField
from belyi.orbits import OrbitSet
from belyi.poly import Polynomial, squarefree_part
from belyi.ratfunc import INF, RationalFunction
from belyi.serialize import make_extension
from belyi.stages import branch_locus_by_discriminant, rf_branch, rf_local
from belyi.wild import AdditivePolynomial, fp_span_polynomial, span_by_enumeration, wild_pin_map

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)


def X(F):
    return Polynomial.x(F)


class TestSpan:
    def test_f2(self):
        y = X(F2)
        T = fp_span_polynomial(OrbitSet(y - 1))
        assert T.to_poly() == y**2 + y
        assert T.coeffs == (F2(1), F2(1))

    def test_f3(self):
        y = X(F3)
        T = fp_span_polynomial(OrbitSet((y - 1) * (y - 2)))
        assert T.to_poly() == y**3 + 2 * y
        assert T.coeffs == (F3(2), F3(1))

    def test_empty_span(self):
        T = fp_span_polynomial(OrbitSet.infinity(F3))
        assert T.to_poly() == X(F3)

    def test_zero_rejected(self):
        with pytest.raises(InvalidInput):
            fp_span_polynomial(OrbitSet(X(F2) * (X(F2) + 1)))

    @pytest.mark.parametrize(
        "F,coeffs",
        [(F2, [1, 1, 1]), (F2, [1, 1, 0, 1]), (F3, [1, 0, 1]), (F5, [2, 1]), (F3, [1, 1, 0, 1])],
    )
    def test_matches_enumeration(self, F, coeffs):
        B = OrbitSet.from_polynomial(Polynomial._raw(F, [F(c) for c in coeffs]))
        if B.contains(F.zero):
            pytest.skip("0 in B")
        assert fp_span_polynomial(B).to_poly() == span_by_enumeration(B)

    def test_additivity_in_splitting_field(self):
        y = X(F2)
        B = OrbitSet((y**2 + y + 1) * (y**3 + y + 1))
        T = fp_span_polynomial(B)
        K, roots = all_roots(B.finite_part)
        TK = lift_poly(T.to_poly(), K)
        rng = random.Random(7)
        elems = list(K.elements())
        for _ in range(100):
            u, v = rng.choice(elems), rng.choice(elems)
            assert TK(u + v) == TK(u) + TK(v)
        support = {i for i, c in enumerate(T.to_poly().coeffs) if c}
        assert support <= {2**i for i in range(T.n + 1)}
        assert T.to_poly().degree == 2**T.n

    @settings(max_examples=30)
    @given(st.lists(st.integers(0, 4), min_size=2, max_size=4))
    def test_linearity_f5(self, cs):
        f = squarefree_part(Polynomial._raw(F5, [F5(c) for c in cs] + [F5(1)]))
        B = OrbitSet(f.monic())
        if B.contains(F5.zero):
            return
        T = fp_span_polynomial(B)
        P = T.to_poly()
        assert P[1] != 0
        for a in range(5):
            for lam in range(5):
                assert P(F5(lam) * F5(a)) == F5(lam) * P(F5(a))

    def test_from_poly_rejects_non_additive(self):
        y = X(F2)
        with pytest.raises(InvalidInput):
            AdditivePolynomial.from_poly(y**3 + y)


class TestPin:
    def test_f2_example(self):
        y = X(F2)
        w = wild_pin_map(OrbitSet(y - 1))
        assert w.T.to_poly() == y**2 + y
        assert w.S == y**2 + 1
        assert w.g == RationalFunction(y**2) + RationalFunction(Polynomial.constant(1, F2), y + 1)
        assert w.g(F2(1)) is INF
        assert w.g(F2(0)) == F2(1)
        assert w.f()(F2(0)) == F2(0)
        assert branch_locus_by_discriminant(w.f()) == OrbitSet.infinity(F2)

    def test_f3_example(self):
        y = X(F3)
        w = wild_pin_map(OrbitSet((y - 1) * (y - 2)))
        assert w.T.to_poly() + w.S == y**6 + y**3 + 2 * y + 2
        assert w.g(F3(1)) is INF and w.g(F3(2)) is INF

    def test_infinity_only(self):
        w = wild_pin_map(OrbitSet.infinity(F3))
        assert w.S == Polynomial.constant(1, F3)
        assert w.g(F3(0)) == F3(1)
        assert w.f()(F3(0)) == F3(2)
        assert rf_local(w.f(), INF)[1] >= 3

    @pytest.mark.parametrize(
        "F,coeffs,inf",
        [(F2, [1, 1, 1], False), (F3, [1, 0, 1], True), (F5, [2, 0, 1], False), (F2, [1, 1], True)],
    )
    def test_artin_schreier_identities(self, F, coeffs, inf):
        B = OrbitSet(Polynomial._raw(F, [F(c) for c in coeffs]).monic(), inf)
        w = wild_pin_map(B)
        f = w.f()
        assert f.derivative() == w.g.derivative()
        a0 = w.T.coeffs[0]
        TS = w.T.to_poly() + w.S
        assert w.g.derivative() == RationalFunction(Polynomial.constant(-a0, F), TS * TS)
        assert w.S.degree == F.p * (F.p**w.T.n - 1)
        assert rf_branch(f) == OrbitSet.infinity(F)
        assert rf_branch(RationalFunction(w.outer)) == OrbitSet.infinity(F)
        assert f(F.zero) is not INF

    def test_extension_field(self):
        E = make_extension(F3, 2, [1, 0, 1])
        y = X(E)
        B = OrbitSet(y - E([0, 1]))
        w = wild_pin_map(B)
        assert w.g(E([0, 1])) is INF
        assert w.f().derivative() == w.g.derivative()
