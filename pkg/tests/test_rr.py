from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from belyi.errors import InvalidInput, ResourceLimit
from belyi.fields import QQ, PrimeField
from belyi.orbits import OrbitSet
from belyi.poly import Polynomial, gcd
from belyi.ratfunc import INF, RationalFunction
from belyi.rr import DivisorP1, augment_T, rr_basis_p1, simple_pole_map, union_cardinality_check
from belyi.stages import rf_branch, rf_local

F2 = PrimeField(2)
F3 = PrimeField(3)
x = Polynomial.x(QQ)
t = Polynomial.x(F2)


class TestSimplePoleMap:
    def test_rational_example(self):
        f = simple_pole_map(OrbitSet(x), OrbitSet(x**2 + 1))
        assert f == RationalFunction(2 * x, x**2 + 1)
        assert f(QQ(0)) == 0

    def test_f2_examples(self):
        assert simple_pole_map(OrbitSet.empty(F2), OrbitSet(t)) == RationalFunction(Polynomial.constant(1, F2), t)
        W = t * (t**2 + t + 1)
        f = simple_pole_map(OrbitSet.empty(F2), OrbitSet(W))
        assert f == RationalFunction((t + 1) ** 2, W)
        assert gcd(f.num, W).degree == 0

    def test_infinity_in_T(self):
        f = simple_pole_map(OrbitSet(x - 1), OrbitSet(x, True))
        assert f == RationalFunction(x) + RationalFunction(Polynomial.constant(1, QQ), x)
        assert rf_local(f, INF) == (INF, 1)

    @pytest.mark.parametrize(
        "S,T",
        [
            (OrbitSet(x), OrbitSet(x**2 - 2)),
            (OrbitSet(x**2 + 1), OrbitSet((x - 1) * (x - 3), True)),
            (OrbitSet.empty(F3), OrbitSet(Polynomial.x(F3) ** 2 + 1)),
        ],
    )
    def test_poles_are_simple(self, S, T):
        f = simple_pole_map(S, T)
        assert f.den == T.finite_part
        assert gcd(f.num, f.den).degree == 0
        assert not rf_branch(f).at_infinity

    def test_rejects_overlap_and_empty(self):
        with pytest.raises(InvalidInput):
            simple_pole_map(OrbitSet(x), OrbitSet(x))
        with pytest.raises(InvalidInput):
            simple_pole_map(OrbitSet(x), OrbitSet.empty(QQ))


class TestBasis:
    def test_zero_divisor(self):
        assert rr_basis_p1(DivisorP1(), QQ) == [RationalFunction.constant(QQ(1), QQ)]

    def test_dimension_four_over_f2(self):
        D = DivisorP1(((OrbitSet(t), 1), (OrbitSet(t**2 + t + 1), 1)))
        assert len(rr_basis_p1(D, F2)) == 4

    def test_double_pole_at_zero(self):
        D = DivisorP1(((OrbitSet(x), 2),))
        basis = rr_basis_p1(D, QQ)
        one = Polynomial.constant(1, QQ)
        assert set(basis) == {RationalFunction(one), RationalFunction(one, x), RationalFunction(one, x**2)}

    @settings(max_examples=40)
    @given(st.integers(-2, 3), st.integers(-2, 3), st.integers(-2, 3))
    def test_dimension_and_membership(self, a, b, c):
        D = DivisorP1(((OrbitSet(x), a), (OrbitSet(x**2 + 1), b)), c)
        basis = rr_basis_p1(D, QQ)
        assert len(basis) == max(D.degree + 1, 0)
        for f in basis:
            assert D.contains(f)

    def test_negative_degree_is_empty(self):
        assert rr_basis_p1(DivisorP1((), -1), QQ) == []


class TestUnionCount:
    def test_f2(self):
        chk = union_cardinality_check(DivisorP1(), [OrbitSet(t), OrbitSet(t**2 + t + 1)], F2)
        assert (chk.formula_count, chk.brute_count, chk.total) == (10, 10, 16)

    def test_f3(self):
        y = Polynomial.x(F3)
        chk = union_cardinality_check(DivisorP1(), [OrbitSet(y), OrbitSet(y - 1)], F3)
        assert (chk.formula_count, chk.brute_count, chk.total) == (15, 15, 27)

    def test_single_orbit(self):
        chk = union_cardinality_check(DivisorP1(), [OrbitSet(t)], F2)
        assert chk.equal and chk.formula_count == 2

    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_larger_divisors(self, k):
        D = DivisorP1((), k)
        chk = union_cardinality_check(D, [OrbitSet(t), OrbitSet(t + 1)], F2)
        assert chk.equal

    def test_cap(self, monkeypatch):
        monkeypatch.setenv("BELYI_ENUM_CAP", "8")
        with pytest.raises(ResourceLimit):
            union_cardinality_check(DivisorP1(), [OrbitSet(t), OrbitSet(t**2 + t + 1)], F2)


class TestAugment:
    def test_rationals(self):
        assert augment_T(OrbitSet(x * (x - 1)), OrbitSet.empty(QQ)) == OrbitSet(x - 2)

    def test_keeps_nonempty(self):
        assert augment_T(OrbitSet(x), OrbitSet(x - 5)) == OrbitSet(x - 5)

    def test_finite_field_falls_back(self):
        assert augment_T(OrbitSet(t * (t + 1)), OrbitSet.empty(F2)) == OrbitSet.infinity(F2)
        full = OrbitSet(t * (t + 1), True)
        T = augment_T(full, OrbitSet.empty(F2))
        assert T.disjoint(full) and T.cardinality == 2
