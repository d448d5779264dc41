from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from belyi.errors import InvalidInput
from belyi.fields import QQ
from belyi.numtheory import padic_valuation
from belyi.pinning import (
    FactoredRational,
    FactoredValue,
    augment,
    choose_prime,
    log_derivative_identity_holds,
    pin_constants,
    pin_map,
    residue_sum_zero,
)
from belyi.orbits import OrbitSet
from belyi.poly import Polynomial
from belyi.ratfunc import INF, RationalFunction
from belyi.stages import branch_locus_by_discriminant, rf_local

X = sympy.Symbol("x")


def residues_by_linear_solve(roots, c):
    """Residues of c / prod (x - b_j) from a linear system in the unknown numerators."""
    unknowns = sympy.symbols(f"r0:{len(roots)}")
    expr = sum(r * sympy.prod([X - b for j, b in enumerate(roots) if j != i]) for i, r in enumerate(unknowns))
    eqs = sympy.Poly(expr - c, X).all_coeffs()
    sol = sympy.solve(eqs, unknowns, dict=True)[0]
    return [int(sol[r]) for r in unknowns]


def trial_valuation(value: Fraction, p: int) -> int:
    v = 0
    n, d = value.numerator, value.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


distinct_ints = st.lists(st.integers(-12, 12), min_size=1, max_size=4, unique=True)


class TestExamples:
    def test_zero_one_at_two(self):
        pin = pin_map(augment([0, 1], 2), 2)
        assert (pin.p, pin.delta) == (3, 5)
        assert pin.B == (0, 1, 5)
        assert pin.c == -400
        assert pin.n == (-80, 100, -20)
        assert sum(pin.n) == 0
        assert pin.valuation == -40

    def test_zero_two_at_one(self):
        pin = pin_map([0, 2], 1)
        assert (pin.p, pin.delta, pin.c) == (2, 3, -36)
        assert pin.n == (-6, 18, -12)
        assert pin.valuation == -24
        assert pin.f.degree == 36

    @pytest.mark.parametrize("B,beta,out", [([5], 0, [5, 1]), ([], 0, [1, 2]), ([3, 4], 0, [3, 4])])
    def test_augment(self, B, beta, out):
        assert augment(B, beta) == out

    def test_choose_prime(self):
        assert choose_prime([10], 0) == 3

    def test_beta_in_B_rejected(self):
        with pytest.raises(InvalidInput):
            pin_map([0, 1], 1)


class TestOracles:
    @pytest.mark.parametrize("B,beta", [([0, 1], 2), ([0, 2], 1), ([-3, 4, 7], 0)])
    def test_residues_match_linear_solve(self, B, beta):
        pin = pin_map(augment(B, beta), beta)
        r = residues_by_linear_solve(list(pin.B), pin.c)
        m = len(pin.B)
        assert list(pin.n) == [(-1) ** (m - 1) * ri for ri in r]

    @pytest.mark.parametrize("B,beta", [([0, 1], 2), ([0, 2], 1), ([-3, 4], 0)])
    def test_valuation_by_trial_division(self, B, beta):
        pin = pin_map(augment(B, beta), beta)
        value = pin.f.evaluate(beta).expand(max_bits=1 << 20)
        assert trial_valuation(value, pin.p) == pin.valuation
        assert value != 1

    def test_expanded_map_is_belyi(self):
        pin = pin_map([0, 2], 1)
        num, den = pin.f.numerator_denominator()
        F = RationalFunction(num, den)
        assert branch_locus_by_discriminant(F).issubset(zero_one_inf())
        assert rf_local(F, INF)[1] == pin.f.index_at_infinity()


def zero_one_inf():
    x = Polynomial.x(QQ)
    return OrbitSet(x * (x - 1), True)


class TestProperties:
    @settings(max_examples=60)
    @given(distinct_ints, st.integers(-12, 12))
    def test_pin_invariants(self, B, beta):
        if beta in B:
            return
        pin = pin_map(augment(B, beta), beta)
        assert residue_sum_zero(pin.n)
        assert all(isinstance(n, int) for n in pin.n)
        assert log_derivative_identity_holds(pin.f, pin.c)
        assert pin.valuation == 2 * pin.n[-1]
        assert padic_valuation(pin.delta - beta, pin.p) == 1
        assert not pin.f.evaluate(beta).is_one()

    @given(st.lists(st.integers(-30, 30), min_size=2, max_size=5, unique=True))
    def test_constants_integral(self, roots):
        c, ns = pin_constants(roots)
        assert sum(ns) == 0
        for i, bi in enumerate(roots):
            d = 1
            for j, bj in enumerate(roots):
                if j != i:
                    d *= bj - bi
            assert ns[i] * d == c

    def test_perturbed_exponent_breaks_identity(self):
        pin = pin_map([0, 1, 5], 2)
        bad = FactoredRational(pin.f.roots, (pin.f.exponents[0] + 2,) + pin.f.exponents[1:])
        assert not log_derivative_identity_holds(bad, pin.c)

    @given(
        st.lists(st.builds(Fraction, st.integers(-9, 9).filter(bool), st.integers(1, 9)), min_size=1, max_size=4),
        st.lists(st.integers(-6, 6), min_size=4, max_size=4),
    )
    def test_is_one_matches_expansion(self, bases, exps):
        fv = FactoredValue(tuple(bases), tuple(exps[: len(bases)]))
        assert fv.is_one() == (fv.expand() == 1)
        for p in (2, 3, 5):
            assert fv.valuation(p) == padic_valuation(fv.expand(), p)

    def test_is_one_cancellation(self):
        fv = FactoredValue((Fraction(4), Fraction(2), Fraction(-1)), (1, -2, 2))
        assert fv.is_one()
        assert not FactoredValue((Fraction(-2),), (2,)).is_one()


def test_json_roundtrip():
    f = FactoredRational((0, 1, 5), (-160, 200, -40))
    assert FactoredRational.from_json(f.to_json()) == f
