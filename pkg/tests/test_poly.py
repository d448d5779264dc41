from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from belyi.errors import InvalidInput
from belyi.fields import QQ, PrimeField
from belyi.poly import (
    PolyRing,
    Polynomial,
    discriminant,
    gcd,
    is_squarefree,
    lcm,
    multiplicity,
    pth_root,
    resultant,
    squarefree_part,
    xgcd,
)
from strategies import F5, fp_polys, qq_polys

X = sympy.Symbol("x")
x = Polynomial.x(QQ)


def to_sympy(p: Polynomial, modulus: int | None = None):
    cs = [int(c.v) if modulus else sympy.Rational(c.numerator, c.denominator) for c in p.coeffs]
    expr = sum(c * X**i for i, c in enumerate(cs))
    if modulus:
        return sympy.Poly(expr, X, modulus=modulus)
    return sympy.Poly(expr, X, domain="QQ")


def sylvester_det(a: list, b: list, modulus: int | None = None):
    """Determinant of the Sylvester matrix; coefficient lists are highest-first."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = [[0] * i + a + [0] * (size - m - 1 - i) for i in range(n)]
    rows += [[0] * i + b + [0] * (size - n - 1 - i) for i in range(m)]
    d = sympy.Matrix(rows).det()
    return int(d) % modulus if modulus else sympy.Rational(d)


def coeff_list(p: Polynomial) -> list:
    if getattr(p.ring, "characteristic", 0):
        return [int(c.v) for c in reversed(p.coeffs)]
    return [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)]


class TestArithmetic:
    def test_repr_and_degree(self):
        p = x**2 - 2
        assert p.degree == 2
        assert p.lc == 1
        assert Polynomial._raw(QQ, []).degree == -1

    def test_divmod_roundtrip(self):
        a = x**5 + 3 * x**2 - 7
        b = 2 * x**2 + 1
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree

    def test_exquo_rejects_inexact(self):
        with pytest.raises(Exception):
            (x**2 + 1).exquo(x - 1)

    def test_compose_and_shift(self):
        f = x**3 - x
        assert f.compose(x + 2) == f.taylor_shift(2)
        assert f.compose(x**2).degree == 6

    @given(qq_polys(1, 4), qq_polys(1, 4))
    def test_compose_degree(self, f, g):
        assert f.compose(g).degree == f.degree * g.degree

    @given(qq_polys(0, 5), qq_polys(1, 4))
    def test_division_invariant(self, a, b):
        q, r = divmod(a, b)
        assert q * b + r == a and r.degree < b.degree

    @given(qq_polys(0, 5), qq_polys(0, 5))
    def test_product_matches_sympy(self, a, b):
        assert to_sympy(a * b) == to_sympy(a) * to_sympy(b)


class TestResultant:
    def test_convention_examples(self):
        R = PolyRing(QQ)
        X_ = Polynomial.x(QQ)
        y = Polynomial._raw(R, [R(0), R(1)])
        two_y = y * 2
        H = Polynomial._raw(R, [R(-2) - X_, R(0), R(1)])
        assert resultant(two_y, H) == -4 * X_ - 8
        assert resultant(x - 2, x - 5) == -3

    def test_discriminant(self):
        assert discriminant(x**2 - 2) == 8

    @given(qq_polys(1, 4), qq_polys(1, 4))
    def test_matches_sylvester_qq(self, a, b):
        want = sylvester_det(coeff_list(a), coeff_list(b))
        assert Fraction(resultant(a, b)) == Fraction(int(want.p), int(want.q))

    @given(fp_polys(F5, 1, 4), fp_polys(F5, 1, 4))
    def test_matches_sylvester_f5(self, a, b):
        assert int(resultant(a, b).v) == sylvester_det(coeff_list(a), coeff_list(b), 5)

    @settings(max_examples=250)
    @given(qq_polys(1, 4), qq_polys(1, 4), st.booleans(), qq_polys(1, 2))
    def test_zero_iff_common_factor_qq(self, a, b, force, h):
        if force:
            a, b = a * h, b * h
        assert (resultant(a, b) == 0) == (gcd(a, b).degree > 0)

    @settings(max_examples=250)
    @given(fp_polys(F5, 1, 4), fp_polys(F5, 1, 4), st.booleans(), fp_polys(F5, 1, 2))
    def test_zero_iff_common_factor_f5(self, a, b, force, h):
        if force:
            a, b = a * h, b * h
        assert (not resultant(a, b)) == (gcd(a, b).degree > 0)

    @given(qq_polys(1, 3), qq_polys(1, 3), qq_polys(1, 3))
    def test_multiplicative(self, a, b, c):
        assert resultant(a * b, c) == resultant(a, c) * resultant(b, c)


class TestGcd:
    @given(qq_polys(0, 5), qq_polys(0, 5))
    def test_gcd_matches_sympy(self, a, b):
        if not a and not b:
            return
        assert to_sympy(gcd(a, b)).monic() == sympy.gcd(to_sympy(a), to_sympy(b)).monic()

    @given(qq_polys(0, 4), qq_polys(1, 4))
    def test_xgcd_bezout(self, a, b):
        g, s, t = xgcd(a, b)
        assert s * a + t * b == g
        assert not (a % g) and not (b % g)

    @given(qq_polys(1, 3), qq_polys(1, 3))
    def test_lcm_gcd_product(self, a, b):
        assert (lcm(a, b) * gcd(a, b)).monic() == (a * b).monic()


class TestSquarefree:
    def test_examples(self):
        assert squarefree_part((x - 1) ** 2 * (x + 2)) == (x - 1) * (x + 2)
        assert is_squarefree(x**2 - 2)
        assert multiplicity((x - 1) ** 3 * x, x - 1) == 3

    def test_char_p_pth_power(self):
        F3 = PrimeField(3)
        y = Polynomial.x(F3)
        f = (y**3 + 1) * (y + 2)  # (y + 1)^3 (y + 2)
        assert squarefree_part(f) == (y + 1) * (y + 2)
        assert pth_root(y**6 + 2 * y**3 + 1) == y**2 + 2 * y + 1

    @given(qq_polys(1, 3), qq_polys(1, 3))
    def test_squarefree_roots_qq(self, a, b):
        f = a * a * b
        s = squarefree_part(f)
        assert is_squarefree(s)
        assert f % s == Polynomial._raw(QQ, [])
        assert (s**f.degree) % f == Polynomial._raw(QQ, [])

    @given(fp_polys(F5, 1, 3), fp_polys(F5, 1, 3))
    def test_squarefree_f5(self, a, b):
        f = a**5 * b
        s = squarefree_part(f)
        assert is_squarefree(s)
        assert not (f % s)
        assert not ((s**f.degree) % f)


def test_float_coefficients_rejected():
    with pytest.raises((InvalidInput, TypeError)):
        Polynomial([0.5, 1], QQ)
