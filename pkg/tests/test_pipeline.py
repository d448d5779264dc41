from __future__ import annotations

import copy
import json
import random
from fractions import Fraction

import pytest

from belyi.errors import InvalidInput, ResourceLimit
from belyi.fields import QQ, PrimeField
from belyi.orbits import OrbitSet
from belyi.pinning import pin_map
from belyi.poly import Polynomial
from belyi.ratfunc import INF, RationalFunction
from belyi.pipeline import (
    construct_tame,
    construct_wild,
    cover_family,
    defect_branch_check,
    family_checks,
    preimage_count_check,
    random_stable_set,
    shortcut_check,
    verify_artifact,
    zero_one_inf,
)
from belyi.stages import CompositionChain, FactoredStage, PolyStage, branch_locus_by_discriminant

x = Polynomial.x(QQ)
F2 = PrimeField(2)
y = Polynomial.x(F2)

TAME_CHECKS = {
    "inputs_disjoint",
    "T_nonempty",
    "degree_product",
    "branch_locus_is_0_1_inf",
    "S_ramified",
    "T_avoids_0_1_inf",
    "pin_log_derivative_identity",
    "pin_residue_sum_zero",
    "pin_p_adic_certificate",
}


def roundtrip(obj):
    return json.loads(json.dumps(obj))


@pytest.fixture(scope="module")
def tame():
    return construct_tame(OrbitSet(x**2 - 2), OrbitSet(x))


@pytest.fixture(scope="module")
def wild():
    return construct_wild(OrbitSet(y), OrbitSet(y - 1))


class TestTame:
    def test_certificate(self, tame):
        cert = tame.certificate
        assert {n for n, _ in cert.checks} == TAME_CHECKS
        assert cert.passed
        assert cert.branch_locus == zero_one_inf(QQ)
        assert [o for o, _ in cert.ramification] == [OrbitSet(x**2 - 2)]
        assert all(e >= 2 for _, e in cert.ramification)

    def test_verify_roundtrip(self, tame):
        ok, checks = verify_artifact(roundtrip(tame.to_json()))
        assert ok, checks

    def test_perturbed_exponent_fails(self, tame):
        art = copy.deepcopy(roundtrip(tame.to_json()))
        factored = [s for s in art["chain"]["stages"] if s["kind"] == "factored"][0]
        factored["data"][0][1] = str(int(factored["data"][0][1]) + 2)
        ok, checks = verify_artifact(art)
        assert not ok
        assert not dict(checks)["pin_log_derivative_identity"]

    def test_tampered_claim_fails(self, tame):
        art = roundtrip(tame.to_json())
        art["certificate"]["degree"] = "7"
        ok, checks = verify_artifact(art)
        assert not ok and not dict(checks)["claims_reproduced"]

    @pytest.mark.parametrize("S,T", [(OrbitSet(x), OrbitSet(x)), (OrbitSet(x - 1, True), OrbitSet(x - 1))])
    def test_overlapping_inputs_rejected(self, S, T):
        with pytest.raises(InvalidInput):
            construct_tame(S, T)

    def test_empty_T_is_augmented(self):
        c = construct_tame(OrbitSet(x), OrbitSet.empty(QQ))
        assert c.certificate.passed
        assert not c.T.is_empty() and c.T.disjoint(OrbitSet(x))

    def test_small_degree_agrees_with_expansion(self):
        c = construct_tame(OrbitSet.from_points([Fraction(1, 2)], QQ), OrbitSet(x - 3))
        if c.chain.total_degree <= 40:
            F = c.chain.expand()
            assert branch_locus_by_discriminant(F).issubset(zero_one_inf(QQ))


class TestWild:
    def test_example(self, wild):
        cert = wild.certificate
        assert cert.passed
        assert cert.branch_locus == OrbitSet.infinity(F2)
        assert dict((o, e) for o, e in cert.ramification)[OrbitSet(y)] >= 2
        assert wild.chain(F2(1)) is not INF

    def test_verify_roundtrip(self, wild):
        ok, checks = verify_artifact(roundtrip(wild.to_json()))
        assert ok, checks

    def test_rejects_char_zero(self):
        with pytest.raises(InvalidInput):
            construct_wild(OrbitSet(x), OrbitSet(x - 1))

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_prime_fields(self, p):
        F = PrimeField(p)
        z = Polynomial.x(F)
        c = construct_wild(OrbitSet(z * (z - 1)), OrbitSet.infinity(F))
        assert c.certificate.passed
        ok, _ = verify_artifact(roundtrip(c.to_json()))
        assert ok


class TestFamilies:
    def test_wild_family_char2(self):
        S = OrbitSet(y)
        fam = cover_family(S, 2, wild=True)
        assert len(fam) == 3
        checks = dict(family_checks(S, fam, samples=20))
        assert all(checks.values()), checks

    def test_tame_family_hits_resource_limit(self):
        with pytest.raises(ResourceLimit):
            cover_family(OrbitSet(x * (x - 1)), 1)

    def test_n_must_be_positive(self):
        with pytest.raises(InvalidInput):
            cover_family(OrbitSet(x), 0)

    @pytest.mark.parametrize("field", [QQ, PrimeField(3)])
    def test_random_stable_set(self, field):
        z = Polynomial.x(field)
        S = OrbitSet(z, True)
        rng = random.Random(1)
        for n in (1, 2, 3):
            T = random_stable_set(S, n, rng)
            assert T.cardinality == n and T.disjoint(S)


@pytest.fixture(scope="module")
def a2():
    pin = pin_map([0, 2], 1)
    return CompositionChain(QQ, (FactoredStage(pin.f, QQ),))


class TestDegreeIdentity:
    def test_preimage_count(self, a2):
        res = preimage_count_check(a2)
        assert (res.count, res.degree) == (38, 36)
        assert res.passed

    def test_defect_check(self, a2):
        d = defect_branch_check(a2.expand())
        assert d["only_0_1_inf"] and d["total_defect"] == 70
        assert d["preimage_count"] == 38

    def test_defect_detects_extra_branch(self):
        d = defect_branch_check(RationalFunction(x**3 - 3 * x))
        assert not d["only_0_1_inf"]

    def test_shortcut(self):
        c = CompositionChain(QQ, (PolyStage(x**2 * (3 - 2 * x)),))
        fibre = OrbitSet.from_points([0, Fraction(3, 2), 1, Fraction(-1, 2), INF], QQ)
        assert shortcut_check(fibre, c) is True
        assert shortcut_check(OrbitSet(x * (x - 1), True), c) is False

    def test_shortcut_rejects_non_belyi(self):
        c = CompositionChain(QQ, (PolyStage(x**3 - 3 * x),))
        with pytest.raises(InvalidInput):
            shortcut_check(OrbitSet(x), c)
