"""End-to-end constructions and the certification engine.

``construct_tame`` builds, over the rationals, a chain
    simple-pole map -> Moebius normalizations -> critical-value polynomials
    -> integerizing Moebius maps -> factored pinning map
whose composite is branched exactly over {0, 1, inf}, ramified on S and maps
T away from {0, 1, inf}.  ``construct_wild`` is the characteristic-p analogue
with branch locus {inf}.  Certificates are recomputed from the chain and the
inputs alone, so ``verify`` can replay them from a JSON artifact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .descent import reduce_to_rationals
from .errors import InvalidInput, ResourceLimit
from .extension import QElem
from .fields import QQ
from .moebius import MoebiusMap, integerize
from .orbits import OrbitSet, pushforward
from .pinning import FactoredValue, augment, choose_prime, log_derivative_identity_holds, pin_map
from .poly import Polynomial, gcd, squarefree_part
from .ratfunc import INF, RationalFunction
from .rr import augment_T, simple_pole_map
from .serialize import point_to_json
from .stages import (
    DEFAULT_EXPAND_THRESHOLD,
    CompositionChain,
    FactoredStage,
    MoebiusStage,
    PolyStage,
    rf_branch,
    rf_local,
    stage_from_rational_function,
)
from .wild import wild_pin_map


@dataclass
class BelyiCertificate:
    kind: str  # "tame" or "wild"
    branch_locus: OrbitSet
    ramification: list  # [(OrbitSet component, index)]
    image_T: list  # [(OrbitSet component, value)]
    degree: int
    checks: list = dc_field(default_factory=list)  # [(name, bool)]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def check(self, name: str) -> bool:
        for n, ok in self.checks:
            if n == name:
                return ok
        raise KeyError(name)

    def to_json(self) -> dict:
        f = self.branch_locus.field
        return {
            "kind": self.kind,
            "branch": self.branch_locus.to_json(),
            "ram": [{"orbit": o.to_json(), "index": i} for o, i in self.ramification],
            "imageT": [{"orbit": o.to_json(), "value": point_to_json(f, v)} for o, v in self.image_T],
            "degree": str(self.degree),
            "checks": [{"name": n, "pass": ok} for n, ok in self.checks],
        }


@dataclass
class Construction:
    chain: CompositionChain
    certificate: BelyiCertificate
    S: OrbitSet
    T: OrbitSet  # after augmentation
    pin: dict | None = None

    def to_json(self) -> dict:
        out = {
            "chain": self.chain.to_json(),
            "inputs": {"S": self.S.to_json(), "T": self.T.to_json()},
            "certificate": self.certificate.to_json(),
        }
        if self.pin is not None:
            out["pin"] = self.pin
        return out


def zero_one_inf(field) -> OrbitSet:
    x = Polynomial.x(field)
    return OrbitSet(x * (x - 1), True)


# -- value tests --------------------------------------------------------------


def _scalar(v):
    if isinstance(v, QElem) and not any(v.c[1:]):
        return v.c[0]
    return v


def _nowhere_equal(v, t) -> bool:
    """v differs from the constant t at every point of its orbit."""
    if isinstance(v, QElem):
        d = v - t
        if not d:
            return False
        return gcd(d.ring.modulus, d.poly()).degree == 0
    return v != t


def avoids(v, targets, field) -> bool:
    """Exact test that a tracked value avoids every target (a subset of {0, 1, INF})."""
    if v is INF:
        return INF not in targets
    if isinstance(v, FactoredValue):
        bases = tuple(_scalar(b) for b in v.bases)
        if any(isinstance(b, QElem) for b in bases):
            raise ResourceLimit("avoidance test for an algebraic factored value")
        fv = FactoredValue(bases, v.exponents)
        if fv.is_zero():
            return field.zero not in targets
        if fv.is_infinite():
            return INF not in targets
        return not (field.one in targets and fv.is_one())
    for t in targets:
        if t is INF:
            continue
        if not _nowhere_equal(v, t):
            return False
    return True


# -- construction drivers ------------------------------------------------------


def construct_tame(S: OrbitSet, T: OrbitSet, *, threshold: int = DEFAULT_EXPAND_THRESHOLD) -> Construction:
    """A Belyi map over QQ ramified on S with T mapped away from {0, 1, inf}."""
    if S.field != QQ or T.field != QQ:
        raise InvalidInput("construct_tame works over the rationals")
    if not S.disjoint(T):
        raise InvalidInput("S and T are not disjoint")
    T = augment_T(S, T)
    phi1 = simple_pole_map(S, T)
    A = pushforward(phi1, S).union(rf_branch(phi1))
    assert not A.at_infinity
    red = reduce_to_rationals(A, INF)
    maps, B_int, beta = integerize(list(red.B), red.beta)
    B_aug = augment(B_int, beta)
    pin = pin_map(B_aug, beta)
    stages = [stage_from_rational_function(phi1)]
    stages += [MoebiusStage(m) for m in red.moebius if not m.is_identity()]
    stages += [PolyStage(f) for f in red.polys]
    stages += [MoebiusStage(m) for m in maps]
    stages.append(FactoredStage(pin.f, QQ))
    chain = CompositionChain(QQ, tuple(stages))
    pin_json = {"beta": str(pin.beta), "p": str(pin.p), "c": str(pin.c)}
    cert = certify(chain, S, T, "tame", pin_json, threshold=threshold)
    return Construction(chain, cert, S, T, pin_json)


def construct_wild(S: OrbitSet, T: OrbitSet, *, threshold: int = DEFAULT_EXPAND_THRESHOLD) -> Construction:
    """A map over a finite field branched only over inf, ramified on S, T finite."""
    field = S.field
    if field.characteristic == 0:
        raise InvalidInput("construct_wild needs a finite field")
    if not S.disjoint(T):
        raise InvalidInput("S and T are not disjoint")
    T = augment_T(S, T)
    phi1 = simple_pole_map(S, T)
    A = pushforward(phi1, S).union(rf_branch(phi1))
    assert not A.at_infinity
    inv = MoebiusMap(0, 1, 1, 0, field)
    B = inv.pushforward(A)
    wp = wild_pin_map(B)
    stages = (
        stage_from_rational_function(phi1),
        MoebiusStage(inv),
        stage_from_rational_function(wp.g),
        PolyStage(wp.outer),
    )
    chain = CompositionChain(field, stages)
    cert = certify(chain, S, T, "wild", None, threshold=threshold)
    return Construction(chain, cert, S, T, None)


# -- certification ---------------------------------------------------------------


def certify(
    chain: CompositionChain,
    S: OrbitSet,
    T: OrbitSet,
    kind: str,
    pin: dict | None = None,
    *,
    threshold: int = DEFAULT_EXPAND_THRESHOLD,
) -> BelyiCertificate:
    field = chain.field
    checks: list[tuple[str, bool]] = []
    checks.append(("inputs_disjoint", S.disjoint(T)))
    checks.append(("T_nonempty", not T.is_empty()))

    degree = 1
    for s in chain.stages:
        degree *= s.degree
    checks.append(("degree_product", degree == chain.total_degree and degree >= 1))

    # A claim that cannot be checked without exceeding the threshold fails.
    target = zero_one_inf(field) if kind == "tame" else OrbitSet.infinity(field)
    try:
        br = chain.branch_locus(threshold)
    except ResourceLimit:
        br = None
    checks.append(("branch_locus_is_0_1_inf" if kind == "tame" else "branch_locus_is_inf", br == target))

    try:
        ram = chain.ramification(S) if not S.is_empty() else []
        ok_S = all(i >= 2 for _, i in ram)
    except ResourceLimit:
        ram, ok_S = [], False
    checks.append(("S_ramified", ok_S))

    tgt_pts = [field.zero, field.one, INF] if kind == "tame" else [INF]
    try:
        image = [(tp.component(field), _scalar(tp.value)) for tp in chain.track(T)]
        try:
            ok_T = all(avoids(v, tgt_pts, field) for _, v in image)
        except ResourceLimit:
            ok_T = _avoid_by_expansion(chain, T, target, threshold)
    except ResourceLimit:
        image, ok_T = [], False
    checks.append(("T_avoids_0_1_inf" if kind == "tame" else "T_avoids_inf", ok_T))
    if br is None:
        br = OrbitSet.empty(field)

    if kind == "tame":
        checks.extend(_pin_checks(chain, pin))
    else:
        checks.extend(_wild_checks(chain))

    if chain.total_degree <= threshold:
        checks.append(("expanded_cross_check", _expanded_cross_check(chain, br, S, ram, threshold)))

    return BelyiCertificate(kind, br, ram, image, chain.total_degree, checks)


def _avoid_by_expansion(chain, T, target, threshold) -> bool:
    F = chain.expand(threshold)
    from .orbits import preimage

    return preimage(F, target).disjoint(T)


def _pin_checks(chain: CompositionChain, pin: dict | None) -> list[tuple[str, bool]]:
    last = chain.stages[-1]
    if not isinstance(last, FactoredStage) or pin is None:
        return [("pin_stage_present", False)]
    f = last.f
    try:
        c = int(pin["c"])
        beta = int(pin["beta"])
        p = int(pin["p"])
    except (KeyError, TypeError, ValueError):
        return [("pin_data_wellformed", False)]
    out = [("pin_log_derivative_identity", log_derivative_identity_holds(f, c))]
    out.append(("pin_residue_sum_zero", sum(f.exponents) == 0))
    roots = list(f.roots)
    ok = beta not in roots and len(roots) >= 3
    if ok:
        B = roots[:-1]
        ok = choose_prime(B, beta) == p and roots[-1] == beta + p
    if ok:
        v = f.evaluate(beta).valuation(p)
        ok = v == f.exponents[-1] and v != 0
    out.append(("pin_p_adic_certificate", ok))
    # the chain must carry T to beta through the stages before the pin map
    return out


def _wild_checks(chain: CompositionChain) -> list[tuple[str, bool]]:
    stages = chain.stages
    if len(stages) < 2 or not isinstance(stages[-1], PolyStage):
        return [("artin_schreier_shape", False)]
    p = chain.field.characteristic
    x = Polynomial.x(chain.field)
    outer = stages[-1].f
    out = [("artin_schreier_shape", outer == x**p + x)]
    g = stages[-2].rational_function()
    f = g**p + g
    out.append(("artin_schreier_derivative", f.derivative() == g.derivative()))
    dg = g.derivative()
    out.append(("g_derivative_no_finite_zeros", dg.num.degree == 0 and bool(dg.num)))
    return out


def _expanded_cross_check(chain, br, S, ram, threshold) -> bool:
    from .stages import fiber_multiplicity

    F = chain.expand(threshold)
    if rf_branch(F) != br:
        return False
    for comp, idx in ram:
        if comp.finite_part.degree == 1 and not comp.at_infinity:
            pt = -comp.finite_part.coeffs[0]
            if fiber_multiplicity(F, pt) != idx:
                return False
        if comp.at_infinity and comp.finite_part.degree == 0:
            if rf_local(F, INF)[1] != idx:
                return False
    return True


# -- families, shortcut and degree identity ---------------------------------------


@dataclass
class FamilyMember:
    construction: Construction
    fibre: OrbitSet  # preimage of the target branch values
    T_i: OrbitSet
    new_points: OrbitSet  # T_i minus T_{i-1}


def cover_family(
    S: OrbitSet, n: int, *, wild: bool = False, threshold: int = DEFAULT_EXPAND_THRESHOLD
) -> list[FamilyMember]:
    """n + 1 maps whose exceptional fibres outside S are pairwise disjoint.

    Each T_i adds the fibre of the i-th map over its branch values (minus S)
    to T_{i-1}; that fibre has degree + 2 points in the tame case, so it must
    be materialized and raises :class:`ResourceLimit` above ``threshold``.
    """
    if n < 1:
        raise InvalidInput("n must be at least 1")
    field = S.field
    targets = OrbitSet.infinity(field) if wild else zero_one_inf(field)
    T_prev = OrbitSet.empty(field)
    out = []
    for _ in range(n + 1):
        if wild:
            cons = construct_wild(S, T_prev, threshold=threshold)
        else:
            cons = construct_tame(S, T_prev, threshold=threshold)
        fibre = cons.chain.preimage(targets, threshold)
        T_i = T_prev.union(fibre.difference(S))
        out.append(FamilyMember(cons, fibre, T_i, T_i.difference(T_prev)))
        T_prev = T_i
    return out


def family_checks(S: OrbitSet, family: list[FamilyMember], samples: int = 50, seed: int = 0) -> list[tuple[str, bool]]:
    checks = [("members_certified", all(m.construction.certificate.passed for m in family))]
    diffs = [m.new_points for m in family]
    disjoint = all(diffs[i].disjoint(diffs[j]) for i in range(len(diffs)) for j in range(i + 1, len(diffs)))
    checks.append(("difference_sets_disjoint", disjoint))
    checks.append(("S_maps_into_branch_values", all(_S_in_fibre(S, m) for m in family)))
    checks.append(("coverage_sampled", coverage_sample(S, family, samples, seed)))
    return checks


def _S_in_fibre(S: OrbitSet, m: FamilyMember) -> bool:
    return S.issubset(m.fibre)


def coverage_sample(S: OrbitSet, family: list[FamilyMember], samples: int = 50, seed: int = 0) -> bool:
    """For random n-point Galois-stable T disjoint from S, some member's fibre misses T."""
    rng = random.Random(seed)
    n = len(family) - 1
    for _ in range(samples):
        T = random_stable_set(S, n, rng)
        if not any(T.disjoint(m.fibre) for m in family):
            return False
    return True


def random_stable_set(S: OrbitSet, n: int, rng: random.Random) -> OrbitSet:
    """A random Galois-stable set of exactly n points disjoint from S."""
    field = S.field
    for _ in range(10_000):
        if field.characteristic == 0:
            pts = {Fraction(rng.randint(-1000, 1000), rng.randint(1, 50)) for _ in range(n)}
            if len(pts) < n:
                continue
            T = OrbitSet.from_points(sorted(pts), field)
        else:
            with_inf = not S.at_infinity and rng.random() < 0.2
            k = n - 1 if with_inf else n
            elems = list(field.elements())
            cs = [elems[rng.randrange(len(elems))] for _ in range(k)] + [field.one]
            f = Polynomial._raw(field, cs)
            if f.degree > 0 and squarefree_part(f).degree != k:
                continue
            T = OrbitSet(f.monic(), with_inf)
        if T.cardinality == n and T.disjoint(S):
            return T
    raise ResourceLimit("could not sample a set outside S")


def shortcut_check(S: OrbitSet, chain: CompositionChain, threshold: int = DEFAULT_EXPAND_THRESHOLD) -> bool:
    """True iff the chain's preimage of its branch locus {0, 1, inf} is exactly S."""
    target = zero_one_inf(chain.field)
    if chain.branch_locus(threshold) != target:
        raise InvalidInput("chain is not a certified Belyi map")
    return chain.preimage(target, threshold) == S


@dataclass(frozen=True)
class PreimageCount:
    count: int
    degree: int

    @property
    def passed(self) -> bool:
        return self.count == self.degree + 2


def preimage_count_check(chain: CompositionChain, threshold: int = DEFAULT_EXPAND_THRESHOLD) -> PreimageCount:
    br = chain.branch_locus(threshold)
    if br.cardinality != 3:
        raise InvalidInput(f"branch locus has {br.cardinality} points, expected 3")
    return PreimageCount(chain.preimage(br, threshold).cardinality, chain.total_degree)


def defect_branch_check(F: RationalFunction) -> dict:
    """Branch data over {0, 1, inf} from squarefree defects of P, P - Q and Q.

    Riemann-Hurwitz at genus 0 says the defects (plus the defect at infinity)
    sum to 2d - 2 exactly when no other point is branched.
    """
    P, Q = F.num, F.den
    d = F.degree

    def defect(h: Polynomial) -> int:
        return h.degree - squarefree_part(h).degree if h.degree > 0 else 0

    def distinct(h: Polynomial) -> int:
        return squarefree_part(h).degree if h.degree > 0 else 0

    v_inf, e_inf = rf_local(F, INF)
    total = defect(P) + defect(P - Q) + defect(Q) + (e_inf - 1)
    inf_in_fibre = v_inf is INF or v_inf == 0 or v_inf == 1
    return {
        "0": defect(P) > 0 or (v_inf == 0 and e_inf > 1),
        "1": defect(P - Q) > 0 or (v_inf == 1 and e_inf > 1),
        "inf": defect(Q) > 0 or (v_inf is INF and e_inf > 1),
        "total_defect": total,
        "only_0_1_inf": total == 2 * d - 2,
        "preimage_count": distinct(P) + distinct(P - Q) + distinct(Q) + (1 if inf_in_fibre else 0),
    }


def verify_artifact(obj: dict, threshold: int = DEFAULT_EXPAND_THRESHOLD) -> tuple[bool, list[tuple[str, bool]]]:
    """Recompute every check of a serialized construction.

    Returns (ok, checks); ok also requires the stored claims to match.
    """
    from .serialize import chain_from_json

    if not isinstance(obj, dict) or "chain" not in obj or "certificate" not in obj or "inputs" not in obj:
        raise InvalidInput("artifact needs chain, inputs and certificate")
    chain = chain_from_json(obj["chain"])
    field = chain.field
    try:
        S = OrbitSet.from_json(obj["inputs"]["S"], field)
        T = OrbitSet.from_json(obj["inputs"]["T"], field)
        kind = obj["certificate"]["kind"]
    except (KeyError, TypeError) as exc:
        raise InvalidInput("artifact inputs are malformed") from exc
    if kind not in ("tame", "wild"):
        raise InvalidInput(f"unknown certificate kind {kind!r}")
    cert = certify(chain, S, T, kind, obj.get("pin"), threshold=threshold)
    recomputed = cert.to_json()
    claims_match = recomputed == obj["certificate"]
    checks = list(cert.checks) + [("claims_reproduced", claims_match)]
    return all(ok for _, ok in checks), checks
