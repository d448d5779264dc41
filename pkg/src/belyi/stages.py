"""Map stages, composition chains and the branch/ramification engine.

A chain is a list of stages applied first to last.  Nothing is expanded
unless explicitly requested: the branch locus of a chain is obtained by
folding br(g o h) = br(g) u g(br(h)) over the stages, and ramification
indices are multiplied along the path of a point.

Algebraic points are handled generically.  A Galois orbit with minimal
polynomial g is represented by the class of y in K[y]/(g); every value along
the chain is an element of that ring.  When a test is zero on only part of
the orbit (a zero divisor), the orbit is split along the corresponding factor
of g and both parts are followed separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .errors import InvalidInput, NotInvertible, ResourceLimit
from .extension import QElem, QuotientRing
from .fields import QQ
from .moebius import MoebiusMap
from .orbits import OrbitSet, preimage, pushforward
from .pinning import FactoredRational, FactoredValue
from .poly import Polynomial, PolyRing, gcd, is_squarefree, resultant, squarefree_part
from .ratfunc import INF, RationalFunction, compose

DEFAULT_EXPAND_THRESHOLD = 10_000
# factored values with total exponent weight up to this are multiplied out
_SMALL_FACTORED = 256


# -- helpers on generic points ------------------------------------------------


def _check_split(z: QElem) -> bool:
    """True if z is zero; raise NotInvertible when z vanishes on part of the orbit."""
    if not z:
        return True
    g = gcd(z.ring.modulus, z.poly())
    if g.degree > 0:
        raise NotInvertible(g)
    return False


def _lift(P: Polynomial, ring) -> Polynomial:
    return Polynomial._raw(ring, [ring(c) for c in P.coeffs])


def _eval(P: Polynomial, gamma: QElem) -> QElem:
    return gamma.ring(P(gamma)) if P.degree > 0 else gamma.ring(P[0])


def _order_at(N: Polynomial, gamma: QElem) -> int:
    """Multiplicity of x - gamma in N (a polynomial over gamma's ring)."""
    k = 0
    while True:
        # synthetic division by x - gamma
        cs = N.coeffs
        if not cs:
            raise AssertionError("order of the zero polynomial")
        acc = cs[-1]
        q = [acc]
        for c in reversed(cs[:-1]):
            acc = acc * gamma + c
            q.append(acc)
        rem = q.pop()
        if not _check_split(rem):
            return k
        k += 1
        N = Polynomial._raw(N.ring, q[::-1])


def rf_local(F: RationalFunction, gamma):
    """(F(gamma), e_gamma(F)) for gamma = INF or an element of a quotient ring."""
    P, Q = F.num, F.den
    if gamma is INF:
        dp, dq = P.degree, Q.degree
        if dp > dq:
            return INF, dp - dq
        if dp < dq:
            return F.ring.zero, dq - dp
        v0 = P.lc / Q.lc
        N = P - Q * v0
        return v0, dp - N.degree
    ring = gamma.ring
    q = _eval(Q, gamma)
    if _check_split(q):
        return INF, _order_at(_lift(Q, ring), gamma)
    pg = _eval(P, gamma)
    N = _lift(P, ring) * q - _lift(Q, ring) * pg
    return pg / q, _order_at(N, gamma)


def rf_branch(F: RationalFunction) -> OrbitSet:
    """Branch values of F via the Wronskian P'Q - PQ' (valid in every characteristic)."""
    field = F.ring
    if F.is_constant():
        raise InvalidInput("constant stage")
    W = F.wronskian()
    if not W:
        raise InvalidInput("inseparable stage: every point is ramified")
    Q = F.den
    out = OrbitSet.empty(field)
    if W.degree > 0:
        crit = squarefree_part(W)
        crit = crit.exquo(gcd(crit, Q)).monic()
        if crit.degree > 0:
            out = pushforward(F, OrbitSet(crit))
    if Q.degree > 1 and not is_squarefree(Q):
        out = out.union(OrbitSet.infinity(field))
    v, e = rf_local(F, INF)
    if e >= 2:
        out = out.union(OrbitSet.from_points([v], field))
    return out


def branch_locus_by_discriminant(F: RationalFunction) -> OrbitSet:
    """Independent oracle: finite branch values are the roots of
    res_y(H, dH/dy) for H = P(y) - v Q(y), with the degree-drop value handled
    separately; infinity is treated through the pole orders."""
    field = F.ring
    P, Q = F.num, F.den
    R = PolyRing(field)
    V = Polynomial.x(field)
    n = max(P.degree, Q.degree)
    H = Polynomial._raw(R, [R(P[i]) - V * Q[i] for i in range(n + 1)])
    Hy = H.derivative()
    if not Hy:
        raise InvalidInput("inseparable stage")
    r = resultant(H, Hy)
    if not isinstance(r, Polynomial):
        r = Polynomial.constant(r, field)
    out = OrbitSet.empty(field)
    v0 = None
    if P.degree == Q.degree:
        v0 = P.lc / Q.lc
    elif P.degree < Q.degree:
        v0 = field.zero
    if v0 is not None:
        lin = V - v0
        while r and not (r % lin):
            r = r.exquo(lin)
        spec = P - Q * v0
        repeated = spec.degree > 0 and not is_squarefree(spec)
        if repeated or rf_local(F, INF)[1] >= 2:
            out = out.union(OrbitSet.from_points([v0], field))
    if r.degree > 0:
        out = out.union(OrbitSet.from_polynomial(r))
    poles_repeated = Q.degree > 1 and not is_squarefree(Q)
    if poles_repeated or (P.degree > Q.degree + 1):
        out = out.union(OrbitSet.infinity(field))
    return out


# -- stages -------------------------------------------------------------------


class Stage:
    kind = "stage"
    field = QQ

    @property
    def degree(self) -> int:
        raise NotImplementedError

    def rational_function(self, threshold: int | None = None) -> RationalFunction:
        raise NotImplementedError

    def local(self, gamma):
        raise NotImplementedError

    def evaluate(self, pt):
        raise NotImplementedError

    def branch(self, threshold: int | None = None) -> OrbitSet:
        raise NotImplementedError

    def push(self, s: OrbitSet, threshold: int | None = None) -> OrbitSet:
        raise NotImplementedError

    def pull(self, s: OrbitSet, threshold: int | None = None) -> OrbitSet:
        return preimage(self.rational_function(threshold), s)

    def data_json(self):
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"kind": self.kind, "data": self.data_json()}


class _RFStage(Stage):
    """Shared behaviour of stages that are cheap rational functions."""

    def evaluate(self, pt):
        return self.rational_function()(pt)

    def local(self, gamma):
        return rf_local(self.rational_function(), gamma)

    def branch(self, threshold=None):
        return rf_branch(self.rational_function())

    def push(self, s, threshold=None):
        if s.is_empty():
            return s
        return pushforward(self.rational_function(), s)


class MoebiusStage(_RFStage):
    kind = "moebius"

    def __init__(self, m: MoebiusMap):
        self.m = m
        self.field = m.field
        self._rf = m.as_rational_function()

    @property
    def degree(self):
        return 1

    def rational_function(self, threshold=None):
        return self._rf

    def evaluate(self, pt):
        return self.m(pt)

    def branch(self, threshold=None):
        return OrbitSet.empty(self.field)

    def data_json(self):
        return self.m.to_json()

    def __repr__(self):
        return f"MoebiusStage({self.m!r})"


class PolyStage(_RFStage):
    kind = "poly"

    def __init__(self, f: Polynomial):
        if f.degree < 1:
            raise InvalidInput("polynomial stage must be nonconstant")
        self.f = f
        self.field = f.ring
        self._rf = RationalFunction(f)

    @property
    def degree(self):
        return self.f.degree

    def rational_function(self, threshold=None):
        return self._rf

    def evaluate(self, pt):
        return INF if pt is INF else self.f(pt)

    def data_json(self):
        return [self.field.to_json(c) for c in self.f.coeffs]

    def __repr__(self):
        return f"PolyStage({self.f})"


class ExplicitStage(_RFStage):
    kind = "explicit"

    def __init__(self, F: RationalFunction):
        if F.is_constant():
            raise InvalidInput("explicit stage must be nonconstant")
        self.F = F
        self.field = F.ring

    @property
    def degree(self):
        return self.F.degree

    def rational_function(self, threshold=None):
        return self.F

    def data_json(self):
        f = self.field
        return {"num": [f.to_json(c) for c in self.F.num.coeffs], "den": [f.to_json(c) for c in self.F.den.coeffs]}

    def __repr__(self):
        return f"ExplicitStage({self.F})"


class FactoredStage(Stage):
    """prod (x - b_i)^{e_i}, handled without expansion whenever possible."""

    kind = "factored"

    def __init__(self, f: FactoredRational, field=QQ):
        self.f = f
        self.field = field
        self._expanded = None

    @property
    def degree(self):
        return self.f.degree

    @property
    def char0(self) -> bool:
        return self.field.characteristic == 0

    def rational_function(self, threshold=DEFAULT_EXPAND_THRESHOLD):
        if threshold is not None and self.degree > threshold:
            raise ResourceLimit(f"factored stage of degree {self.degree} exceeds the expansion threshold")
        if self._expanded is None:
            num, den = self.f.numerator_denominator(self.field)
            self._expanded = RationalFunction(num, den)
        return self._expanded

    def _roots(self):
        return [self.field(b) for b in self.f.roots]

    def _distinct_roots(self) -> bool:
        r = self._roots()
        return len(set(r)) == len(r)

    def evaluate(self, pt):
        if pt is INF:
            if self.char0:
                return self.f.value_at_infinity()
            return self.rational_function()(INF)
        pt = self.field(pt)
        bases = tuple(pt - b for b in self._roots())
        for b, e in zip(bases, self.f.exponents):
            if not b:
                return self.field.zero if e > 0 else INF
        fv = FactoredValue(bases, self.f.exponents)
        if sum(abs(e) for e in self.f.exponents) <= _SMALL_FACTORED or not self.char0:
            return _expand_value(fv, self.field)
        return fv

    def local(self, gamma):
        f = self.f
        if gamma is INF:
            if self.char0:
                return f.value_at_infinity(), f.index_at_infinity()
            return rf_local(self.rational_function(), INF)
        if isinstance(gamma, FactoredValue):
            raise ResourceLimit("cannot continue past an unexpanded factored value")
        if not self.char0 or not self._distinct_roots():
            return rf_local(self.rational_function(), gamma)
        ring = gamma.ring
        diffs = []
        for b, e in zip(self._roots(), f.exponents):
            d = gamma - b
            if _check_split(d):
                return (ring.zero if e > 0 else INF), abs(e)
            diffs.append(d)
        L = f.log_derivative_numerator(self.field)
        if _check_split(_eval(L, gamma)):
            return rf_local(self.rational_function(), gamma)
        fv = FactoredValue(tuple(diffs), f.exponents)
        if sum(abs(e) for e in f.exponents) <= _SMALL_FACTORED:
            return _expand_value(fv, ring), 1
        return fv, 1

    def branch(self, threshold=DEFAULT_EXPAND_THRESHOLD):
        if not self.char0 or not self._distinct_roots():
            return rf_branch(self.rational_function(threshold))
        L = self.f.log_derivative_numerator(self.field)
        if L.degree != 0:
            return rf_branch(self.rational_function(threshold))
        pts = []
        if any(e >= 2 for e in self.f.exponents):
            pts.append(self.field.zero)
        if any(e <= -2 for e in self.f.exponents):
            pts.append(INF)
        if self.f.index_at_infinity() >= 2:
            pts.append(self.f.value_at_infinity())
        return OrbitSet.from_points(pts, self.field)

    def push(self, s, threshold=DEFAULT_EXPAND_THRESHOLD):
        if s.is_empty():
            return s
        if not self.char0 or not self._distinct_roots():
            return pushforward(self.rational_function(threshold), s)
        x = Polynomial.x(self.field)
        base = Polynomial.constant(1, self.field)
        for b in self._roots():
            base = base * (x - b)
        if base % s.finite_part:
            return pushforward(self.rational_function(threshold), s)
        pts = []
        for b, e in zip(self._roots(), self.f.exponents):
            if not s.finite_part(b):
                pts.append(self.field.zero if e > 0 else INF)
        if s.at_infinity:
            pts.append(self.f.value_at_infinity())
        return OrbitSet.from_points(pts, self.field)

    def pull(self, s, threshold=DEFAULT_EXPAND_THRESHOLD):
        return preimage(self.rational_function(threshold), s)

    def data_json(self):
        return self.f.to_json()

    def __repr__(self):
        return f"FactoredStage({list(zip(self.f.roots, self.f.exponents))})"


def _expand_value(fv: FactoredValue, ring):
    out = ring.one
    for b, e in zip(fv.bases, fv.exponents):
        out = out * b**e
    return out


def stage_from_rational_function(F: RationalFunction) -> Stage:
    if F.den.degree == 0:
        return PolyStage(F.num * (F.ring.one / F.den.lc))
    return ExplicitStage(F)


# -- chains -------------------------------------------------------------------


@dataclass(frozen=True)
class TrackedPoint:
    """A component of a source orbit (None for infinity), its current value
    along the chain, and the product of the indices so far."""

    orbit: Polynomial | None
    value: object
    index: int

    def restrict(self, factor: Polynomial) -> "TrackedPoint":
        ring = QuotientRing(self.orbit.ring, factor)

        def red(v):
            if v is INF:
                return INF
            if isinstance(v, FactoredValue):
                return FactoredValue(tuple(red(b) for b in v.bases), v.exponents)
            if isinstance(v, QElem):
                return ring.from_poly(v.poly())
            return v

        return TrackedPoint(factor, red(self.value), self.index)

    def component(self, field) -> OrbitSet:
        if self.orbit is None:
            return OrbitSet.infinity(field)
        return OrbitSet(self.orbit)


@dataclass(frozen=True)
class CompositionChain:
    field: object
    stages: tuple

    def __post_init__(self):
        stages = tuple(self.stages)
        if not stages:
            raise InvalidInput("empty chain")
        for s in stages:
            if s.field is not self.field and s.field != self.field:
                raise InvalidInput("stage over a different field than the chain")
        object.__setattr__(self, "stages", stages)

    @property
    def total_degree(self) -> int:
        return prod(s.degree for s in self.stages)

    @property
    def degree(self) -> int:
        return self.total_degree

    def evaluate(self, pt):
        for s in self.stages:
            if isinstance(pt, FactoredValue):
                raise ResourceLimit("cannot continue past an unexpanded factored value")
            pt = s.evaluate(pt)
        return pt

    __call__ = evaluate

    def expand(self, threshold: int | None = DEFAULT_EXPAND_THRESHOLD) -> RationalFunction:
        if threshold is not None and self.total_degree > threshold:
            raise ResourceLimit(f"chain degree {self.total_degree} exceeds the expansion threshold {threshold}")
        F = None
        for s in self.stages:
            G = s.rational_function(threshold)
            F = G if F is None else compose(G, F, threshold)
        return F

    def branch_locus(self, threshold: int | None = DEFAULT_EXPAND_THRESHOLD) -> OrbitSet:
        acc = OrbitSet.empty(self.field)
        for s in self.stages:
            acc = s.branch(threshold).union(s.push(acc, threshold))
        return acc

    def pushforward(self, a: OrbitSet, threshold: int | None = DEFAULT_EXPAND_THRESHOLD) -> OrbitSet:
        for s in self.stages:
            a = s.push(a, threshold)
        return a

    def preimage(self, b: OrbitSet, threshold: int | None = DEFAULT_EXPAND_THRESHOLD) -> OrbitSet:
        for s in reversed(self.stages):
            b = s.pull(b, threshold)
            if threshold is not None and b.cardinality > threshold + 2:
                raise ResourceLimit("preimage exceeds the expansion threshold")
        return b

    def track(self, a: OrbitSet) -> list[TrackedPoint]:
        """Follow every point of a through the chain, splitting orbits on demand."""
        field = self.field
        pts: list[TrackedPoint] = []
        if a.finite_part.degree > 0:
            ring = QuotientRing(field, a.finite_part)
            pts.append(TrackedPoint(a.finite_part, ring.gen(), 1))
        if a.at_infinity:
            pts.append(TrackedPoint(None, INF, 1))
        for s in self.stages:
            nxt: list[TrackedPoint] = []
            work = list(pts)
            while work:
                tp = work.pop(0)
                try:
                    v, e = s.local(tp.value)
                except NotInvertible as exc:
                    f1 = gcd(tp.orbit, exc.factor)
                    f2 = tp.orbit.exquo(f1).monic()
                    work[:0] = [tp.restrict(f1), tp.restrict(f2)]
                    continue
                if not (v is INF or isinstance(v, (QElem, FactoredValue))):
                    v = QuotientRing(field, Polynomial.x(field) - v).gen()
                nxt.append(TrackedPoint(tp.orbit, v, tp.index * e))
            pts = nxt
        return sorted(pts, key=_tp_key)

    def ramification(self, a: OrbitSet) -> list[tuple[OrbitSet, int]]:
        return [(tp.component(self.field), tp.index) for tp in self.track(a)]

    def ramification_index(self, pt) -> int:
        """Index at a base-field point or INF."""
        if pt is INF:
            s = OrbitSet.infinity(self.field)
        else:
            s = OrbitSet.from_points([pt], self.field)
        return min(i for _, i in self.ramification(s))

    def to_json(self) -> dict:
        return {"field": self.field.spec(), "stages": [s.to_json() for s in self.stages]}


def _tp_key(tp: TrackedPoint):
    if tp.orbit is None:
        return (1, ())
    return (0, (tp.orbit.degree, repr(tp.orbit)))


def chain_branch_locus(c: CompositionChain, threshold=DEFAULT_EXPAND_THRESHOLD) -> OrbitSet:
    return c.branch_locus(threshold)


def chain_ramification_index(c: CompositionChain, pt) -> int:
    if isinstance(pt, OrbitSet):
        return min(i for _, i in c.ramification(pt))
    return c.ramification_index(pt)


def stage_branch_data(s: Stage, threshold=DEFAULT_EXPAND_THRESHOLD) -> OrbitSet:
    return s.branch(threshold)


def fiber_multiplicity(F: RationalFunction, pt) -> int:
    """Ramification index of an expanded map at a base-field point (or INF),
    computed from multiplicities in the fiber polynomial."""
    from .poly import multiplicity

    field = F.ring
    if pt is INF:
        return rf_local(F, INF)[1]
    x = Polynomial.x(field)
    v = F(pt)
    lin = x - field(pt)
    if v is INF:
        return multiplicity(F.den, lin)
    return multiplicity(F.num - F.den * v, lin)


__all__ = [
    "CompositionChain",
    "DEFAULT_EXPAND_THRESHOLD",
    "ExplicitStage",
    "FactoredStage",
    "MoebiusStage",
    "PolyStage",
    "Stage",
    "TrackedPoint",
    "branch_locus_by_discriminant",
    "chain_branch_locus",
    "chain_ramification_index",
    "fiber_multiplicity",
    "rf_branch",
    "rf_local",
    "stage_branch_data",
    "stage_from_rational_function",
]
