"""The rational Belyi map prod (x - b_i)**(2 n_i) ramified over a set of integers.

With c = prod_{i != j} (b_i - b_j) and n_i = c / prod_{j != i} (b_j - b_i),
the logarithmic derivative of f is a constant multiple of 1/prod (x - b_j), so
f has no critical points outside the b_i and infinity.  Appending
delta = beta + p for a prime p not dividing any b - beta makes v_p(f(beta))
equal to 2 n_m, which certifies f(beta) != 1 without ever expanding f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput
from .fields import QQ
from .numtheory import coprime_base, integer_valuation, padic_valuation, primes
from .poly import Polynomial


@dataclass(frozen=True)
class FactoredRational:
    """prod (x - roots[i]) ** exponents[i] with distinct integer roots."""

    roots: tuple
    exponents: tuple

    def __post_init__(self):
        roots = tuple(int(b) for b in self.roots)
        exps = tuple(int(e) for e in self.exponents)
        if len(roots) != len(exps):
            raise InvalidInput("roots and exponents differ in length")
        if len(set(roots)) != len(roots):
            raise InvalidInput("factored map has repeated roots")
        if any(e == 0 for e in exps):
            raise InvalidInput("factored map has a zero exponent")
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "exponents", exps)

    @property
    def degree(self) -> int:
        pos = sum(e for e in self.exponents if e > 0)
        neg = -sum(e for e in self.exponents if e < 0)
        return max(pos, neg)

    @property
    def m(self) -> int:
        return len(self.roots)

    def numerator_denominator(self, field=QQ) -> tuple[Polynomial, Polynomial]:
        x = Polynomial.x(field)
        num = Polynomial.constant(1, field)
        den = Polynomial.constant(1, field)
        for b, e in zip(self.roots, self.exponents):
            if e > 0:
                num = num * (x - b) ** e
            else:
                den = den * (x - b) ** (-e)
        return num, den

    def log_derivative_numerator(self, field=QQ) -> Polynomial:
        """L = sum e_i prod_{j != i} (x - b_j), so f'/f = L / prod (x - b_j)."""
        x = Polynomial.x(field)
        acc = Polynomial._raw(field, [])
        for i, e in enumerate(self.exponents):
            term = Polynomial.constant(e, field)
            for j, b in enumerate(self.roots):
                if j != i:
                    term = term * (x - b)
            acc = acc + term
        return acc

    def value_at_infinity(self):
        s = sum(self.exponents)
        if s > 0:
            from .ratfunc import INF

            return INF
        if s < 0:
            return QQ(0)
        return QQ(1)

    def index_at_infinity(self) -> int:
        """Ramification index at infinity (characteristic zero).

        When the exponents sum to zero, f = exp(-sum_k p_k/(k x^k)) with power
        sums p_k = sum e_i b_i^k, so f - 1 vanishes at infinity to the order of
        the first nonzero p_k.
        """
        s = sum(self.exponents)
        if s:
            return abs(s)
        k = 1
        while True:
            pk = sum(e * b**k for b, e in zip(self.roots, self.exponents))
            if pk:
                return k
            k += 1
            if k > self.degree:
                raise AssertionError("nonconstant map with all power sums zero")

    def evaluate(self, t) -> "FactoredValue":
        t = QQ(t)
        return FactoredValue(tuple(t - b for b in self.roots), self.exponents)

    def to_json(self) -> list:
        return [[str(b), str(e)] for b, e in zip(self.roots, self.exponents)]

    @classmethod
    def from_json(cls, data) -> "FactoredRational":
        try:
            roots = [_int(b) for b, _ in data]
            exps = [_int(e) for _, e in data]
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed factored map: {data!r}") from exc
        return cls(tuple(roots), tuple(exps))


def _int(v) -> int:
    if isinstance(v, bool):
        raise ValueError("boolean")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        return int(v.strip())
    raise ValueError(f"not an integer: {v!r}")


@dataclass(frozen=True)
class FactoredValue:
    """prod bases[i] ** exponents[i] with rational bases, kept unexpanded."""

    bases: tuple
    exponents: tuple

    def is_zero(self) -> bool:
        return any(not b and e > 0 for b, e in zip(self.bases, self.exponents))

    def is_infinite(self) -> bool:
        return any(not b and e < 0 for b, e in zip(self.bases, self.exponents))

    def valuation(self, p: int) -> int:
        return sum(e * padic_valuation(b, p) for b, e in zip(self.bases, self.exponents))

    def sign(self) -> int:
        s = 1
        for b, e in zip(self.bases, self.exponents):
            if b < 0 and e % 2:
                s = -s
        return s

    def is_one(self) -> bool:
        """Exact test of value == 1 without expansion.

        The absolute value is 1 iff the exponent vector over a coprime base of
        all numerators and denominators vanishes.
        """
        if self.is_zero() or self.is_infinite():
            return False
        fr = [Fraction(b) for b in self.bases]
        base = coprime_base([f.numerator for f in fr] + [f.denominator for f in fr])
        for q in base:
            total = 0
            for f, e in zip(fr, self.exponents):
                total += e * (_safe_val(f.numerator, q) - _safe_val(f.denominator, q))
            if total:
                return False
        return self.sign() == 1

    def expand(self, max_bits: int = 1 << 16) -> Fraction:
        bits = sum(abs(e) * Fraction(b).numerator.bit_length() for b, e in zip(self.bases, self.exponents))
        if bits > max_bits:
            from .errors import ResourceLimit

            raise ResourceLimit("factored value too large to expand")
        out = Fraction(1)
        for b, e in zip(self.bases, self.exponents):
            out *= Fraction(b) ** e
        return out

    def to_json(self) -> dict:
        return {"factored": [[str(b), str(e)] for b, e in zip(self.bases, self.exponents)]}


def _safe_val(n: int, q: int) -> int:
    return integer_valuation(n, q) if n else 0


def augment(B: list, beta: int) -> list[int]:
    """B with the smallest nonnegative integers outside B and beta appended
    until it has at least two elements."""
    B = [int(b) for b in B]
    beta = int(beta)
    if beta in B:
        raise InvalidInput("beta lies in B")
    out = list(dict.fromkeys(B))
    k = 0
    while len(out) < 2:
        if k not in out and k != beta:
            out.append(k)
        k += 1
    return out


def choose_prime(B: list, beta: int) -> int:
    """Smallest prime dividing none of the differences b - beta."""
    beta = int(beta)
    if any(int(b) == beta for b in B):
        raise InvalidInput("beta lies in B")
    diffs = [int(b) - beta for b in B]
    for p in primes():
        if all(d % p for d in diffs):
            return p
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class PinData:
    B: tuple  # the augmented set, delta last
    beta: int
    p: int
    delta: int
    c: int
    n: tuple
    valuation: int
    f: FactoredRational


def pin_constants(roots: list[int]) -> tuple[int, list[int]]:
    """(c, [n_i]) for the closed forms above."""
    c = 1
    for i, bi in enumerate(roots):
        for j, bj in enumerate(roots):
            if i != j:
                c *= bi - bj
    ns = []
    for i, bi in enumerate(roots):
        d = 1
        for j, bj in enumerate(roots):
            if j != i:
                d *= bj - bi
        q, r = divmod(c, d)
        assert r == 0
        ns.append(q)
    return c, ns


def pin_map(B: list, beta: int) -> PinData:
    """Belyi map ramified at every b in B with f(beta) outside {0, 1, inf}."""
    B = [int(b) for b in B]
    beta = int(beta)
    if beta in B:
        raise InvalidInput("beta lies in B")
    if len(set(B)) < 2:
        raise InvalidInput("pin_map needs at least two points (augment first)")
    p = choose_prime(B, beta)
    delta = beta + p
    roots = sorted(set(B)) + [delta]
    c, ns = pin_constants(roots)
    f = FactoredRational(tuple(roots), tuple(2 * n for n in ns))
    val = f.evaluate(beta).valuation(p)
    return PinData(tuple(roots), beta, p, delta, c, tuple(ns), val, f)


def log_derivative_identity_holds(f: FactoredRational, c: int) -> bool:
    """sum n_i prod_{j != i}(x - b_j) == (-1)**(m-1) * c as polynomials, n_i = e_i/2,
    together with c = prod_{i != j}(b_i - b_j)."""
    if any(e % 2 for e in f.exponents):
        return False
    c_expected, _ = pin_constants(list(f.roots))
    if c != c_expected:
        return False
    half = FactoredRational(f.roots, tuple(e // 2 for e in f.exponents))
    L = half.log_derivative_numerator()
    sign = -1 if (f.m - 1) % 2 else 1
    return L == Polynomial.constant(sign * c, QQ)


def residue_sum_zero(ns) -> bool:
    return sum(ns) == 0


__all__ = [
    "FactoredRational",
    "FactoredValue",
    "PinData",
    "augment",
    "choose_prime",
    "log_derivative_identity_holds",
    "pin_constants",
    "pin_map",
]
