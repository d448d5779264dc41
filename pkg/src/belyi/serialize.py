"""JSON encoding of fields, points, stages and chains.

Every number is written exactly: rationals as "num/den" strings, prime-field
elements as integers, extension-field elements as coefficient lists.
"""

from __future__ import annotations

from .errors import InvalidInput
from .extension import ExtensionField, QElem
from .fields import QQ, PrimeField, RationalField
from .moebius import MoebiusMap
from .pinning import FactoredRational, FactoredValue
from .poly import Polynomial
from .ratfunc import INF, RationalFunction
from .stages import CompositionChain, ExplicitStage, FactoredStage, MoebiusStage, PolyStage


def field_from_spec(spec) -> object:
    if not isinstance(spec, dict):
        raise InvalidInput(f"malformed field spec: {spec!r}")
    kind = spec.get("kind")
    if kind == "rationals":
        return QQ
    if kind == "prime":
        return PrimeField(_int(spec.get("characteristic")))
    if kind == "extension":
        p = PrimeField(_int(spec.get("characteristic")))
        k = _int(spec.get("degree"))
        mod = spec.get("modulus")
        return make_extension(p, k, mod)
    raise InvalidInput(f"unknown field kind {kind!r}")


def make_extension(base: PrimeField, degree: int, modulus) -> ExtensionField:
    if not isinstance(modulus, list):
        raise InvalidInput("extension modulus must be a coefficient list")
    if degree < 1:
        raise InvalidInput("extension degree must be positive")
    poly = Polynomial._raw(base, [base.from_json(c) for c in modulus])
    if poly.degree != degree:
        raise InvalidInput(f"modulus has degree {poly.degree}, expected {degree}")
    if degree == 1:
        raise InvalidInput("use the prime field for degree 1")
    return ExtensionField(base, poly)


def _int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InvalidInput(f"expected an integer, got {v!r}")
    try:
        return int(v)
    except ValueError as exc:
        raise InvalidInput(f"expected an integer, got {v!r}") from exc


def point_to_json(field, v):
    if v is INF:
        return "inf"
    if isinstance(v, FactoredValue):
        return {"factored": [[point_to_json(field, b), str(e)] for b, e in zip(v.bases, v.exponents)]}
    if isinstance(v, QElem):
        if v.ring is field or v.ring == field:
            return field.to_json(v)
        if not any(v.c[1:]):
            return field.to_json(field(v.c[0]))
        return {"algebraic": [field.to_json(c) for c in v.c], "modulus": [field.to_json(c) for c in v.ring.modulus.coeffs]}
    return field.to_json(field(v))


def point_from_json(field, obj):
    if obj == "inf":
        return INF
    if isinstance(obj, dict) and "factored" in obj:
        pairs = obj["factored"]
        return FactoredValue(tuple(point_from_json(field, b) for b, _ in pairs), tuple(_int(e) for _, e in pairs))
    return field.from_json(obj)


def poly_from_json(field, coeffs) -> Polynomial:
    if not isinstance(coeffs, list):
        raise InvalidInput(f"polynomial must be a coefficient list: {coeffs!r}")
    return Polynomial._raw(field, [field.from_json(c) for c in coeffs])


def stage_from_json(field, obj):
    if not isinstance(obj, dict) or "kind" not in obj or "data" not in obj:
        raise InvalidInput(f"malformed stage: {obj!r}")
    kind, data = obj["kind"], obj["data"]
    if kind == "moebius":
        if not isinstance(data, list) or len(data) != 4:
            raise InvalidInput("Moebius stage needs four coefficients")
        return MoebiusStage(MoebiusMap(*[field.from_json(c) for c in data], field=field))
    if kind == "poly":
        return PolyStage(poly_from_json(field, data))
    if kind == "factored":
        if not isinstance(field, RationalField) and not isinstance(field, PrimeField):
            raise InvalidInput("factored stages need a prime field or the rationals")
        return FactoredStage(FactoredRational.from_json(data), field)
    if kind == "explicit":
        if not isinstance(data, dict):
            raise InvalidInput("explicit stage needs num and den")
        num = poly_from_json(field, data.get("num"))
        den = poly_from_json(field, data.get("den"))
        if not den:
            raise InvalidInput("zero denominator")
        return ExplicitStage(RationalFunction(num, den))
    raise InvalidInput(f"unknown stage kind {kind!r}")


def chain_from_json(obj) -> CompositionChain:
    if not isinstance(obj, dict):
        raise InvalidInput("chain must be a JSON object")
    field = field_from_spec(obj.get("field"))
    stages = obj.get("stages")
    if not isinstance(stages, list) or not stages:
        raise InvalidInput("chain needs a nonempty stage list")
    return CompositionChain(field, tuple(stage_from_json(field, s) for s in stages))


def chain_to_json(chain: CompositionChain) -> dict:
    return chain.to_json()
