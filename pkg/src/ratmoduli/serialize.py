"""JSON encodings of maps, moduli points, conics and descent results.

Every payload carries its field explicitly; element strings use the text
form of :func:`format_element`.  Encoders return plain dicts, and
``dumps`` fixes key order so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .conic import Conic
from .errors import FieldMismatch, ParseError
from .field import Field, FieldElement, format_element, parse_element
from .forms import FormPair, RationalMap, merge
from .inv2 import WEIGHTS2
from .inv3 import WEIGHTS3
from .moduli import ModuliPoint2, ModuliPoint3, WeightedPoint
from .poly import BinaryForm
from .reconstruct import DescentResult

SCHEMA = 1

_POINT_TYPES = {tuple(WEIGHTS3): ModuliPoint3, tuple(WEIGHTS2): ModuliPoint2}


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _field_of(obj: dict) -> Field:
    if not isinstance(obj, dict) or "field" not in obj:
        raise ParseError("missing 'field' declaration")
    spec = obj["field"]
    if not isinstance(spec, dict):
        raise ParseError("'field' must be an object")
    return Field.from_json(spec)


def _elements(values, F: Field, what: str) -> list[FieldElement]:
    if not isinstance(values, list) or not values:
        raise ParseError(f"'{what}' must be a non-empty list")
    return [parse_element(str(v), F) for v in values]


def _strings(values) -> list[str]:
    return [format_element(v) for v in values]


def map_to_json(m: RationalMap) -> dict:
    return {"field": m.field.to_json(), "degree": m.degree,
            "F0": _strings(m.F0.coeffs), "F1": _strings(m.F1.coeffs)}


def map_from_json(obj: dict) -> RationalMap:
    F = _field_of(obj)
    F0 = BinaryForm(_elements(obj.get("F0"), F, "F0"), F)
    F1 = BinaryForm(_elements(obj.get("F1"), F, "F1"), F)
    if F0.order != F1.order:
        raise ParseError("F0 and F1 must have the same degree")
    if "degree" in obj and obj["degree"] != F0.order:
        raise ParseError(f"declared degree {obj['degree']} but forms have degree {F0.order}")
    return RationalMap(F0, F1)


def pair_to_json(pair: FormPair) -> dict:
    return {"field": pair.field.to_json(), "f": _strings(pair.f.coeffs),
            "g": _strings(pair.g.coeffs)}


def point_to_json(P: WeightedPoint) -> dict:
    return {"field": P.field.to_json(), "weights": list(P.weights),
            "coords": _strings(P.coords)}


def point_from_json(obj: dict) -> WeightedPoint:
    F = _field_of(obj)
    weights = obj.get("weights")
    if not isinstance(weights, list):
        raise ParseError("'weights' must be a list")
    cls = _POINT_TYPES.get(tuple(weights))
    if cls is None:
        raise ParseError(f"unsupported weights {weights}")
    coords = _elements(obj.get("coords"), F, "coords")
    if len(coords) != len(weights):
        raise ParseError("'coords' and 'weights' differ in length")
    return cls(coords)


def conic_to_json(C: Conic) -> dict:
    return {"field": C.field.to_json(),
            "matrix": [_strings(row) for row in C.M],
            "coefficients": {k: format_element(v) for k, v in C.coefficients().items()}}


def _plain(value):
    """Certificates may hold ints, Fractions and lists; stringify the rest."""
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)


def descent_to_json(res: DescentResult) -> dict:
    out: dict = {"outcome": res.outcome}
    if res.stratum is not None:
        out["stratum"] = res.stratum.value
    if res.route is not None:
        out["route"] = res.route
    if res.pair is not None:
        out["pair"] = pair_to_json(res.pair)
        out["map"] = map_to_json(merge(res.pair))
    if res.field is not None:
        out["field"] = res.field.to_json()
    if res.D is not None:
        out["D"] = res.D
    if res.conic is not None:
        out["conic"] = conic_to_json(res.conic)
    if res.certificate is not None:
        out["certificate"] = res.certificate["kind"]
        out["certificate_data"] = _plain(res.certificate)
    if res.bound is not None:
        out["bound"] = res.bound
    if res.diagnostic is not None:
        out["diagnostic"] = res.diagnostic
    return out


def require_same_field(*fields: Field) -> Field:
    """Inputs must agree on their declared field; nothing is coerced."""
    first = fields[0]
    for F in fields[1:]:
        if F is not first:
            raise FieldMismatch(f"inputs declare different fields: {first!r} and {F!r}")
    return first
