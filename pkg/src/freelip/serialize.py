"""JSON codecs for spaces, vectors, functions and transport plans.

Scalars travel as strings: decimal ("1.25") or rational ("7/16") on input,
"p/q" style in exact mode and shortest round-trip decimals in float mode on
output.  The space file is {"points": [...], "base": label, "dist": [[...]]}.
"""

from __future__ import annotations

from .errors import FreeLipError, UnknownPoint
from .functions import LIP0, LipschitzFunction, lip0_function, lip_function
from .scalars import EXACT, format_scalar
from .solver import TransportPlan
from .space import PointedMetricSpace, validate
from .vectors import FreeVector, canonicalize


class MalformedInput(FreeLipError):
    code = "malformed-input"


def _require(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedInput(f"missing {key!r} field")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise MalformedInput(f"field {key!r} has the wrong type")
    return value


def space_to_obj(space: PointedMetricSpace) -> dict:
    return {
        "points": list(space.labels),
        "base": space.labels[space.base],
        "dist": [[format_scalar(x) for x in row] for row in space.dist],
    }


def space_from_obj(obj: dict, mode: str = EXACT) -> PointedMetricSpace:
    points = _require(obj, "points", list)
    base_label = _require(obj, "base")
    dist = _require(obj, "dist", list)
    labels = [str(p) for p in points]
    try:
        base = labels.index(str(base_label))
    except ValueError:
        raise UnknownPoint(f"base label {base_label!r} not among the points") from None
    return validate(labels, dist, base, mode)


def vector_to_obj(m: FreeVector) -> dict:
    return {"coeffs": {m.space.labels[i]: format_scalar(c)
                       for i, c in sorted(m.coeffs.items())}}


def vector_from_obj(obj: dict, space: PointedMetricSpace) -> FreeVector:
    coeffs = _require(obj, "coeffs", dict)
    return canonicalize(space, list(coeffs.items()))


def function_values_obj(f: LipschitzFunction) -> dict:
    """The {"label": value} map used inside report JSON."""
    return {lab: format_scalar(v) for lab, v in zip(f.space.labels, f.values)}


def function_to_obj(f: LipschitzFunction) -> dict:
    return {"kind": f.kind, "values": function_values_obj(f),
            "lip_const": format_scalar(f.lip_const)}


def function_from_obj(obj: dict, space: PointedMetricSpace) -> LipschitzFunction:
    values_map = _require(obj, "values", dict)
    kind = obj.get("kind", LIP0)
    full = {space.index(lab) for lab in values_map} == set(range(space.n))
    if not full:
        raise MalformedInput("function files must give a value for every point")
    values = [None] * space.n
    for lab, v in values_map.items():
        from .scalars import parse_scalar

        values[space.index(lab)] = parse_scalar(v, space.mode)
    if kind == LIP0:
        return lip0_function(space, values)
    return lip_function(space, values)


def partial_values_from_obj(obj: dict, space: PointedMetricSpace) -> dict:
    """Partial {point: value} map for extension inputs."""
    values_map = _require(obj, "values", dict)
    from .scalars import parse_scalar

    return {lab: parse_scalar(v, space.mode) for lab, v in values_map.items()}


def plan_to_obj(norm, plan: TransportPlan) -> dict:
    return {
        "norm": format_scalar(norm),
        "flow": [{"from": e["from"], "to": e["to"],
                  "amount": format_scalar(e["amount"])}
                 for e in plan.flow_by_labels()],
        "dual": function_values_obj(plan.potentials),
        "gap": format_scalar(plan.gap),
        "mode": plan.mode,
    }
