"""Canonical JSON serialization for set families and element lists.

The JSON form is the interchange contract: values carry both the sparse
base-5 text and the exact decimal string, labels round-trip completely,
and the writer is byte-stable (sorted keys, fixed indentation, trailing
newline).
"""

from __future__ import annotations

import json
from pathlib import Path

from .codes import CodeFamily, ReducedVandermonde
from .construct import (
    BoxElement,
    LabeledElement,
    MeyerElement,
    Part,
    ProductElement,
    SetFamily,
    TuplePoint,
)
from .digitnum import DigitVector
from .errors import ParameterError

FAMILY_SCHEMA = "b2sets.setfamily/1"
ELEMENTS_SCHEMA = "b2sets.elements/1"
REPORT_SCHEMA = "b2sets.report/1"


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _value_dict(value: DigitVector) -> dict:
    return {"sparse": value.to_sparse(), "decimal": str(value.to_integer())}


def _value_from_dict(data: dict) -> DigitVector:
    value = DigitVector.parse(data["sparse"])
    if str(value.to_integer()) != data["decimal"]:
        raise ParameterError(
            f"sparse form {data['sparse']!r} does not match decimal {data['decimal']!r}"
        )
    return value


def _element_dict(elem) -> dict:
    if isinstance(elem, LabeledElement):
        return {
            "coords": list(elem.point.coords),
            "preimage": list(elem.point.preimage),
            "j": elem.vector_index,
            **_value_dict(elem.value),
        }
    if isinstance(elem, MeyerElement):
        return {"hi": elem.hi, "lo": elem.lo, **_value_dict(elem.value)}
    if isinstance(elem, BoxElement):
        return {
            "indices": list(elem.indices),
            "signs": list(elem.signs),
            **_value_dict(elem.value),
        }
    raise ParameterError(f"cannot serialize element {elem!r}")


def _element_from_dict(data: dict):
    if "coords" in data:
        return LabeledElement(
            TuplePoint(tuple(data["coords"]), tuple(data["preimage"])),
            data["j"],
            _value_from_dict(data),
        )
    if "hi" in data:
        return MeyerElement(data["hi"], data["lo"], _value_from_dict(data))
    if "indices" in data:
        return BoxElement(
            tuple(data["indices"]), tuple(data["signs"]), _value_from_dict(data)
        )
    raise ParameterError(f"cannot deserialize element {data!r}")


def family_to_dict(family: SetFamily) -> dict:
    out = {
        "schema": FAMILY_SCHEMA,
        "kind": family.kind,
        "ambient": family.ambient,
        "params": dict(family.params),
        "warnings": list(family.warnings),
        "code": family.code.to_dict() if family.code else None,
        "matrix": family.matrix.to_dict() if family.matrix else None,
    }
    if family.kind == "product":
        left, right = family.factors
        left_index = {e: i for i, e in enumerate(left.union_elements())}
        right_index = {e: i for i, e in enumerate(right.union_elements())}
        out["factors"] = {
            "left": family_to_dict(left),
            "right": family_to_dict(right),
        }
        out["parts"] = [
            {
                "name": part.name,
                "pairs": [
                    [left_index[e.left], right_index[e.right]]
                    for e in part.elements
                ],
            }
            for part in family.parts
        ]
    else:
        out["parts"] = [
            {
                "name": part.name,
                "elements": [_element_dict(e) for e in part.elements],
            }
            for part in family.parts
        ]
    return out


def family_from_dict(data: dict) -> SetFamily:
    if data.get("schema") != FAMILY_SCHEMA:
        raise ParameterError(f"not a set family file: schema {data.get('schema')!r}")
    code = CodeFamily.from_dict(data["code"]) if data.get("code") else None
    matrix = (
        ReducedVandermonde.from_dict(data["matrix"]) if data.get("matrix") else None
    )
    if data["kind"] == "product":
        left = family_from_dict(data["factors"]["left"])
        right = family_from_dict(data["factors"]["right"])
        left_elems = left.union_elements()
        right_elems = right.union_elements()
        parts = tuple(
            Part(
                p["name"],
                tuple(
                    ProductElement(left_elems[li], right_elems[ri])
                    for li, ri in p["pairs"]
                ),
            )
            for p in data["parts"]
        )
        return SetFamily(
            kind="product",
            ambient=data["ambient"],
            params=dict(data["params"]),
            parts=parts,
            warnings=tuple(data.get("warnings", ())),
            factors=(left, right),
        )
    parts = tuple(
        Part(p["name"], tuple(_element_from_dict(e) for e in p["elements"]))
        for p in data["parts"]
    )
    return SetFamily(
        kind=data["kind"],
        ambient=data["ambient"],
        params=dict(data["params"]),
        parts=parts,
        warnings=tuple(data.get("warnings", ())),
        code=code,
        matrix=matrix,
    )


def save_family(family: SetFamily, path) -> None:
    Path(path).write_text(canonical_json(family_to_dict(family)))


def load_family(path) -> SetFamily:
    return family_from_dict(json.loads(Path(path).read_text()))


def load_elements(path):
    """Load a raw element list: either a set family file (its union) or an
    elements file {"schema": ..., "elements": [...]}. Entries may be
    decimal strings, sparse base-5 strings, integers, or pairs of these.
    """
    data = json.loads(Path(path).read_text())
    if data.get("schema") == FAMILY_SCHEMA:
        return family_from_dict(data).union_values()
    if data.get("schema") != ELEMENTS_SCHEMA:
        raise ParameterError(f"unrecognized schema {data.get('schema')!r}")
    return [parse_element(e) for e in data["elements"]]


def parse_element(entry):
    if isinstance(entry, bool):
        raise ParameterError(f"cannot parse element {entry!r}")
    if isinstance(entry, int):
        return entry
    if isinstance(entry, str):
        return DigitVector.parse(entry).to_integer()
    if isinstance(entry, list) and len(entry) == 2:
        return tuple(parse_element(c) for c in entry)
    raise ParameterError(f"cannot parse element {entry!r}")


def save_elements(elements, path) -> None:
    def encode(x):
        if isinstance(x, DigitVector):
            return x.to_sparse()
        if isinstance(x, int):
            return str(x)
        if isinstance(x, tuple):
            return [encode(c) for c in x]
        raise ParameterError(f"cannot serialize element {x!r}")

    payload = {
        "schema": ELEMENTS_SCHEMA,
        "elements": [encode(x) for x in elements],
    }
    Path(path).write_text(canonical_json(payload))
