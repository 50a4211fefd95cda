"""JSON document formats for complexes, balancings, groups, and results.

Complex documents (UTF-8):

    {"kind": "simplicial", "facets": [["0", "1", "2"], ...]}
    {"kind": "poset",
     "faces": [{"id": "v", "covers": []},
               {"id": "alpha", "covers": ["v", "w"]}, ...],
     "facet_order": ["alpha", "beta"]}        # optional

The empty face is implicit; ``covers: []`` means the face covers only the
empty face.  Balancing documents are ``{"labels": {"v": 1, "w": 2}}``.
Group documents list generators as face maps, or vertex maps for simplicial
complexes:

    {"generators": [{"map": {"alpha": "beta", "beta": "alpha"}},
                    {"vertex_map": {"0": "1", "1": "0"}}]}
"""

from __future__ import annotations

import json
from typing import Any

from .complexes import Balancing, BooleanComplex, build_from_facets, build_from_poset
from .equivariant import (
    Group,
    automorphism_from_face_map,
    automorphism_from_vertex_map,
    close_group,
)
from .errors import InputError


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def complex_from_document(doc: Any) -> BooleanComplex:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise InputError('complex documents need a "kind" key')
    kind = doc["kind"]
    if kind == "simplicial":
        facets = doc.get("facets")
        if not isinstance(facets, list):
            raise InputError('simplicial documents need a "facets" list')
        return build_from_facets(facets)
    if kind == "poset":
        faces = doc.get("faces")
        if not isinstance(faces, list):
            raise InputError('poset documents need a "faces" list')
        return build_from_poset(faces, doc.get("facet_order"))
    raise InputError(f"unknown complex kind {kind!r}")


def balancing_from_document(complex: BooleanComplex, doc: Any) -> Balancing:
    if not isinstance(doc, dict) or not isinstance(doc.get("labels"), dict):
        raise InputError('balancing documents need a "labels" map')
    return Balancing(complex, {str(k): int(v) for k, v in doc["labels"].items()})


def group_from_document(complex: BooleanComplex, doc: Any,
                        cap: int = 10000) -> Group:
    if not isinstance(doc, dict) or not isinstance(doc.get("generators"), list):
        raise InputError('group documents need a "generators" list')
    generators = []
    for i, entry in enumerate(doc["generators"]):
        if "map" in entry:
            generators.append(automorphism_from_face_map(
                complex, {str(k): str(v) for k, v in entry["map"].items()},
                generator_index=i))
        elif "vertex_map" in entry:
            generators.append(automorphism_from_vertex_map(
                complex, {str(k): str(v) for k, v in entry["vertex_map"].items()},
                generator_index=i))
        else:
            raise InputError(f'generator {i} needs a "map" or "vertex_map"')
    return close_group(complex, generators, cap)


def element_to_document(element) -> dict:
    """Serialize a ring element: list of {coeff, monomial} in canonical order."""
    return {"terms": [{"coeff": str(c),
                       "monomial": [[element.complex.ids[f], e] for f, e in m]}
                      for m, c in element.sorted_terms()]}
