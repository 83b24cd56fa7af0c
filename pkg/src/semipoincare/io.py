"""JSON (de)serialization for presentations, complexes and reports.

Presentation file::

    {"free_rank": 1, "torsion": [], "generators": [[2], [3]], "grading": [1]}

``grading`` is optional.  Complex file::

    {"ground_set": [0, 1, 2], "facets": [[0, 1], [2]]}

The older key ``vertices`` is still read as a synonym for ``ground_set``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .semigroup import AmbientGroup, SemigroupPresentation
from .simplicial import Complex


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def presentation_to_json(pres: SemigroupPresentation, grading=None) -> dict:
    out = {
        "free_rank": pres.ambient.free_rank,
        "torsion": list(pres.ambient.torsion_orders),
        "generators": [list(g) for g in pres.generators],
    }
    if grading is not None:
        out["grading"] = list(grading)
    return out


def presentation_from_json(data) -> tuple:
    """(presentation, grading or None)."""
    if not isinstance(data, dict) or "generators" not in data:
        raise ValueError("presentation needs a 'generators' list")
    gens = data["generators"]
    if not isinstance(gens, list) or not gens:
        raise ValueError("'generators' must be a nonempty list")
    gens = [[g] if isinstance(g, int) else g for g in gens]
    torsion = tuple(data.get("torsion", ()))
    free_rank = data.get("free_rank", len(gens[0]) - len(torsion))
    amb = AmbientGroup(int(free_rank), tuple(int(t) for t in torsion))
    for g in gens:
        if len(g) != amb.width:
            raise ValueError(f"generator {g} has {len(g)} coordinates, expected {amb.width}")
    return SemigroupPresentation(amb, tuple(tuple(g) for g in gens)), data.get("grading")


def complex_to_json(T: Complex) -> dict:
    return {"ground_set": list(T.ground_set), "facets": [list(f) for f in T.facet_labels()]}


def complex_from_json(data) -> Complex:
    if not isinstance(data, dict) or "facets" not in data:
        raise ValueError("complex needs a 'facets' list")
    facets = [tuple(f) for f in data["facets"]]
    vertices = data.get("ground_set", data.get("vertices"))
    if vertices is None:
        vertices = sorted({v for f in facets for v in f})
    return Complex.from_facets(vertices, facets)


def read_json(path) -> object:
    with open(path) as fh:
        return json.load(fh)


def write_text(path, text: str):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text)


def read_presentation(path) -> tuple:
    return presentation_from_json(read_json(path))


def read_complex(path) -> Complex:
    return complex_from_json(read_json(path))
