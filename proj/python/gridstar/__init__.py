"""Gridded surfaces in R^4: vertex stars, unknotting moves, transverse fields."""

import json

from . import _core
from ._core import FormatError, ReduceError, SmoothError, StarError, __version__

__all__ = [
    "FormatError",
    "ReduceError",
    "SmoothError",
    "StarError",
    "canonical",
    "certify",
    "classes",
    "classify",
    "enumerate_stars",
    "field",
    "fixture",
    "lemmas",
    "mesh",
    "reduce",
    "signature",
    "validate",
]

enumerate_stars = _core.enumerate_stars
canonical = _core.canonical
signature = _core.signature


def _surface_text(surface):
    return surface if isinstance(surface, str) else json.dumps(surface)


def classes():
    """All orbits plus the comparison against the expected counts."""
    return json.loads(_core.classes_json())


def classify(cycle):
    return json.loads(_core.classify_json(list(cycle)))


def lemmas():
    return json.loads(_core.lemmas_json())


def reduce(cycle):
    """Unknotting certificate and squared link of a star."""
    return json.loads(_core.reduce_json(list(cycle)))


def fixture(name="", seed=1, cells=6):
    """Surface dict of a named fixture, or of a random chain when name is empty."""
    return json.loads(_core.fixture_json(name, seed, cells))


def validate(surface, threads=0):
    return json.loads(_core.validate_json(_surface_text(surface), threads))


def field(surface, m=4, density=4, tol=1e-6, threads=0):
    return json.loads(_core.field_json(_surface_text(surface), m, density, tol, threads))


def mesh(surface, m=4, arc_segments=4, threads=0):
    """Returns (vertices, triangles, report, obj_text)."""
    verts, tris, report, obj = _core.mesh(_surface_text(surface), m, arc_segments, threads)
    return verts, tris, json.loads(report), obj


def certify(class_id=0, tol=1e-6):
    return json.loads(_core.certify_json(class_id, tol))
