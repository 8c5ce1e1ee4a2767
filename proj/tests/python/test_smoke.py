import pytest

import gridstar


def test_enumeration():
    stars = gridstar.enumerate_stars()
    assert len(stars) == 2766
    assert len(gridstar.enumerate_stars(3, 3)) == 32
    assert gridstar.canonical([2, -1, -2, 1]) == [1, 2, -1, -2]
    assert gridstar.signature([1, 2, -1, -2]) == "(4)"


def test_classes():
    out = gridstar.classes()
    assert len(out["classes"]) == 23
    assert out["check"]["total"] == 23
    assert sum(c["orbit_size"] for c in out["classes"]) == 2766
    assert gridstar.classify([3, -4, 2])["id"] == 1


def test_reduce():
    cert = gridstar.reduce([1, 2, 3, 4, -1, -2, -3, -4])
    assert len(cert["moves"]) <= 5
    assert cert["link"]["segments"] == 16


def test_bad_star():
    with pytest.raises(ValueError):
        gridstar.signature([1, -1, 2])


def test_surfaces():
    cube = gridstar.fixture("cube")
    rep = gridstar.validate(cube)
    assert rep["is_closed_manifold"]
    assert rep["euler_characteristic"] == 2
    torus = gridstar.validate(gridstar.fixture("torus"))
    assert torus["genus_per_component"] == [1]
    assert gridstar.fixture(seed=3, cells=5) == gridstar.fixture(seed=3, cells=5)


def test_field_and_mesh():
    cube = gridstar.fixture("cube")
    f = gridstar.field(cube, m=4)
    assert f["below_tolerance"] == 0
    assert f["min_margin"] > 1e-3
    verts, tris, report, obj = gridstar.mesh(cube, m=4)
    assert report["closed"] and report["euler_characteristic"] == 2
    assert len(verts) == report["vertices"]
    assert len(tris) == report["triangles"]
    assert obj.startswith("#")
    with pytest.raises(RuntimeError):
        gridstar.field(cube, m=1)


def test_certify():
    (c,) = gridstar.certify(1)
    assert c["certified"]
    assert not gridstar.certify(8)[0]["certified"]
