import itertools
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import brute_lambda, brute_on_surface
from theta_harmonics.combinatorics import base_point
from theta_harmonics.errors import InvalidParameters, SizeCapExceeded
from theta_harmonics.geometry import (
    FaceSystem,
    count_shell_surface_intersections,
    export_geometry,
    face_is_empty,
    fourier_motzkin,
    in_polyhedron,
    on_hypersurface,
)


def weights(r_max=3, hi=8):
    return st.integers(2, r_max).flatmap(lambda r: st.tuples(*[st.integers(0, hi)] * r))


def test_functional_values():
    fs = FaceSystem((7, 5))
    x = (6, 1)
    # f_1 = x_2 + x_1 - 7, f_2 = x_1 + x_2 - 5 (cyclic)
    assert [phi(x) for phi in fs.f] == [0, 2]
    assert [phi.name for phi in fs.functionals] == ["f_1", "f_2", "g_1", "g_2", "h_1", "h_2"]


def test_membership_examples():
    fs2 = FaceSystem((7, 5))
    assert in_polyhedron(fs2, (6, 1))
    assert not in_polyhedron(fs2, (0, 0))
    assert in_polyhedron(FaceSystem((7, 5, 4)), (6, 1, 3))
    assert on_hypersurface(fs2, (6, 1))
    assert not on_hypersurface(fs2, (6, 3))
    assert not on_hypersurface(fs2, (2, 3))


def test_point_length_checked():
    with pytest.raises(InvalidParameters):
        FaceSystem((7, 5)).in_polyhedron((1, 2, 3))


def test_face_emptiness_examples():
    fs2 = FaceSystem((7, 5))
    assert face_is_empty(fs2, 1)
    assert not face_is_empty(fs2, 0)
    fs3 = FaceSystem((7, 5, 4))
    assert not any(face_is_empty(fs3, i) for i in range(3))


def test_face_index_range():
    with pytest.raises(InvalidParameters):
        face_is_empty(FaceSystem((1, 1)), 2)


def test_count_examples():
    assert count_shell_surface_intersections(FaceSystem((7, 5, 4)), (6, 5, 3)) == 6
    assert count_shell_surface_intersections(FaceSystem((7, 5)), (6, 3)) == 2
    assert count_shell_surface_intersections(FaceSystem((7, 5)), (3, 0)) == 0


def test_fourier_motzkin_small_system():
    # x >= 1, y >= 1, x + y <= 1 is infeasible
    rows = [((Fraction(1), Fraction(0)), Fraction(-1)),
            ((Fraction(0), Fraction(1)), Fraction(-1)),
            ((Fraction(-1), Fraction(-1)), Fraction(1))]
    proj = fourier_motzkin(rows, [0, 1])
    assert any(c < 0 for _, c in proj)
    # drop the last row: feasible
    assert not any(c < 0 for _, c in fourier_motzkin(rows[:2], [0, 1]))


@given(weights(r_max=3, hi=8), st.data())
def test_hypersurface_implies_polyhedron(s, data):
    fs = FaceSystem(s)
    x = data.draw(st.tuples(*[st.integers(-2, 12)] * len(s)))
    if fs.on_hypersurface(x):
        assert fs.in_polyhedron(x)
    assert fs.on_hypersurface(x) == brute_on_surface(s, x)


@given(weights(r_max=4, hi=8), st.data())
def test_hypersurface_equals_clebsch_gordan_conditions(s, data):
    r = len(s)
    fs = FaceSystem(s)
    m = data.draw(st.tuples(*[st.integers(0, 8)] * r))
    cond1 = all(abs(m[i - 1] - m[i]) <= s[i] <= m[i - 1] + m[i] for i in range(r))
    cond3 = any(s[k] == m[k - 1] + m[k] for k in range(r))
    assert fs.on_hypersurface(m) == (cond1 and cond3)


@given(weights(r_max=4, hi=6))
def test_vectorized_matches_scalar(s):
    fs = FaceSystem(s)
    pts = np.array(list(itertools.product(range(0, 8), repeat=len(s))))
    assert list(fs.on_hypersurface_many(pts)) == [fs.on_hypersurface(tuple(p)) for p in pts]


@given(weights(r_max=3, hi=8))
def test_surface_bounded_by_weight_sum(s):
    fs = FaceSystem(s)
    total = sum(s)
    window = range(0, total + 4)
    for x in itertools.product(window, repeat=len(s)):
        if brute_on_surface(s, x):
            assert max(x) <= total
            assert max(x) <= fs.surface_coordinate_bound()
    assert fs.surface_coordinate_bound() <= total


@given(weights(r_max=3, hi=8))
def test_faces_bounded_and_vertex_routes_agree(s):
    fs = FaceSystem(s)
    for i in range(fs.r):
        face = fs.face(i)
        assert face.bounded
        # emptiness from projection agrees with vertex enumeration
        assert face.empty == (len(face.vertices) == 0)
        if not face.empty:
            for k in range(fs.r):
                lo, hi = face.bounds[k]
                coords = [v[k] for v in face.vertices]
                assert (min(coords), max(coords)) == (lo, hi)
        for v in face.vertices:
            assert fs.f[i](v) == 0
            assert all(phi(v) >= 0 for phi in fs.functionals)


@given(weights(r_max=3, hi=6))
def test_integer_face_points_agree_with_emptiness(s):
    fs = FaceSystem(s)
    for i in range(fs.r):
        if fs.face(i).empty:
            for x in itertools.product(range(sum(s) + 2), repeat=fs.r):
                assert not (fs.in_polyhedron(x) and fs.f[i](x) == 0)


@given(weights(r_max=3, hi=6), st.data())
def test_count_matches_brute_force(s, data):
    n = data.draw(st.tuples(*[st.integers(0, 8)] * len(s)))
    expected = sum(1 for m in brute_lambda(n) if brute_on_surface(s, m))
    assert count_shell_surface_intersections(FaceSystem(s), n) == expected


def test_export_without_ray():
    doc = export_geometry(FaceSystem((7, 5)))
    assert doc["schema_version"] == 1
    assert len(doc["functionals"]) == 6
    assert [f["empty"] for f in doc["faces"]] == [False, True]
    assert doc["faces"][0]["vertices"] == [["1", "6"], ["6", "1"]]
    assert doc["shells"] == []


def test_export_origin_vertex():
    doc = export_geometry(FaceSystem((0, 0)))
    assert all(face["vertices"] == [["0", "0"]] for face in doc["faces"])


def test_export_with_ray():
    doc = export_geometry(FaceSystem((7, 5, 4)), base_point((5, 1), 3), t_max=3)
    assert [sh["n"] for sh in doc["shells"]] == [[3, 2, 0], [4, 3, 1], [5, 4, 2], [6, 5, 3]]
    last = doc["shells"][-1]
    assert sum(p["on_surface"] for p in last["points"]) == 6
    assert len(last["points"]) == 18
    assert json.dumps(doc, sort_keys=True) == json.dumps(
        export_geometry(FaceSystem((7, 5, 4)), base_point((5, 1), 3), t_max=3), sort_keys=True)


def test_export_rational_vertex():
    doc = export_geometry(FaceSystem((1, 0, 0)))
    assert doc["faces"][0]["vertices"] == [["1/2", "1/2", "1/2"]]


def test_export_caps():
    with pytest.raises(SizeCapExceeded):
        export_geometry(FaceSystem((1, 1)), base_point((0,), 2), t_max=11, cap=10)
    with pytest.raises(InvalidParameters):
        export_geometry(FaceSystem((1, 1)), t_max=-1)
    with pytest.raises(InvalidParameters):
        export_geometry(FaceSystem((1, 1)), base_point((0, 0), 3), t_max=1)
