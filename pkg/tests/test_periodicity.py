from fractions import Fraction as F

from flatbilliards.periodicity import (
    classify_point,
    default_directions,
    replay_certificate,
)
from flatbilliards.polygons import triangle_from_angles
from flatbilliards.unfolding import unfold


def test_singular_points_periodic():
    M = unfold(triangle_from_angles(F(2, 9), F(1, 3), F(4, 9)))
    for cp in M.singular_points():
        v = classify_point(M, cp)
        assert v.status == "periodic" and v.certificate == "singular"
        assert replay_certificate(M, cp, v)


def test_octagon_vertices_minus_id_fixed():
    M = unfold(triangle_from_angles(F(1, 2), F(1, 8), F(3, 8)))
    for cp in M.cone_points():
        v = classify_point(M, cp)
        assert v.status == "periodic"
        if not cp.is_singular:
            assert v.certificate == "minus_id_fixed"
        assert replay_certificate(M, cp, v)


def test_double_pentagon_centers_non_periodic():
    M = unfold(triangle_from_angles(F(1, 2), F(1, 5), F(3, 10)))
    centers = [
        c for c in M.cone_points()
        if c.angle.multiple == F(1, 5) and not c.is_singular
    ]
    assert len(centers) == 2
    for cp in centers:
        v = classify_point(M, cp)
        assert v.status == "non_periodic"
        assert replay_certificate(M, cp, v)


def test_family_5a_pi3_points_non_periodic():
    M = unfold(triangle_from_angles(F(1, 4), F(1, 3), F(5, 12)))
    horizontal_hits = 0
    for cp in M.cone_points():
        if cp.angle.multiple != F(1, 3) or cp.is_singular:
            continue
        v = classify_point(M, cp)
        assert v.status == "non_periodic"
        assert replay_certificate(M, cp, v)
        if v.certificate["direction"] == 0:
            horizontal_hits += 1
    # some of the classes resolve already in the horizontal direction;
    # the rest sit on horizontal separatrices and need an axis direction
    assert horizontal_hits >= 2


def test_orbit_consistency():
    M = unfold(triangle_from_angles(F(1, 2), F(1, 5), F(3, 10)))
    statuses = {}
    for cp in M.cone_points():
        statuses[cp.class_id] = classify_point(M, cp).status
    for g in M.group.elements():
        for cp in M.cone_points():
            img = M.act_on_class(g, cp)
            assert statuses[cp.class_id] == statuses[img.class_id]


def test_unknown_when_no_direction_given():
    M = unfold(triangle_from_angles(F(1, 5), F(1, 3), F(7, 15)))
    cp = [c for c in M.cone_points() if not c.is_singular][0]
    v = classify_point(M, cp, directions=[])
    assert v.status == "unknown" and v.certificate == "none"


def test_default_directions_cover_axes():
    M = unfold(triangle_from_angles(F(1, 2), F(1, 8), F(3, 8)))
    dirs = default_directions(M)
    assert F(0) in dirs
    assert len(dirs) == M.N or len(dirs) == M.N + 1
