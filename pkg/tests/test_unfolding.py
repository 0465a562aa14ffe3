from fractions import Fraction as F

import pytest

from flatbilliards import planar
from flatbilliards.polygons import Edge, Polygon, triangle_from_angles
from flatbilliards.unfolding import unfold


def square():
    return Polygon(
        [Edge(F(0), 1), Edge(F(1, 2), 1), Edge(F(1), 1), Edge(F(3, 2), 1)]
    )


def test_unfold_square_torus():
    M = unfold(square())
    assert len(M.faces) == 4
    cps = M.cone_points()
    assert len(cps) == 4
    assert all(c.multiplicity == 1 for c in cps)
    g = M.genus()
    assert g == {"g": 1, "chi": 0}


def test_unfold_octagon_triangle():
    M = unfold(triangle_from_angles(F(1, 2), F(1, 8), F(3, 8)))
    assert len(M.faces) == 16
    singular = M.singular_points()
    assert len(singular) == 1 and singular[0].multiplicity == 3
    assert M.genus() == {"g": 2, "chi": -2}


def test_unfold_double_pentagon():
    M = unfold(triangle_from_angles(F(1, 2), F(1, 5), F(3, 10)))
    assert len(M.faces) == 20
    singular = M.singular_points()
    assert len(singular) == 1 and singular[0].multiplicity == 3
    # the two pentagon centers: regular classes of the pi/5 vertex
    centers = [
        c for c in M.cone_points()
        if c.angle.multiple == F(1, 5) and not c.is_singular
    ]
    assert len(centers) == 2
    assert M.genus()["g"] == 2


def test_unfold_genus_table():
    cases = [
        ((F(1, 4), F(1, 3), F(5, 12)), 3),
        ((F(1, 5), F(1, 3), F(7, 15)), 4),
        ((F(2, 9), F(1, 3), F(4, 9)), 3),
        ((F(1, 2), F(1, 7), F(5, 14)), 3),
        ((F(1, 2), F(1, 6), F(1, 3)), 1),
    ]
    for angles, genus in cases:
        M = unfold(triangle_from_angles(*angles))
        assert M.genus()["g"] == genus


def test_five_c_singular_structure():
    M = unfold(triangle_from_angles(F(2, 9), F(1, 3), F(4, 9)))
    mults = sorted(c.multiplicity for c in M.singular_points())
    assert mults == [2, 4]


def test_pairing_involution_and_geometry():
    M = unfold(triangle_from_angles(F(1, 2), F(1, 8), F(3, 8)))
    for key, val in M.pairing.items():
        assert M.pairing[val] == key
        assert val != key
        a = M.faces[key[0]].sides[key[1]]
        b = M.faces[val[0]].sides[val[1]]
        assert planar.is_zero_vec(planar.vadd(a.vector(), b.vector()))
        # gluing translation maps own start to partner end and own end
        # to partner start
        tau = M.translations[key]
        assert planar.veq(planar.vadd(a.start, tau), b.end)
        assert planar.veq(planar.vadd(a.end, tau), b.start)


def test_total_cone_angle():
    M = unfold(triangle_from_angles(F(1, 5), F(1, 3), F(7, 15)))
    total = sum(c.multiplicity for c in M.cone_points())
    # sum of all interior angles over 2N triangle copies = 2N * pi,
    # grouped into classes of total 2*pi*k
    assert 2 * total == len(M.faces)


def test_group_action_permutes_classes():
    M = unfold(triangle_from_angles(F(1, 2), F(1, 5), F(3, 10)))
    cps = M.cone_points()
    for g in M.group.elements():
        images = set()
        for c in cps:
            img = M.act_on_class(g, c)
            assert img.source_vertex == c.source_vertex
            assert img.multiplicity == c.multiplicity
            images.add(img.class_id)
        assert images == {c.class_id for c in cps}


def test_group_action_commutes_with_pairing():
    M = unfold(triangle_from_angles(F(1, 2), F(1, 8), F(3, 8)))
    for g in M.group.elements()[:6]:
        for (fi, p), (fj, q) in list(M.pairing.items())[:12]:
            s = M.faces[fi].sides[p].source
            gfi = M.act_on_face(g, fi)
            gp = M.faces[gfi].side_position_of_source(s)
            img = M.pairing[(gfi, gp)]
            expected_face = M.act_on_face(g, fj)
            assert img[0] == expected_face
            assert M.faces[img[0]].sides[img[1]].source == s


def test_area():
    M = unfold(square())
    assert M.area_twice() == 8
