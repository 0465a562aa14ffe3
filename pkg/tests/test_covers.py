from fractions import Fraction as F

import pytest

from flatbilliards.covers import (
    CoverError,
    analyze_cover,
    appropriate_verdict,
    motion_from_word,
    tile_by_words,
    tiling_symmetries,
    verify_tiling,
)
from flatbilliards.cyclotomic import embed
from flatbilliards.polygons import (
    Edge,
    LinearMap,
    Motion,
    Polygon,
    triangle_from_angles,
)


def square():
    return Polygon(
        [Edge(F(0), 1), Edge(F(1, 2), 1), Edge(F(1), 1), Edge(F(3, 2), 1)]
    )


def fan_words(count, s1=0, s2=2):
    """Reflection words for a fan of `count` copies around vertex 0."""
    return [
        [(s1 if i % 2 == 0 else s2) for i in range(j)] for j in range(count)
    ]


P5 = (F(1, 2), F(1, 5), F(3, 10))
P8 = (F(1, 2), F(1, 8), F(3, 8))


def corpus():
    """Verified tilings exercising degrees 1..6 and all branch shapes."""
    t5 = triangle_from_angles(*P5)
    t8 = triangle_from_angles(*P8)
    sq = square()
    return [
        ("identity right triangle", tile_by_words(t5, [[]])),
        ("identity octagon triangle", tile_by_words(t8, [[]])),
        ("identity square", tile_by_words(sq, [[]])),
        ("double to acute isoceles", tile_by_words(t5, [[], [1]])),
        ("double to obtuse isoceles", tile_by_words(t5, [[], [2]])),
        ("double to kite", tile_by_words(t5, [[], [0]])),
        ("fan of 3 (octagon)", tile_by_words(t8, fan_words(3))),
        ("fan of 4 (octagon)", tile_by_words(t8, fan_words(4))),
        ("fan of 6 (octagon)", tile_by_words(t8, fan_words(6))),
        ("fan of 3 (pentagon)", tile_by_words(t5, fan_words(3))),
        ("checkerboard", tile_by_words(sq, [[], [0], [1], [1, 0]])),
        ("domino", tile_by_words(sq, [[], [1]])),
    ]


def test_riemann_hurwitz_corpus():
    seen = 0
    for name, t in corpus():
        a = analyze_cover(t)
        # analyze_cover already enforces these; re-assert them here
        assert a.chi_cover == a.degree * a.chi_base - a.total_ramification
        assert a.n_copies == a.degree * a.subgroup_index
        assert a.rh_consistent
        if a.total_ramification > 0:
            assert a.genus_cover > 1 + a.degree * (a.genus_base - 1)
        seen += 1
    assert seen >= 10


def test_identity_tiling_is_the_base():
    P = triangle_from_angles(*P5)
    t = tile_by_words(P, [[]])
    assert t.outline.canonical_key() == P.canonical_key()
    a = analyze_cover(t)
    assert a.degree == 1 and a.total_ramification == 0
    assert a.chi_cover == a.chi_base


def test_double_to_acute_isoceles_unbranched_degree_one():
    t = tile_by_words(triangle_from_angles(*P5), [[], [1]])
    got = sorted(a.multiple for a in t.outline.angles())
    assert got == [F(1, 5), F(1, 5), F(3, 5)]
    a = analyze_cover(t)
    assert a.degree == 1 and a.total_ramification == 0
    v = appropriate_verdict(a)
    assert v["appropriate"] is False
    assert "unbranched cover" in v["reasons"]


def test_double_to_obtuse_isoceles_branched_over_both_centers():
    t = tile_by_words(triangle_from_angles(*P5), [[], [2]])
    got = sorted(a.multiple for a in t.outline.angles())
    assert got == [F(3, 10), F(3, 10), F(2, 5)]
    a = analyze_cover(t)
    assert a.degree == 2
    branched = a.branched_classes()
    # the doubled apex winds twice around each of the two regular
    # classes of the base's 1/5-angle vertex: k=2, e=2, 2 does not
    # divide 5
    assert len(branched) == 2
    for bp in branched:
        assert bp.angle == F(1, 5)
        assert bp.ram_indices == (2,) and bp.multipliers == (2,)
    assert a.chi_cover == -6 == 2 * (-2) - 2
    v = appropriate_verdict(a)
    assert v["appropriate"] is False
    assert "two branch points" in v["reasons"]


def test_kite_also_branches_over_both_centers():
    t = tile_by_words(triangle_from_angles(*P5), [[], [0]])
    assert len(t.outline.edges) == 4
    a = analyze_cover(t)
    assert a.degree == 2
    assert len(a.branched_classes()) == 2
    assert len(tiling_symmetries(t)) == 2  # the mirror axis


def test_degree_three_fan_reaches_genus_five():
    # base genus 2, degree 3, a single branch point with e = 3:
    # chi = 3*(-2) - 2 = -8, so the cover has genus 5
    t = tile_by_words(triangle_from_angles(*P8), fan_words(3))
    a = analyze_cover(t)
    assert a.degree == 3 and a.genus_base == 2
    branched = a.branched_classes()
    assert len(branched) == 1
    assert branched[0].ram_indices == (3,)
    assert a.chi_cover == -8 and a.genus_cover == 5
    v = appropriate_verdict(a)
    assert v["appropriate"] is False
    assert "branch point is periodic" in v["reasons"]


def test_simple_double_branching_parity_exclusion():
    # a degree-2 cover with exactly one simple branch point would have
    # odd Euler characteristic, which no closed surface has; every
    # degree-2 cover in the corpus must carry even total ramification
    found_double = 0
    for name, t in corpus():
        a = analyze_cover(t)
        assert a.chi_cover % 2 == 0
        if a.degree == 2:
            found_double += 1
            assert a.total_ramification % 2 == 0
            assert (2 * a.chi_base - 1) % 2 == 1  # the excluded value
    assert found_double >= 2


def test_checkerboard_cover_of_the_square():
    t = tile_by_words(square(), [[], [0], [1], [1, 0]])
    assert sorted(a.multiple for a in t.outline.angles()) == [F(1, 2)] * 4
    a = analyze_cover(t)
    assert a.degree == 4 and a.total_ramification == 0
    assert a.chi_base == a.chi_cover == 0
    assert len(tiling_symmetries(t)) == 4


def test_unbranched_preimage_multiplier_one():
    # every multiplier-1 vertex is an unramified preimage
    t = tile_by_words(triangle_from_angles(*P5), [[], [1]])
    a = analyze_cover(t)
    for bp in a.branch_points:
        for kk, e in zip(bp.multipliers, bp.ram_indices):
            if kk == 1:
                assert e == 1


def test_word_motions():
    P = triangle_from_angles(*P5)
    assert motion_from_word(P, []).key() == Motion.identity().key()
    m = motion_from_word(P, [0])
    assert m.orth.det == -1
    assert motion_from_word(P, [0, 0]).key() == Motion.identity().key()


def test_rejects_overlapping_copies():
    P = triangle_from_angles(*P5)
    words = [[(0 if i % 2 == 0 else 1) for i in range(j)] for j in range(7)]
    with pytest.raises(CoverError):
        tile_by_words(P, words)


def test_rejects_coinciding_copies():
    P = triangle_from_angles(*P5)
    with pytest.raises(CoverError, match="coincide"):
        tile_by_words(P, fan_words(11))


def test_rejects_disconnected_union():
    sq = square()
    far = Motion(LinearMap.identity(), (embed(5), embed(0)))
    with pytest.raises(CoverError, match="disconnected"):
        verify_tiling(sq, [Motion.identity(), far])


def test_rejects_translation_as_adjacency():
    sq = square()
    shifted = Motion(LinearMap.identity(), (embed(1), embed(0)))
    with pytest.raises(CoverError, match="mirror"):
        verify_tiling(sq, [Motion.identity(), shifted])


def test_rejects_partial_side_sharing():
    sq = square()
    half_up = Motion(
        LinearMap.reflection(F(1, 2)), (embed(2), embed(F(1, 2)))
    )
    with pytest.raises(CoverError):
        verify_tiling(sq, [Motion.identity(), half_up])


def test_rejects_orthogonal_part_outside_group():
    sq = square()
    bad = Motion(LinearMap.rotation(F(1, 3)), (embed(0), embed(0)))
    with pytest.raises(CoverError, match="reflection group"):
        verify_tiling(sq, [Motion.identity(), bad])
