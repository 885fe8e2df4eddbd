"""Maximal arcs, held convex sets, class tags and certificate searches."""
import math

import pytest

from elasticurve import (SearchError, SubArcRef, classify, decompose_maximal_arcs, find_held_arc_cusp,
                         find_nested_instances, find_two_disjoint_held_arcs, holds_convex_set, is_void,
                         oscillation_number)
from elasticurve.arcs import (check_lemma_rotation, check_lemma_total, chord_in_closure, find_chord_dagger,
                              find_sharp_point, holds_convex_set_s, spans_disjoint)
from elasticurve.curve import total_curvature
from elasticurve.generators import make_dented_oval, make_necked_dumbbell, make_flower, nonconvex_corpus

PI = math.pi


@pytest.fixture(scope="module")
def deep_dent():
    # the dent reaches below the centre line, so long chords cross it
    return make_dented_oval(half_length=3.0, radius=1.5, dent_depth=2.0, dent_radius=1.0)


@pytest.fixture(scope="module")
def kpi_corpus():
    return [c for _, c in nonconvex_corpus(30, seed=3) if classify(c).tag == "Kpi"]


def test_circle_is_one_convex_arc(circle):
    arcs = decompose_maximal_arcs(circle)
    assert len(arcs) == 1
    assert arcs[0].kind == "convex"
    assert arcs[0].total_curvature == pytest.approx(2 * PI)
    assert oscillation_number(circle) == 0


def test_stadium_segments_are_absorbed(stadium):
    arcs = decompose_maximal_arcs(stadium)
    assert [a.kind for a in arcs] == ["convex"]
    assert arcs[0].total_curvature == pytest.approx(2 * PI)


def test_one_dent_oval(dented):
    arcs = decompose_maximal_arcs(dented)
    assert [a.kind for a in arcs] == ["convex", "concave"]
    assert oscillation_number(dented) == 1
    assert sum(a.total_curvature for a in arcs) == pytest.approx(2 * PI)


def test_figure1_alternates(figure1):
    arcs = decompose_maximal_arcs(figure1)
    signs = [a.sign for a in arcs]
    assert all(a != b for a, b in zip(signs, signs[1:] + signs[:1]))
    assert sum(a.total_curvature for a in arcs) == pytest.approx(2 * PI)
    # the inner quarter arcs merge into concave runs of exactly -pi
    concave = [a.total_curvature for a in arcs if a.sign < 0]
    assert concave == pytest.approx([-PI] * len(concave))
    assert oscillation_number(figure1) == len(concave)


def test_cusp_curve_arcs_sum_with_jump(drop):
    arcs = decompose_maximal_arcs(drop)
    assert sum(a.total_curvature for a in arcs) + PI == pytest.approx(total_curvature(drop))


def test_flower_partition(kpi_corpus):
    c = make_flower()
    arcs = decompose_maximal_arcs(c)
    assert oscillation_number(c) == 4
    for a, b in zip(arcs, arcs[1:]):
        assert b.s0 == pytest.approx(a.s1)
        assert a.sign != b.sign


def test_half_circle_is_held(circle, stadium):
    cert = holds_convex_set(circle, SubArcRef.from_s(circle, 0.3, 0.3 + PI))
    assert cert is not None
    assert cert.total_curvature == pytest.approx(PI)
    assert math.dist(*cert.chord) == pytest.approx(2.0)
    # the semicircle of the stadium starts after the first segment
    s0 = stadium.cum[1]
    cert = holds_convex_set_s(stadium, s0, s0 + PI)
    assert cert is not None and cert.held_area == pytest.approx(PI / 2)


def test_quarter_circle_is_not_held(circle):
    assert holds_convex_set_s(circle, 0.0, PI / 2) is None


def test_crossing_chord_is_not_held(deep_dent):
    # sweep pi starting on the left cap: the chord runs through the dent
    assert not chord_in_closure(deep_dent, deep_dent.point(2.0), deep_dent.point(12.71238898038469))
    assert holds_convex_set_s(deep_dent, 2.0, find_sharp_point(deep_dent, 2.0)) is None


def test_sharp_point_on_circle(circle):
    s = find_sharp_point(circle, PI / 2)     # (1, 0)
    assert circle.point(s) == pytest.approx((-1.0, 0.0), abs=1e-12)
    back = find_sharp_point(circle, PI / 2, "backward")
    assert circle.point(back) == pytest.approx((-1.0, 0.0), abs=1e-12)


def test_sharp_point_on_stadium_is_semicircle_end(stadium):
    s0 = stadium.cum[1]
    s = find_sharp_point(stadium, s0)
    # the tie over the following segment goes to the nearest endpoint
    assert s == pytest.approx(stadium.cum[2])


def test_sharp_point_rejects_direction(circle):
    with pytest.raises(ValueError):
        find_sharp_point(circle, 0.0, "sideways")


def test_chord_dagger(deep_dent):
    s_sharp = find_sharp_point(deep_dent, 2.0)
    (x, y), s = find_chord_dagger(deep_dent, 2.0, s_sharp)
    assert deep_dent.point(s) == pytest.approx((x, y), abs=1e-9)
    p = deep_dent.point(2.0)
    # the first crossing lies on the concave run, and p -> p_dagger is a chord
    concave = [a for a in decompose_maximal_arcs(deep_dent) if a.sign < 0][0]
    assert concave.s0 < s < concave.s1
    assert math.dist(p, (x, y)) < math.dist(p, deep_dent.point(s_sharp))
    assert chord_in_closure(deep_dent, p, (x, y))


def test_chord_dagger_on_circle_fails(circle):
    with pytest.raises(SearchError):
        find_chord_dagger(circle, 0.0, PI)


def test_void_scan_finds_held_arcs(circle, dented, deep_dent):
    for c in (circle, dented, deep_dent):
        for a in decompose_maximal_arcs(c):
            if a.sign > 0 and a.total_curvature > PI:
                assert not is_void(c, a)


def test_nesting_negative_cases(stadium, dented):
    assert find_nested_instances(stadium) == []
    assert find_nested_instances(dented) == []


def test_classify(circle, figure1, dented, drop):
    assert classify(circle).tag == "Kpi"
    assert classify(dented).tag == "Kpi"
    assert classify(drop).tag == "Cpi"
    tag = classify(figure1)
    # concave arcs of exactly -pi are outside the open interval
    assert tag.tag == "neither"
    assert all(w.total_curvature == pytest.approx(-PI) for w in tag.witnesses if w.sign < 0)


def test_deep_concave_arc_is_a_witness():
    # bites sweeping beyond pi
    c = make_necked_dumbbell(neck=0.2)
    tag = classify(c)
    assert tag.tag == "neither"
    assert any(w.total_curvature < -PI for w in tag.witnesses)


def test_two_disjoint_held_arcs_on_circle(circle):
    a, b = find_two_disjoint_held_arcs(circle)
    assert spans_disjoint(circle, a, b)
    for cert in (a, b):
        assert cert.total_curvature == pytest.approx(PI)
        assert holds_convex_set_s(circle, cert.s0, cert.s1) is not None


def test_two_disjoint_held_arcs_one_dent(dented, deep_dent):
    for c in (dented, deep_dent):
        a, b = find_two_disjoint_held_arcs(c)
        assert spans_disjoint(c, a, b)
        assert holds_convex_set_s(c, a.s0, a.s1) is not None
        assert holds_convex_set_s(c, b.s0, b.s1) is not None


def test_two_disjoint_held_arcs_corpus(kpi_corpus):
    assert kpi_corpus
    for c in kpi_corpus:
        a, b = find_two_disjoint_held_arcs(c)
        assert spans_disjoint(c, a, b)
        for cert in (a, b):
            again = holds_convex_set_s(c, cert.s0, cert.s1)
            assert again is not None
            assert again.total_curvature == pytest.approx(PI, abs=1e-9)


def test_held_pair_requires_class(figure1):
    with pytest.raises(SearchError):
        find_two_disjoint_held_arcs(figure1)


def test_drop_certificate(drop):
    cert = find_held_arc_cusp(drop)
    assert cert.total_curvature == pytest.approx(PI)
    assert 0.0 <= cert.s0 and cert.s1 <= drop.length
    assert holds_convex_set_s(drop, cert.s0, cert.s1) is not None


def test_cusp_search_requires_class(circle):
    with pytest.raises(SearchError):
        find_held_arc_cusp(circle)


def test_lemma_diagnostics(circle, dented, kpi_corpus):
    for c in [circle, dented] + kpi_corpus[:3]:
        assert check_lemma_total(c, grid=256)["passes"]
        assert check_lemma_rotation(c, samples=256, probes=32)["passes"]
    low = check_lemma_total(circle, grid=256)["min_total_curvature"]
    assert low >= -1e-12


def test_lemma_total_negative_control():
    c = make_necked_dumbbell(neck=0.2)
    assert not check_lemma_total(c, grid=256)["passes"]


def test_classify_invariant_under_similarity(dented, kpi_corpus):
    for c in [dented] + kpi_corpus[:3]:
        moved = c.rotated(0.7).translated((3.0, -1.0)).scaled(2.5)
        assert classify(moved).tag == classify(c).tag
        assert oscillation_number(moved) == oscillation_number(c)
