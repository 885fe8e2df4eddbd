import math

import pytest

from elasticurve import convex_hull, diameter, elastic_energy, signed_area, validate
from elasticurve.arcs import oscillation_number
from elasticurve.generators import make_circle, make_dumbbell, make_figure1_family

PI = math.pi


def test_hull_of_convex_curve_is_itself(circle, stadium):
    for c in (circle, stadium):
        h = convex_hull(c)
        assert validate(h).valid
        assert signed_area(h) == pytest.approx(signed_area(c), rel=1e-12)
        assert elastic_energy(h) == pytest.approx(elastic_energy(c), rel=1e-12)


def test_hull_of_dented_oval_fills_the_dent(dented):
    h = convex_hull(dented)
    assert validate(h).valid
    assert oscillation_number(h) == 0
    assert signed_area(h) > signed_area(dented)
    # the dent is bridged by one segment between the two caps: a stadium
    assert signed_area(h) == pytest.approx(PI * 1.5 ** 2 + 4.0 * 3.0, rel=1e-12)


def test_hull_of_dumbbell():
    c = make_dumbbell()
    h = convex_hull(c)
    assert validate(h).valid
    assert all(p.curvature >= 0 for p in h.primitives)


def test_figure1_hull_product_increases():
    prev = 0.0
    for n in (1, 2, 4, 8):
        h = convex_hull(make_figure1_family(n))
        val = signed_area(h) * elastic_energy(h) ** 2
        assert val > prev
        prev = val


def test_tiny_curve_is_fine():
    h = convex_hull(make_circle(1e-6))
    assert signed_area(h) == pytest.approx(PI * 1e-12, rel=1e-9)


def test_clockwise_curve_rejected(circle):
    rev = circle.with_primitives(tuple(type(p)(p.center, p.radius, p.end_angle, p.start_angle)
                                       for p in reversed(circle.primitives)))
    with pytest.raises(ValueError):
        convex_hull(rev)


def test_diameter(stadium):
    assert diameter(make_circle(2.0)) == pytest.approx(4.0)
    assert diameter(stadium) == pytest.approx(3.0)
    assert diameter(make_circle(1.0, (5.0, 5.0))) == pytest.approx(2.0)


def test_diameter_grows_along_figure1():
    ds = [diameter(make_figure1_family(n)) for n in (1, 2, 3, 6)]
    assert all(a < b for a, b in zip(ds, ds[1:]))
