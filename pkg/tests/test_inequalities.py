"""Inequality checks against closed forms."""
import csv
import io
import math

import numpy as np
import pytest

from elasticurve import (check_bonnesen_improved, check_enomoto, check_fixed_length, check_gage, check_main,
                         compute_radii, deficits, euler_lagrange_residual, two_convex_bound)
from elasticurve.generators import (make_circle, make_ellipse, make_figure1_family, make_random_simple,
                                    make_stadium)
from elasticurve.inequalities import all_checks, is_convex, report, reports_to_csv

PI = math.pi
PI3 = PI ** 3


@pytest.fixture(scope="module")
def stadium_radii():
    return compute_radii(make_stadium(1.0, 1.0))


def test_main_circle_is_tight(circle):
    rep = check_main(circle)
    assert rep.satisfied and rep.status == "pass"
    assert abs(rep.slack) <= 1e-10


def test_main_stadium(stadium):
    rep = check_main(stadium)
    assert rep.lhs == pytest.approx((PI + 2) * PI ** 2, rel=1e-12)
    assert rep.lhs == pytest.approx(50.75, abs=0.01)
    assert rep.rhs == pytest.approx(PI3)


def test_gage(circle, stadium):
    rep = check_gage(circle)
    assert rep.lhs == pytest.approx(2 * PI) and rep.rhs == pytest.approx(2 * PI)
    assert rep.status == "pass"
    rep = check_gage(stadium)
    assert rep.rhs == pytest.approx(PI * (2 * PI + 2) / (PI + 2), rel=1e-12)
    assert rep.rhs == pytest.approx(5.061, abs=1e-3)
    assert rep.satisfied


def test_gage_fails_informationally_on_figure1():
    c = make_figure1_family(10)
    assert not is_convex(c)
    rep = check_gage(c)
    assert not rep.satisfied
    assert rep.status == "informational"
    assert rep.note


def test_fixed_length(circle, stadium):
    assert abs(check_fixed_length(circle).slack) <= 1e-10
    rep = check_fixed_length(stadium)
    assert rep.lhs == pytest.approx((2 * PI + 2) * PI)
    assert rep.satisfied


def test_deficits(circle, stadium):
    dl, de, rep = deficits(circle)
    assert abs(dl) < 1e-14 and abs(de) < 1e-14
    dl, de, rep = deficits(stadium)
    iso = math.sqrt(4 * PI * (PI + 2))
    assert dl == pytest.approx((2 * PI + 2 - iso) / iso, rel=1e-12)
    assert de == pytest.approx(1 / PI, rel=1e-12)
    assert rep.satisfied and de >= dl


def test_radii_circle():
    r = compute_radii(make_circle(2.5, (1.0, -3.0)))
    assert r.inradius == pytest.approx(2.5, rel=1e-4)
    assert r.outer_radius == pytest.approx(2.5, rel=1e-4)
    assert r.outer_center == pytest.approx((1.0, -3.0), abs=1e-4)


def test_radii_stadium(stadium_radii):
    # half extent d/2 + r with d = 1, r = 1
    assert stadium_radii.inradius == pytest.approx(1.0, rel=1e-4)
    assert stadium_radii.outer_radius == pytest.approx(1.5, rel=1e-4)


def test_radii_ellipse():
    r = compute_radii(make_ellipse(2.0, 1.0))
    assert r.outer_radius == pytest.approx(2.0, rel=1e-4)
    assert r.inradius == pytest.approx(1.0, rel=1e-4)


def test_enomoto_and_improved(circle, stadium, stadium_radii):
    rep = check_bonnesen_improved(stadium, stadium_radii)
    assert rep.lhs == pytest.approx(2 * PI, rel=1e-12)
    assert rep.rhs == pytest.approx(PI ** 4 * 0.25 / (2 * PI + 2) ** 2, rel=1e-3)
    assert rep.rhs == pytest.approx(0.355, abs=1e-3)
    assert rep.status == "pass"
    eno = check_enomoto(stadium, stadium_radii)
    assert eno.rhs < rep.rhs <= rep.lhs
    circ = check_enomoto(circle)
    assert abs(circ.lhs) < 1e-12 and circ.rhs < 1e-6
    assert circ.status in ("pass", "inconclusive")


def test_two_convex_bound(circle):
    rep = two_convex_bound(circle, circle, PI / 2, PI / 2)
    assert rep.lhs == pytest.approx(2 * PI3)
    assert rep.satisfied
    tiny = make_circle(1e-3)
    assert two_convex_bound(circle, tiny, PI / 2, PI / 2 * 1e3).satisfied


def test_euler_lagrange_circle():
    rho = 2.0
    t = np.linspace(0, 2 * PI, 4096, endpoint=False)
    pts = np.column_stack([rho * np.cos(t), rho * np.sin(t)])
    mean, var = euler_lagrange_residual(pts)
    assert mean == pytest.approx(0.5 / rho ** 3, rel=1e-6)
    assert var < 1e-8


def test_euler_lagrange_refinement():
    # uneven speed gives a truncation error that shrinks with the sample count
    def var(n):
        s = np.linspace(0, 2 * PI, n, endpoint=False)
        t = s + 0.3 * np.sin(s)
        return euler_lagrange_residual(np.column_stack([np.cos(t), np.sin(t)]))[1]
    assert var(512) < var(128) < var(64)


def test_euler_lagrange_ellipse():
    t = np.linspace(0, 2 * PI, 4096, endpoint=False)
    _, var = euler_lagrange_residual(np.column_stack([2 * np.cos(t), np.sin(t)]))
    assert var > 1e-3


def test_euler_lagrange_rejects_bad_input():
    with pytest.raises(ValueError):
        euler_lagrange_residual(np.zeros((5, 2)))


def test_random_curves_satisfy_everything():
    for seed in range(6):
        c = make_random_simple(seed)
        for rep in all_checks(c):
            assert rep.status != "fail", (seed, rep)


def test_dimensionless_checks_scale_invariant(stadium):
    for f in (check_main, check_fixed_length):
        a, b = f(stadium), f(stadium.scaled(7.0).rotated(1.1).translated((4, 4)))
        assert b.lhs == pytest.approx(a.lhs, rel=1e-12)
    assert deficits(stadium.scaled(0.1))[1] == pytest.approx(deficits(stadium)[1], rel=1e-12)


def test_report_and_csv(stadium):
    rep = report(stadium, "stadium")
    text = reports_to_csv([rep])
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["check"] for r in rows] == [c["name"] for c in rep["checks"]]
    assert set(rows[0]) == {"curve_id", "check", "lhs", "rhs", "slack", "satisfied", "status"}
    assert all(r["curve_id"] == "stadium" for r in rows)
