"""Reduction driver, traces and the final certificate chain."""
import json
import math

import pytest

from elasticurve import (CertificateError, ReductionBudgetError, ReductionTrace, certify_curve,
                         certify_final, classify, double_arc_to_convex, elastic_energy,
                         find_two_disjoint_held_arcs, reduce, signed_area, validate)
from elasticurve.arcs import holds_convex_set_s
from elasticurve.certify import chain_value
from elasticurve.generators import make_necked_dumbbell, nonconvex_corpus

PI3 = math.pi ** 3
FIELDS = {"step", "branch", "procedure", "site", "eps_bar", "event", "area_before", "area_after",
          "energy_before", "energy_after", "curve_after"}


def test_circle_needs_no_steps(circle):
    finals, trace = reduce(circle)
    assert finals == [circle]
    assert len(trace) == 0
    assert trace.finals == {"0": "Kpi"}


def test_circle_certificate_is_the_equality_case(circle):
    cert = certify_curve(circle)
    assert cert.valid
    assert cert.route == "one_K_curve"
    assert cert.arc_energies == pytest.approx((math.pi / 2, math.pi / 2))
    assert cert.chain == pytest.approx(PI3, rel=1e-12)
    assert cert.amgm == pytest.approx(PI3, rel=1e-12)
    assert cert.product == pytest.approx(PI3, rel=1e-12)


def test_chain_value_formula():
    assert chain_value(2.0, 2.0) == pytest.approx(PI3)
    # t = 1, t' = 1/2: pi^3/8 * (1 + 1/4) * 9
    assert chain_value(1.0, 2.0) == pytest.approx(PI3 / 8 * 1.25 * 9)
    assert chain_value(1.0, 3.0) > chain_value(1.0, 2.0) > PI3


def test_dented_oval_reduces_to_kpi(dented):
    finals, trace = reduce(dented)
    assert all(classify(f).tag == "Kpi" for f in finals)
    assert trace.monotone
    cert = certify_final(finals, signed_area(dented), elastic_energy(dented))
    assert cert.valid and cert.product > PI3


def test_dumbbell_pipeline():
    c = make_necked_dumbbell()
    finals, trace = reduce(c)
    assert [s.procedure for s in trace.steps] == [2]
    assert trace.steps[0].event == "pinch"
    assert trace.finals == {"0.1": "Cpi", "0.2": "Cpi"}
    assert len(finals) == 2 and all(f.curve_class == "C" for f in finals)
    cert = certify_final(finals, signed_area(c), elastic_energy(c))
    assert cert.route == "two_C_curves"
    assert cert.valid
    assert cert.product > cert.chain >= cert.amgm * (1 - 1e-12)
    assert cert.amgm >= PI3 * (1 - 1e-12)


def test_congruent_lobes_give_symmetric_chain():
    c = make_necked_dumbbell()
    finals, _ = reduce(c)
    cert = certify_final(finals, signed_area(c), elastic_energy(c))
    e1, e2 = cert.arc_energies
    assert e1 == pytest.approx(e2, rel=1e-9)
    assert cert.amgm == pytest.approx(PI3, rel=1e-9)


def test_corpus_reduces_monotonically():
    for name, c in nonconvex_corpus(24, seed=2):
        finals, trace = reduce(c)
        assert trace.monotone, name
        assert set(trace.finals.values()) <= {"Kpi", "Cpi"}, name
        for s in trace.steps:
            assert s.area_after < s.area_before
            assert s.energy_after <= s.energy_before * (1 + 1e-12)
        for f in finals:
            assert validate(f).valid, name
        cert = certify_final(finals, signed_area(c), elastic_energy(c))
        assert cert.valid, (name, cert.checks)


def test_trace_jsonl(tmp_path):
    c = make_necked_dumbbell()
    _, trace = reduce(c)
    path = tmp_path / "trace.jsonl"
    trace.write(path)
    rows = ReductionTrace.read(path)
    assert len(rows) == len(trace)
    assert FIELDS <= set(rows[0])
    assert rows[0]["branch"] == "0"
    assert rows[0]["curve_after"]
    # every line is standalone JSON
    for line in path.read_text().splitlines():
        json.loads(line)


def test_budget_exhaustion_is_reported():
    c = make_necked_dumbbell()
    with pytest.raises(ReductionBudgetError) as info:
        reduce(c, budget=0)
    assert isinstance(info.value.trace, ReductionTrace)


def test_reduce_rejects_class_c(drop):
    with pytest.raises(Exception):
        reduce(drop)


def test_doubling_half_circle_gives_circle(circle):
    cert = holds_convex_set_s(circle, 0.0, math.pi)
    om = double_arc_to_convex(circle, cert)
    assert validate(om).valid
    assert om.length == pytest.approx(2 * math.pi)
    assert signed_area(om) == pytest.approx(math.pi)
    assert elastic_energy(om) == pytest.approx(2 * cert.energy)


def test_doubling_asymmetric_arc_is_convex(dented):
    a, _ = find_two_disjoint_held_arcs(dented)
    om = double_arc_to_convex(dented, a)
    assert validate(om).valid
    assert all(p.turning >= 0 for p in om.primitives)
    assert sum(p.turning for p in om.primitives) == pytest.approx(2 * math.pi)
    assert elastic_energy(om) == pytest.approx(2 * a.energy)


def test_doubling_rejects_non_pi_arcs(circle):
    cert = holds_convex_set_s(circle, 0.0, math.pi)
    cert.s1 = 2.0
    with pytest.raises(CertificateError):
        double_arc_to_convex(circle, cert)


def test_certify_curve_needs_terminal_class(figure1):
    with pytest.raises(CertificateError):
        certify_curve(figure1)
    with pytest.raises(CertificateError):
        certify_final([figure1, figure1], 1.0, 1.0)
