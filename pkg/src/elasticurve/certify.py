"""Held-arc doubling and the two-convex-set certificate for terminal curves."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arcs import (HeldArcCertificate, SearchError, classify, find_held_arc_cusp,
                   find_two_disjoint_held_arcs)
from .curve import ArcSpline, elastic_energy, signed_area, validate

PI3 = math.pi ** 3


class CertificateError(RuntimeError):
    pass


def double_arc_to_convex(curve: ArcSpline, cert: HeldArcCertificate) -> ArcSpline:
    """Convex curve made of the held arc and its point reflection through
    the chord midpoint."""
    pieces = cert.pieces(curve)
    if not pieces:
        raise CertificateError("empty held arc")
    if any(p.sign < 0 for p in pieces) or abs(sum(p.turning for p in pieces) - math.pi) > 1e-8:
        raise CertificateError("certificate arc is not a convex pi-arc")
    p, q = pieces[0].start_point, pieces[-1].end_point
    m = (0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]))
    mirrored = [x.reflected(m) for x in pieces]
    return ArcSpline(tuple(pieces + mirrored), "K", curve.tol, curve.angle_tol)


def chain_value(e1: float, e2: float) -> float:
    """pi^3/8 (t^2 + t'^2)(1/t + 1/t')^2 with t = 1/e1, t' = 1/e2."""
    t, tp = 1.0 / e1, 1.0 / e2
    return PI3 / 8.0 * (t * t + tp * tp) * (1.0 / t + 1.0 / tp) ** 2


@dataclass
class InequalityCertificate:
    source_area: float
    source_energy: float
    arc_energies: tuple
    hull_areas: tuple
    chain: float
    amgm: float
    product: float
    checks: dict = field(default_factory=dict)
    held: list = field(default_factory=list)
    route: str = ""

    @property
    def valid(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {"source_area": self.source_area, "source_energy": self.source_energy,
                "arc_energies": list(self.arc_energies), "hull_areas": list(self.hull_areas),
                "chain": self.chain, "amgm": self.amgm, "product": self.product,
                "checks": dict(self.checks), "valid": self.valid, "route": self.route,
                "held": [h.to_dict() for h in self.held]}


def certify_final(finals: list[ArcSpline], source_area: float, source_energy: float,
                  rtol: float = 1e-9, grid: int = 64) -> InequalityCertificate:
    """Two disjoint held arcs on the terminal curves, doubled into convex
    sets, and the resulting chain of inequalities up to pi^3."""
    if len(finals) == 1 and not finals[0].is_cusped:
        c = finals[0]
        h1, h2 = find_two_disjoint_held_arcs(c, grid=grid)
        pairs = [(c, h1), (c, h2)]
        route = "one_K_curve"
    elif len(finals) == 2 and all(f.is_cusped for f in finals):
        pairs = [(f, find_held_arc_cusp(f, grid=grid)) for f in finals]
        route = "two_C_curves"
    else:
        raise CertificateError("expected one class K curve or two class C curves")
    omegas = [double_arc_to_convex(c, h) for c, h in pairs]
    for om in omegas:
        rep = validate(om)
        if not rep.valid:
            raise CertificateError(f"doubled set is not a valid convex curve: {rep.kinds()}")
    areas = tuple(signed_area(om) for om in omegas)
    energies = tuple(h.energy for _, h in pairs)
    chain = chain_value(*energies)
    t, tp = 1.0 / energies[0], 1.0 / energies[1]
    amgm = PI3 * (t * t + tp * tp) / (2 * t * tp)
    product = source_area * source_energy ** 2
    slack = lambda v: rtol * max(abs(v), 1.0)  # noqa: E731
    checks = {
        "area_sum": sum(areas) <= 2 * source_area + slack(source_area),
        "energy_sum": sum(energies) <= source_energy + slack(source_energy),
        "gage_omega": all(a * (2 * e) ** 2 >= PI3 - slack(PI3) for a, e in zip(areas, energies)),
        "product_ge_chain": product >= chain - slack(chain),
        "chain_ge_amgm": chain >= amgm - slack(amgm),
        "amgm_ge_pi3": amgm >= PI3 - slack(PI3),
        "energy_doubling": all(abs(elastic_energy(om) - 2 * e) <= 1e-9 * max(1.0, e)
                               for om, e in zip(omegas, energies)),
    }
    return InequalityCertificate(source_area, source_energy, energies, areas, chain, amgm, product,
                                 checks, [h for _, h in pairs], route)


def certify_curve(curve: ArcSpline, grid: int = 64) -> InequalityCertificate:
    """Certificate for a curve that is already terminal (K_pi)."""
    tag = classify(curve).tag
    if tag != "Kpi":
        raise CertificateError(f"curve classifies as {tag}, not Kpi")
    return certify_final([curve], signed_area(curve), elastic_energy(curve), grid=grid)


__all__ = ["double_arc_to_convex", "certify_final", "certify_curve", "chain_value",
           "InequalityCertificate", "CertificateError", "SearchError"]
