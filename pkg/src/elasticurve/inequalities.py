"""Inequality checks on arc-spline curves.

Every check returns an :class:`InequalityReport` with the two sides oriented
so that the inequality reads ``lhs >= rhs``.
"""
from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .curve import ArcSpline, CurveMetrics, contains, metrics, sample, signed_area
from .primitives import Arc, Segment

PI = math.pi
PI2 = PI * PI
PI3 = PI ** 3
PI4 = PI ** 4

DEFAULT_RTOL = 1e-9
RADII_RTOL = 1e-4


@dataclass
class Radii:
    inradius: float
    outer_radius: float
    incenter: tuple = (0.0, 0.0)
    outer_center: tuple = (0.0, 0.0)
    rtol: float = RADII_RTOL
    convention: str = "outer radius: smallest circle enclosing the closed region"

    def to_dict(self) -> dict:
        return {"inradius": self.inradius, "outer_radius": self.outer_radius,
                "incenter": list(self.incenter), "outer_center": list(self.outer_center),
                "rtol": self.rtol, "convention": self.convention}


@dataclass
class InequalityReport:
    name: str
    lhs: float
    rhs: float
    satisfied: bool
    slack: float
    tolerance: float = 0.0
    status: str = "pass"          # pass | fail | informational | inconclusive
    inputs: dict = field(default_factory=dict)
    note: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "satisfied": self.satisfied,
                "slack": self.slack, "tolerance": self.tolerance, "status": self.status,
                "inputs": self.inputs, "note": self.note}


def _report(name, lhs, rhs, tol, inputs, status_fail="fail", note="", inconclusive_band=0.0):
    slack = lhs - rhs
    ok = slack >= -tol
    if ok:
        status = "pass"
    elif -slack <= tol + inconclusive_band:
        status = "inconclusive"
    else:
        status = status_fail
    return InequalityReport(name, float(lhs), float(rhs), bool(ok), float(slack), float(tol), status,
                            inputs, note)


def _tol(rtol, *vals):
    return rtol * max(1.0, *(abs(v) for v in vals))


def _metrics(curve) -> CurveMetrics:
    if curve.is_cusped:
        raise ValueError("inequality checks expect a class K curve")
    return metrics(curve)


def check_main(curve: ArcSpline, rtol: float = DEFAULT_RTOL) -> InequalityReport:
    """A * E^2 >= pi^3."""
    m = _metrics(curve)
    lhs = m.area * m.energy ** 2
    return _report("main", lhs, PI3, _tol(rtol, lhs, PI3), m.to_dict())


def is_convex(curve: ArcSpline) -> bool:
    return all(p.curvature >= 0.0 for p in curve.primitives)


def check_gage(curve: ArcSpline, rtol: float = DEFAULT_RTOL) -> InequalityReport:
    """2E >= pi L / A.  Only a theorem for convex curves; on nonconvex curves
    a violation is recorded as informational."""
    m = _metrics(curve)
    convex = is_convex(curve)
    lhs, rhs = 2 * m.energy, PI * m.length / m.area
    inputs = dict(m.to_dict(), convex=convex)
    note = "" if convex else "nonconvex curve: inequality not expected to hold"
    return _report("gage", lhs, rhs, _tol(rtol, lhs, rhs), inputs,
                   status_fail="fail" if convex else "informational", note=note)


def check_fixed_length(curve: ArcSpline, rtol: float = DEFAULT_RTOL) -> InequalityReport:
    """L * E >= 2 pi^2."""
    m = _metrics(curve)
    lhs = m.length * m.energy
    return _report("fixed_length", lhs, 2 * PI2, _tol(rtol, lhs), m.to_dict())


def deficits(curve: ArcSpline, rtol: float = DEFAULT_RTOL) -> tuple[float, float, InequalityReport]:
    """Isoperimetric and elastic deficits and the check dE >= dL."""
    m = _metrics(curve)
    iso = math.sqrt(4 * PI * m.area)
    dl = (m.length - iso) / iso
    de = (m.length * m.energy - 2 * PI2) / (2 * PI2)
    rep = _report("deficits", de, dl, _tol(rtol, de, dl), dict(m.to_dict(), delta_L=dl, delta_E=de))
    return dl, de, rep


# --------------------------------------------------------------------------
# radii

def _welzl(points: np.ndarray, seed: int = 0) -> tuple[tuple[float, float], float]:
    """Smallest enclosing circle of a point set (randomized incremental)."""
    pts = [tuple(p) for p in points]
    random.Random(seed).shuffle(pts)

    def circ2(a, b):
        c = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        return c, math.dist(a, c)

    def circ3(a, b, c):
        ax, ay = a
        bx, by = b[0] - ax, b[1] - ay
        cx, cy = c[0] - ax, c[1] - ay
        d = 2 * (bx * cy - by * cx)
        if abs(d) < 1e-300:
            return None
        ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / d
        uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / d
        return (ax + ux, ay + uy), math.hypot(ux, uy)

    def inside(c, p):
        return math.dist(c[0], p) <= c[1] * (1 + 1e-12) + 1e-15

    circle = (pts[0], 0.0)
    for i, p in enumerate(pts):
        if inside(circle, p):
            continue
        circle = (p, 0.0)
        for j in range(i):
            q = pts[j]
            if inside(circle, q):
                continue
            circle = circ2(p, q)
            for k in range(j):
                r = pts[k]
                if inside(circle, r):
                    continue
                cc = circ3(p, q, r)
                if cc is not None:
                    circle = cc
    return circle


class _Boundary:
    """Primitive data packed into arrays for vectorized distance queries."""

    def __init__(self, curve: ArcSpline):
        segs = [p for p in curve.primitives if isinstance(p, Segment)]
        arcs = [p for p in curve.primitives if isinstance(p, Arc)]
        self.sa = np.array([p.start for p in segs], dtype=float).reshape(-1, 2)
        self.sb = np.array([p.end for p in segs], dtype=float).reshape(-1, 2)
        self.cen = np.array([p.center for p in arcs], dtype=float).reshape(-1, 2)
        self.rad = np.array([p.radius for p in arcs], dtype=float)
        self.a0 = np.array([p.start_angle for p in arcs], dtype=float)
        self.sgn = np.array([p.sign for p in arcs], dtype=float)
        self.span = np.array([abs(p.sweep) for p in arcs], dtype=float)
        self.ends = np.array([q for p in curve.primitives for q in (p.start_point, p.end_point)])

    def _on_arc(self, ang):
        return np.mod((ang - self.a0) * self.sgn, 2 * PI) <= self.span

    def farthest(self, c) -> float:
        c = np.asarray(c, dtype=float)
        best = np.max(np.hypot(*(self.ends - c).T))
        if len(self.rad):
            rel = c - self.cen
            ang = np.arctan2(-rel[:, 1], -rel[:, 0])
            far = np.hypot(*rel.T) + self.rad
            on = self._on_arc(ang)
            if on.any():
                best = max(best, far[on].max())
        return float(best)

    def distance(self, pts) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        d_end = np.min(np.hypot(pts[:, None, 0] - self.ends[None, :, 0],
                                pts[:, None, 1] - self.ends[None, :, 1]), axis=1)
        best = d_end
        if len(self.sa):
            ab = self.sb - self.sa                                   # (s, 2)
            rel = pts[:, None, :] - self.sa[None, :, :]              # (n, s, 2)
            t = np.clip(np.einsum("nsk,sk->ns", rel, ab) / np.maximum(np.einsum("sk,sk->s", ab, ab), 1e-300),
                        0.0, 1.0)
            proj = self.sa[None] + t[..., None] * ab[None]
            best = np.minimum(best, np.min(np.hypot(*(pts[:, None, :] - proj).transpose(2, 0, 1)), axis=1))
        if len(self.rad):
            rel = pts[:, None, :] - self.cen[None, :, :]
            rho = np.hypot(rel[..., 0], rel[..., 1])
            on = self._on_arc(np.arctan2(rel[..., 1], rel[..., 0]))
            d = np.where(on, np.abs(rho - self.rad[None, :]), np.inf)
            best = np.minimum(best, d.min(axis=1))
        return best


def farthest_distance(curve: ArcSpline, c) -> float:
    """Exact max distance from ``c`` to the curve."""
    return _Boundary(curve).farthest(c)


def _boundary_distance(curve: ArcSpline, pts) -> np.ndarray:
    """Vectorized distance from each point to the curve."""
    return _Boundary(curve).distance(pts)


def _inside_polygon(poly: np.ndarray, pts: np.ndarray) -> np.ndarray:
    x, y = pts[:, 0][:, None], pts[:, 1][:, None]
    x0, y0 = poly[:, 0][None, :], poly[:, 1][None, :]
    x1, y1 = np.roll(poly[:, 0], -1)[None, :], np.roll(poly[:, 1], -1)[None, :]
    cond = (y0 > y) != (y1 > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xc = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
    return (np.sum(cond & (x < xc), axis=1) % 2) == 1


def compute_radii(curve: ArcSpline, rtol: float = RADII_RTOL, samples: int = 2048,
                  seeds: int = 40) -> Radii:
    """Inradius and outer radius of the region bounded by ``curve``."""
    bd = _Boundary(curve)
    pts = sample(curve, samples)
    c0, _ = _welzl(np.vstack([pts, bd.ends]))
    res = minimize(bd.farthest, np.asarray(c0), method="Nelder-Mead",
                   options={"xatol": 1e-12 * max(1.0, curve.scale), "fatol": 1e-14, "maxiter": 4000})
    R_c = tuple(res.x) if res.fun <= bd.farthest(c0) else tuple(c0)
    R = bd.farthest(R_c)

    lo, hi = pts.min(axis=0), pts.max(axis=0)
    g = np.linspace(0.0, 1.0, seeds + 2)[1:-1]
    grid = np.array([(lo[0] + u * (hi[0] - lo[0]), lo[1] + v * (hi[1] - lo[1])) for u in g for v in g])
    grid = grid[_inside_polygon(pts, grid)]
    if len(grid) == 0:
        grid = np.array([pts.mean(axis=0)])
    dist = bd.distance(grid)
    order = np.argsort(-dist)[:8]

    def neg(p):
        d = float(bd.distance(p)[0])
        return -d if _inside_polygon(pts, p[None, :])[0] else d

    best_r, best_c = 0.0, tuple(grid[order[0]])
    for k in order:
        r = minimize(neg, grid[k], method="Nelder-Mead",
                     options={"xatol": 1e-12 * max(1.0, curve.scale), "fatol": 1e-15, "maxiter": 4000})
        if -r.fun > best_r and contains(curve, r.x):
            best_r, best_c = -r.fun, tuple(r.x)
    return Radii(float(best_r), float(R), tuple(map(float, best_c)), tuple(map(float, R_c)), rtol)


def _radii_band(radii: Radii, coeff: float, L: float) -> float:
    """Uncertainty of coeff (R - r)^2 / L^2 caused by the radii tolerance."""
    err = radii.rtol * (radii.outer_radius + radii.inradius)
    d = abs(radii.outer_radius - radii.inradius)
    return coeff * (2 * d * err + err * err) / (L * L)


def _radii_check(name, curve, coeff, radii, rtol):
    m = _metrics(curve)
    radii = radii or compute_radii(curve)
    lhs = m.length * m.energy - 2 * PI2
    d = radii.outer_radius - radii.inradius
    rhs = coeff * d * d / m.length ** 2
    inputs = dict(m.to_dict(), **radii.to_dict())
    return _report(name, lhs, rhs, _tol(rtol, m.length * m.energy), inputs,
                   inconclusive_band=_radii_band(radii, coeff, m.length), note=radii.convention)


def check_enomoto(curve: ArcSpline, radii: Radii | None = None, rtol: float = DEFAULT_RTOL) -> InequalityReport:
    """L E - 2 pi^2 >= pi^2 (R - r)^2 / L^2."""
    return _radii_check("enomoto", curve, PI2, radii, rtol)


def check_bonnesen_improved(curve: ArcSpline, radii: Radii | None = None,
                            rtol: float = DEFAULT_RTOL) -> InequalityReport:
    """L E - 2 pi^2 >= pi^4 (R - r)^2 / L^2."""
    return _radii_check("bonnesen_improved", curve, PI4, radii, rtol)


def two_convex_bound(omega: ArcSpline, omega2: ArcSpline, e1: float, e2: float,
                     rtol: float = DEFAULT_RTOL) -> InequalityReport:
    """(Area + Area') (E1 + E2)^2 >= pi^3 for two disjoint convex sets."""
    a1, a2 = signed_area(omega), signed_area(omega2)
    lhs = (a1 + a2) * (e1 + e2) ** 2
    return _report("two_convex", lhs, PI3, _tol(rtol, lhs, PI3),
                   {"area_1": a1, "area_2": a2, "energy_1": e1, "energy_2": e2})


# --------------------------------------------------------------------------
# stationarity

def _periodic_derivative(f: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order central difference on a periodic grid."""
    return (-np.roll(f, -2) + 8 * np.roll(f, -1) - 8 * np.roll(f, 1) + np.roll(f, 2)) / (12 * h)


def euler_lagrange_residual(points) -> tuple[float, float]:
    """Mean and variance of k'' + k^3/2 along a densely sampled smooth closed
    curve (``points`` is an (n, 2) array, no repeated endpoint)."""
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[1] != 2 or len(P) < 16:
        raise ValueError("points must be an (n, 2) array with n >= 16")
    h = 1.0 / len(P)
    dx, dy = _periodic_derivative(P[:, 0], h), _periodic_derivative(P[:, 1], h)
    ddx, ddy = _periodic_derivative(dx, h), _periodic_derivative(dy, h)
    speed = np.hypot(dx, dy)
    k = (dx * ddy - dy * ddx) / speed ** 3
    ks = _periodic_derivative(k, h) / speed
    kss = _periodic_derivative(ks, h) / speed
    res = kss + 0.5 * k ** 3
    return float(res.mean()), float(res.var())


# --------------------------------------------------------------------------
# aggregated reports

def all_checks(curve: ArcSpline, radii: Radii | None = None, rtol: float = DEFAULT_RTOL) -> list[InequalityReport]:
    radii = radii or compute_radii(curve)
    return [check_main(curve, rtol), check_fixed_length(curve, rtol), deficits(curve, rtol)[2],
            check_gage(curve, rtol), check_enomoto(curve, radii, rtol),
            check_bonnesen_improved(curve, radii, rtol)]


def report(curve: ArcSpline, curve_id: str = "curve", rtol: float = DEFAULT_RTOL) -> dict:
    radii = compute_radii(curve)
    return {"curve_id": curve_id, "metrics": metrics(curve).to_dict(), "radii": radii.to_dict(),
            "checks": [r.to_dict() for r in all_checks(curve, radii, rtol)]}


CSV_FIELDS = ["curve_id", "check", "lhs", "rhs", "slack", "satisfied", "status"]


def reports_to_csv(reports: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for rep in reports:
        for c in rep["checks"]:
            w.writerow({"curve_id": rep["curve_id"], "check": c["name"], "lhs": repr(c["lhs"]),
                        "rhs": repr(c["rhs"]), "slack": repr(c["slack"]),
                        "satisfied": c["satisfied"], "status": c["status"]})
    return buf.getvalue()
