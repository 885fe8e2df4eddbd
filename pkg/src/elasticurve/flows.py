"""Explicit curve shortening flow on closed polygons."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .curve import ArcSpline, sample
from .inequalities import InequalityReport, _report

PI3 = math.pi ** 3


class FlowError(RuntimeError):
    pass


@dataclass
class PolyCurve:
    points: np.ndarray
    resample_spacing: float

    @classmethod
    def from_curve(cls, curve: ArcSpline, n: int = 512) -> "PolyCurve":
        return cls(sample(curve, n), curve.length / n)

    @classmethod
    def from_points(cls, points, spacing: float | None = None) -> "PolyCurve":
        P = np.asarray(points, dtype=float)
        if spacing is None:
            spacing = polygon_length(P) / len(P)
        return cls(P, float(spacing))

    def __len__(self) -> int:
        return len(self.points)


def polygon_length(P: np.ndarray) -> float:
    d = np.roll(P, -1, axis=0) - P
    return float(np.hypot(d[:, 0], d[:, 1]).sum())


def polygon_area(P: np.ndarray) -> float:
    x, y = P[:, 0], P[:, 1]
    return float(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _turning_and_edges(P: np.ndarray):
    e = np.roll(P, -1, axis=0) - P                      # edge i: P[i] -> P[i+1]
    le = np.hypot(e[:, 0], e[:, 1])
    ang = np.arctan2(e[:, 1], e[:, 0])
    turn = np.angle(np.exp(1j * (ang - np.roll(ang, 1))))   # exterior angle at vertex i
    mean = 0.5 * (le + np.roll(le, 1))
    return turn, mean, le


def discrete_curvature(P: np.ndarray) -> np.ndarray:
    """Exterior turning angle divided by the mean adjacent edge length."""
    turn, mean, _ = _turning_and_edges(P)
    return turn / mean


def polygon_energy(P: np.ndarray) -> float:
    turn, mean, _ = _turning_and_edges(P)
    return float(0.5 * np.sum(turn ** 2 / mean))


def resample(P: np.ndarray, spacing: float) -> np.ndarray:
    """Uniform resampling along a periodic cubic spline through ``P``."""
    Q = np.vstack([P, P[:1]])
    d = np.hypot(*np.diff(Q, axis=0).T)
    s = np.concatenate([[0.0], np.cumsum(d)])
    cs = CubicSpline(s, Q, bc_type="periodic")
    # arc length of the spline on a fine grid, then invert
    fine = np.linspace(0.0, s[-1], 8 * len(P) + 1)
    der = cs(fine, 1)
    speed = np.hypot(der[:, 0], der[:, 1])
    arc = np.concatenate([[0.0], np.cumsum(0.5 * (speed[1:] + speed[:-1]) * np.diff(fine))])
    n = max(int(round(arc[-1] / spacing)), 16)
    targets = np.linspace(0.0, arc[-1], n, endpoint=False)
    return cs(np.interp(targets, arc, fine))


def is_simple_polygon(P: np.ndarray) -> bool:
    """All-pairs proper segment intersection test (adjacent edges skipped)."""
    A, B = P, np.roll(P, -1, axis=0)
    n = len(P)

    def orient(p, q, r):
        return (q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1]) - (q[..., 1] - p[..., 1]) * (r[..., 0] - p[..., 0])

    i, j = np.triu_indices(n, k=2)
    keep = ~((i == 0) & (j == n - 1))
    i, j = i[keep], j[keep]
    a, b, c, d = A[i], B[i], A[j], B[j]
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return not np.any((o1 * o2 < 0) & (o3 * o4 < 0))


def csf_step(curve: PolyCurve, dt: float, check: bool = True, resample_now: bool = True) -> PolyCurve:
    """One explicit Euler step: every vertex moves by k n dt."""
    h = curve.resample_spacing
    if dt > 0.25 * h * h * (1 + 1e-12):
        raise FlowError(f"dt={dt} exceeds the stability bound 0.25*spacing^2={0.25 * h * h}")
    P = curve.points
    turn, mean, _ = _turning_and_edges(P)
    k = turn / mean
    t = np.roll(P, -1, axis=0) - np.roll(P, 1, axis=0)
    nrm = np.column_stack([-t[:, 1], t[:, 0]]) / np.hypot(t[:, 0], t[:, 1])[:, None]   # inward for ccw
    Q = P + dt * k[:, None] * nrm
    if resample_now:
        Q = resample(Q, h)
    if check and not is_simple_polygon(Q):
        raise FlowError("polygon lost simplicity; reduce dt")
    return PolyCurve(Q, h)


@dataclass
class FlowRecord:
    t: float
    L: float
    A: float
    E: float
    dLdt: float = math.nan
    bound: float = math.nan          # -2 sqrt(pi^3 / (A0 - 2 pi t))
    bound_area: float = math.nan     # -2 sqrt(pi^3 / A(t))

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class FlowResult:
    records: list
    report: InequalityReport
    area_rate: InequalityReport
    extinction_time: float

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "L", "A", "E", "dLdt", "bound"])
        for r in self.records:
            w.writerow([repr(r.t), repr(r.L), repr(r.A), repr(r.E), repr(r.dLdt), repr(r.bound)])
        return buf.getvalue()


def csf_run(curve, dt: float | None = None, steps: int | None = None, n: int = 512,
            record_every: int = 20, resample_every: int = 10, check_every: int = 200,
            stop_fraction: float = 0.9, rtol: float = 1e-2) -> FlowResult:
    """Run the flow up to ``stop_fraction`` of the extinction time A0/(2 pi)
    (or ``steps`` steps, whichever comes first) and check the length-rate
    bound at every recorded time."""
    pc = curve if isinstance(curve, PolyCurve) else PolyCurve.from_curve(curve, n)
    h = pc.resample_spacing
    if dt is None:
        dt = 0.2 * h * h
    A0 = polygon_area(pc.points)
    if A0 <= 0:
        raise FlowError("curve must be positively oriented")
    T = A0 / (2 * math.pi)
    t_stop = stop_fraction * T
    records = []
    t, k = 0.0, 0
    P = pc
    while True:
        if k % record_every == 0:
            X = P.points
            records.append(FlowRecord(t, polygon_length(X), polygon_area(X), polygon_energy(X)))
        if t + dt > t_stop or (steps is not None and k >= steps):
            break
        P = csf_step(P, dt, check=(k + 1) % check_every == 0, resample_now=(k + 1) % resample_every == 0)
        t += dt
        k += 1
    if not is_simple_polygon(P.points):
        raise FlowError("polygon lost simplicity")
    for i in range(1, len(records) - 1):
        a, b = records[i - 1], records[i + 1]
        r = records[i]
        r.dLdt = (b.L - a.L) / (b.t - a.t)
        r.bound = -2 * math.sqrt(PI3 / max(A0 - 2 * math.pi * r.t, 1e-300))
        r.bound_area = -2 * math.sqrt(PI3 / r.A)
    inner = records[1:-1]
    if not inner:
        raise FlowError("run too short to estimate dL/dt")
    # worst relative slack of dL/dt <= bound  (written as -dL/dt >= -bound)
    worst = min(inner, key=lambda r: (-r.dLdt) / (-r.bound))
    rep = _report("flow_length_rate", -worst.dLdt, -worst.bound, rtol * abs(worst.bound),
                  {"t": worst.t, "A0": A0, "records": len(records)})
    rates = [(b.A - a.A) / (b.t - a.t) for a, b in zip(records, records[1:])]
    err = max(abs(x + 2 * math.pi) for x in rates)
    area_rep = _report("flow_area_rate", -err, -rtol * 2 * math.pi, 0.0,
                       {"max_abs_error": err, "target": -2 * math.pi})
    return FlowResult(records, rep, area_rep, T)
