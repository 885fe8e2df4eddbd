"""Exact convex hull of an arc-spline, as a convex arc-spline.

The hull is read off the support function h(theta) = max over the curve of
<x, n(theta)>.  Every arc contributes c.n + R on its range of polar angles
and every joint contributes p.n; the upper envelope of these pieces gives
hull arcs (where an arc wins) and bridging segments (at the switches).
"""
from __future__ import annotations

import math

import numpy as np

from .curve import ArcSpline, signed_area
from .primitives import Arc, Segment

TWO_PI = 2.0 * math.pi


class _Elements:
    def __init__(self, curve: ArcSpline):
        self.kind, self.a, self.b, self.lo, self.span = [], [], [], [], []
        for p in curve.primitives:
            self._add("point", p.start_point, 0.0, 0.0, TWO_PI)
            if isinstance(p, Arc):
                lo = p.start_angle if p.sweep > 0 else p.end_angle
                self._add("arc", p.center, p.radius, lo, abs(p.sweep))
        self.A = np.array(self.a, dtype=float)
        self.B = np.array(self.b, dtype=float)
        self.LO = np.array(self.lo, dtype=float)
        self.SPAN = np.array(self.span, dtype=float)
        self.is_arc = np.array([k == "arc" for k in self.kind])

    def _add(self, kind, a, b, lo, span):
        self.kind.append(kind)
        self.a.append(a)
        self.b.append(b)
        self.lo.append(lo)
        self.span.append(span)

    def values(self, th) -> np.ndarray:
        """(len(th), n_elements) support values, -inf outside arc ranges."""
        th = np.atleast_1d(np.asarray(th, dtype=float))
        v = np.cos(th)[:, None] * self.A[None, :, 0] + np.sin(th)[:, None] * self.A[None, :, 1] + self.B[None, :]
        off = np.mod(th[:, None] - self.LO[None, :], TWO_PI) > self.SPAN[None, :] + 1e-15
        v[off & self.is_arc[None, :]] = -np.inf
        return v

    def point(self, e, th):
        a = self.A[e]
        return (a[0] + self.B[e] * math.cos(th), a[1] + self.B[e] * math.sin(th))

    def crossing(self, e1, e2, t0, t1):
        """Angle in [t0, t1] where elements e1 and e2 have equal support."""
        d = self.A[e1] - self.A[e2]
        rhs = self.B[e2] - self.B[e1]
        r = math.hypot(d[0], d[1])
        cands = []
        if r > 0 and abs(rhs) <= r:
            base = math.atan2(d[1], d[0])
            off = math.acos(max(-1.0, min(1.0, rhs / r)))
            for th in (base + off, base - off):
                th = t0 + math.fmod(th - t0, TWO_PI)
                if th < t0:
                    th += TWO_PI
                if th <= t1:
                    cands.append(th)
        # an arc may also stop winning at the end of its own range
        for e in (e1, e2):
            if self.is_arc[e]:
                for th in (self.LO[e], self.LO[e] + self.SPAN[e]):
                    th = t0 + math.fmod(th - t0, TWO_PI)
                    if th < t0:
                        th += TWO_PI
                    if th <= t1:
                        cands.append(th)
        return min(cands) if cands else None


def _winner(el: _Elements, th: float) -> int:
    v = el.values([th])[0]
    m = v.max()
    ties = np.flatnonzero(v >= m - 1e-12 * max(1.0, abs(m)))
    arcs = [e for e in ties if el.is_arc[e]]
    return int(arcs[0] if arcs else ties[0])


def _envelope(el: _Elements, grid: int):
    th = np.linspace(0.0, TWO_PI, grid + 1)
    pieces = []          # (theta_start, element)

    def refine(t0, e0, t1, e1, depth=0):
        if e0 == e1:
            return
        if depth > 60 or t1 - t0 <= 1e-15:
            pieces.append((t1, e1))
            return
        tc = el.crossing(e0, e1, t0, t1)
        mid = 0.5 * (t0 + t1) if tc is None else tc
        em = _winner(el, min(max(mid + 1e-13, t0), t1))
        if tc is not None and em == e1:
            pieces.append((tc, e1))
            return
        if tc is not None and em == e0 and _winner(el, min(tc + 1e-11, t1)) == e1:
            pieces.append((tc, e1))
            return
        m = 0.5 * (t0 + t1)
        emid = _winner(el, m)
        refine(t0, e0, m, emid, depth + 1)
        refine(m, emid, t1, e1, depth + 1)

    winners = [_winner(el, t) for t in th]
    pieces.append((0.0, winners[0]))
    for i in range(grid):
        refine(th[i], winners[i], th[i + 1], winners[i + 1])
    # merge repeats
    out = []
    for t, e in pieces:
        if out and out[-1][1] == e:
            continue
        out.append((t, e))
    if len(out) > 1 and out[-1][1] == out[0][1]:
        t, e = out.pop()
        out[0] = (t - TWO_PI, e)
    return out


def convex_hull(curve: ArcSpline, grid: int = 2048) -> ArcSpline:
    """Convex hull boundary of the region bounded by ``curve``."""
    if curve.curve_class == "K" and signed_area(curve) <= 1e-12 * curve.scale ** 2:
        raise ValueError("degenerate curve: nonpositive enclosed area")
    el = _Elements(curve)
    env = _envelope(el, grid)
    n = len(env)
    prims = []
    scale = max(1.0, curve.scale)
    for k in range(n):
        t0, e = env[k]
        t1 = env[(k + 1) % n][0]
        if k == n - 1:
            t1 += TWO_PI
        if el.is_arc[e] and t1 - t0 > 1e-14:
            prims.append(Arc.from_sweep(tuple(el.A[e]), float(el.B[e]), t0, t1 - t0))
        nxt = env[(k + 1) % n][1]
        p, q = el.point(e, t1), el.point(nxt, t1)
        if math.dist(p, q) > 1e-12 * scale:
            prims.append(Segment(p, q))
    return ArcSpline(tuple(prims), "K", curve.tol, curve.angle_tol)


def diameter(curve: ArcSpline) -> float:
    """Largest distance between two points of the curve (exact)."""
    ends = np.array([p.start_point for p in curve.primitives])
    diff = ends[:, None, :] - ends[None, :, :]
    best = float(np.max(np.hypot(diff[..., 0], diff[..., 1])))
    arcs = [p for p in curve.primitives if isinstance(p, Arc)]
    for a in arcs:
        rel = ends - np.asarray(a.center)
        ang = np.arctan2(-rel[:, 1], -rel[:, 0])
        on = np.mod((ang - a.start_angle) * a.sign, TWO_PI) <= abs(a.sweep)
        if on.any():
            best = max(best, float(np.max(np.hypot(rel[on, 0], rel[on, 1]))) + a.radius)
    for i, a in enumerate(arcs):
        for b in arcs[i + 1:]:
            dx, dy = a.center[0] - b.center[0], a.center[1] - b.center[1]
            d = math.hypot(dx, dy)
            if d == 0.0:
                # concentric: the angle ranges of a and of b rotated by pi must overlap
                b0 = min(b.start_angle, b.end_angle) + math.pi
                a0 = min(a.start_angle, a.end_angle)
                ok = (a.param_of_angle(b0, 0.0) is not None
                      or b.param_of_angle(a0 - math.pi, 0.0) is not None)
            else:
                u = math.atan2(dy, dx)
                ok = a.param_of_angle(u, 0.0) is not None and b.param_of_angle(u + math.pi, 0.0) is not None
            if ok:
                best = max(best, d + a.radius + b.radius)
    return best
