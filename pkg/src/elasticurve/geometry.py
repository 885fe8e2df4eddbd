"""Closed-form intersection and distance predicates between primitives."""
from __future__ import annotations

import math

from .primitives import Arc, Primitive, Segment

PARAM_TOL = 1e-12


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _seg_seg(a: Segment, b: Segment) -> list[tuple[float, float]]:
    (px, py), (qx, qy) = a.start, b.start
    rx, ry = a.end[0] - px, a.end[1] - py
    sx, sy = b.end[0] - qx, b.end[1] - qy
    denom = _cross(rx, ry, sx, sy)
    wx, wy = qx - px, qy - py
    scale = math.hypot(rx, ry) * math.hypot(sx, sy)
    if abs(denom) <= 1e-14 * scale:
        # parallel; overlapping only if collinear
        rlen = math.hypot(rx, ry)
        if abs(_cross(wx, wy, rx, ry)) / rlen > 1e-12 * (rlen + math.hypot(wx, wy)):
            return []
        rr = rx * rx + ry * ry
        t0 = (wx * rx + wy * ry) / rr
        t1 = t0 + (sx * rx + sy * ry) / rr
        lo, hi = max(0.0, min(t0, t1)), min(1.0, max(t0, t1))
        if lo > hi + PARAM_TOL:
            return []
        out = []
        for t in (lo, hi):
            u = (t - t0) / (t1 - t0) if t1 != t0 else 0.0
            out.append((t, min(max(u, 0.0), 1.0)))
        return out
    t = _cross(wx, wy, sx, sy) / denom
    u = _cross(wx, wy, rx, ry) / denom
    if -PARAM_TOL <= t <= 1 + PARAM_TOL and -PARAM_TOL <= u <= 1 + PARAM_TOL:
        t, u = min(max(t, 0.0), 1.0), min(max(u, 0.0), 1.0)
        # nearly parallel lines give ill-conditioned parameters; confirm the points meet
        gap = math.hypot(px + t * rx - qx - u * sx, py + t * ry - qy - u * sy)
        if gap <= 1e-12 * (1.0 + math.hypot(rx, ry) + math.hypot(sx, sy) + abs(px) + abs(py)):
            return [(t, u)]
    return []


def _seg_arc(a: Segment, b: Arc) -> list[tuple[float, float]]:
    (px, py) = a.start
    dx, dy = a.end[0] - px, a.end[1] - py
    cx, cy = b.center
    fx, fy = px - cx, py - cy
    A = dx * dx + dy * dy
    B = 2.0 * (fx * dx + fy * dy)
    C = fx * fx + fy * fy - b.radius * b.radius
    disc = B * B - 4 * A * C
    if disc < 0.0:
        return []
    sq = math.sqrt(disc)
    roots = {(-B - sq) / (2 * A), (-B + sq) / (2 * A)}
    out = []
    for t in roots:
        if -PARAM_TOL <= t <= 1 + PARAM_TOL:
            t = min(max(t, 0.0), 1.0)
            x, y = px + t * dx, py + t * dy
            u = b.param_of_angle(math.atan2(y - cy, x - cx))
            if u is not None:
                out.append((t, u))
    return out


def _arc_arc(a: Arc, b: Arc) -> list[tuple[float, float]]:
    (x0, y0), (x1, y1) = a.center, b.center
    r0, r1 = a.radius, b.radius
    dx, dy = x1 - x0, y1 - y0
    d = math.hypot(dx, dy)
    if d <= 1e-14 * max(r0, r1):
        if abs(r0 - r1) > 1e-14 * max(r0, r1):
            return []
        # same circle: report overlap endpoints
        out = []
        for t in (0.0, 1.0):
            u = b.param_of_angle(a.angle_at(t), tol=1e-12)
            if u is not None:
                out.append((t, u))
        for u in (0.0, 1.0):
            t = a.param_of_angle(b.angle_at(u), tol=1e-12)
            if t is not None:
                out.append((t, u))
        return out
    if d > r0 + r1 or d < abs(r0 - r1):
        return []
    aa = (r0 * r0 - r1 * r1 + d * d) / (2 * d)
    h2 = r0 * r0 - aa * aa
    h = math.sqrt(h2) if h2 > 0.0 else 0.0
    mx, my = x0 + aa * dx / d, y0 + aa * dy / d
    pts = {(mx + h * dy / d, my - h * dx / d), (mx - h * dy / d, my + h * dx / d)}
    out = []
    for (x, y) in pts:
        t = a.param_of_angle(math.atan2(y - y0, x - x0))
        u = b.param_of_angle(math.atan2(y - y1, x - x1))
        if t is not None and u is not None:
            out.append((t, u))
    return out


def intersect(a: Primitive, b: Primitive) -> list[tuple[float, float]]:
    """Parameters ``(t_a, t_b)`` of all intersection points of two primitives."""
    if isinstance(a, Segment):
        if isinstance(b, Segment):
            return _seg_seg(a, b)
        return _seg_arc(a, b)
    if isinstance(b, Segment):
        return [(t, u) for (u, t) in _seg_arc(b, a)]
    return _arc_arc(a, b)


def closest_point(p: tuple[float, float], prim: Primitive) -> tuple[float, float]:
    """``(distance, t)`` of the point of ``prim`` closest to ``p``."""
    if isinstance(prim, Segment):
        (x0, y0), (x1, y1) = prim.start, prim.end
        dx, dy = x1 - x0, y1 - y0
        ll = dx * dx + dy * dy
        t = ((p[0] - x0) * dx + (p[1] - y0) * dy) / ll if ll > 0 else 0.0
        t = min(max(t, 0.0), 1.0)
        return math.hypot(p[0] - x0 - t * dx, p[1] - y0 - t * dy), t
    cx, cy = prim.center
    rho = math.hypot(p[0] - cx, p[1] - cy)
    if rho > 0.0:
        t = prim.param_of_angle(math.atan2(p[1] - cy, p[0] - cx), tol=0.0)
        if t is not None:
            return abs(rho - prim.radius), t
    d0 = math.dist(p, prim.start_point)
    d1 = math.dist(p, prim.end_point)
    return (d0, 0.0) if d0 <= d1 else (d1, 1.0)


def point_distance(p, prim: Primitive) -> float:
    return closest_point(p, prim)[0]


def closest_pair(a: Primitive, b: Primitive) -> tuple[float, float, float]:
    """``(distance, t_a, t_b)`` realizing the distance between two primitives.

    Candidates are intersection points, endpoint projections, and the
    mutual-normal points of the supporting circles/lines; this set contains
    the minimizer for segments and circular arcs.
    """
    hits = intersect(a, b)
    if hits:
        t, u = hits[0]
        return 0.0, t, u
    cands = []
    for t in (0.0, 1.0):
        d, u = closest_point(a.point(t), b)
        cands.append((d, t, u))
    for u in (0.0, 1.0):
        d, t = closest_point(b.point(u), a)
        cands.append((d, t, u))
    if isinstance(a, Arc) and isinstance(b, Arc):
        (x0, y0), (x1, y1) = a.center, b.center
        d = math.hypot(x1 - x0, y1 - y0)
        if d > 0.0:
            base = math.atan2(y1 - y0, x1 - x0)
            for aa in (base, base + math.pi):
                t = a.param_of_angle(aa, tol=0.0)
                if t is None:
                    continue
                pa = a.point(t)
                for bb in (base, base + math.pi):
                    u = b.param_of_angle(bb, tol=0.0)
                    if u is None:
                        continue
                    cands.append((math.dist(pa, b.point(u)), t, u))
    elif isinstance(a, Arc) or isinstance(b, Arc):
        arc, seg, flip = (a, b, False) if isinstance(a, Arc) else (b, a, True)
        d, u = closest_point(arc.center, seg)
        foot = seg.point(u)
        if 0.0 < u < 1.0 and d > 0.0:
            ang = math.atan2(foot[1] - arc.center[1], foot[0] - arc.center[0])
            for aa in (ang, ang + math.pi):
                t = arc.param_of_angle(aa, tol=0.0)
                if t is None:
                    continue
                pa = arc.point(t)
                dd, uu = closest_point(pa, seg)
                cands.append((dd, uu, t) if flip else (dd, t, uu))
    return min(cands, key=lambda c: c[0])
