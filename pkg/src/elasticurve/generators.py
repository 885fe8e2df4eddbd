"""Constructors for the named example curves and randomized corpora.

Most shapes are built either by a "turtle" walk (straight moves and turns
of given radius) or by a "belt": a cyclic list of oriented circles joined
by their common tangent segments.
"""
from __future__ import annotations

import logging
import math
from typing import Callable, Sequence

import numpy as np

from .curve import ArcSpline, validate
from .primitives import Arc, Segment

log = logging.getLogger(__name__)

PI = math.pi


class GeneratorError(ValueError):
    pass


# --------------------------------------------------------------------------
# building blocks

def turtle(start, heading: float, moves) -> list:
    """Primitives traced by straight moves ``("L", length)`` and turns
    ``("A", radius, turning)`` (positive turning = left/ccw)."""
    p = (float(start[0]), float(start[1]))
    h = float(heading)
    out = []
    for mv in moves:
        if mv[0] == "L":
            ln = float(mv[1])
            if ln < 0:
                raise GeneratorError(f"negative segment length {ln}")
            q = (p[0] + ln * math.cos(h), p[1] + ln * math.sin(h))
            if ln > 1e-14:
                out.append(Segment(p, q))
            p = q
        else:
            R, turn = float(mv[1]), float(mv[2])
            if turn == 0.0:
                continue
            s = 1.0 if turn > 0 else -1.0
            c = (p[0] - s * R * math.sin(h), p[1] + s * R * math.cos(h))
            arc = Arc.from_sweep(c, R, h - s * PI / 2, turn)
            out.append(arc)
            p = arc.end_point
            h += turn
    return out


def _tangent_heading(ca, Ra, sa, cb, Rb, sb) -> float:
    dx, dy = cb[0] - ca[0], cb[1] - ca[1]
    d = math.hypot(dx, dy)
    K = sb * Rb - sa * Ra
    if d <= abs(K):
        raise GeneratorError("belt circles too close for a common tangent")
    return math.atan2(dy, dx) - math.asin(K / d)


def belt(circles: Sequence[tuple]) -> ArcSpline:
    """Closed curve wrapping ``(cx, cy, radius, sign)`` circles in order.

    ``sign`` is +1 where the curve turns left around the circle (convex) and
    -1 where it turns right (concave).
    """
    m = len(circles)
    if m == 1:
        cx, cy, R, _ = circles[0]
        return make_circle(R, (cx, cy))
    psi = []
    for k in range(m):
        ax, ay, Ra, sa = circles[k]
        bx, by, Rb, sb = circles[(k + 1) % m]
        psi.append(_tangent_heading((ax, ay), Ra, sa, (bx, by), Rb, sb))
    prims = []
    for k in range(m):
        cx, cy, R, s = circles[k]
        h_in, h_out = psi[k - 1], psi[k]
        turn = h_out - h_in
        if s > 0:
            turn = math.fmod(turn, 2 * PI)
            if turn <= 0:
                turn += 2 * PI
        else:
            turn = math.fmod(turn, 2 * PI)
            if turn >= 0:
                turn -= 2 * PI
        if min(abs(turn), 2 * PI - abs(turn)) < 1e-9:
            raise GeneratorError(f"belt circle {k} is only touched by the tangent line")
        a0 = h_in - s * PI / 2
        arc = Arc.from_sweep((cx, cy), R, a0, turn)
        prims.append(arc)
        nx, ny, Rn, sn = circles[(k + 1) % m]
        q = (nx + sn * Rn * math.sin(h_out), ny - sn * Rn * math.cos(h_out))
        if math.dist(arc.end_point, q) > 1e-14 * max(1.0, R):
            prims.append(Segment(arc.end_point, q))
    return ArcSpline(tuple(prims))


# --------------------------------------------------------------------------
# convex shapes

def make_circle(radius: float = 1.0, center=(0.0, 0.0)) -> ArcSpline:
    if not radius > 0:
        raise GeneratorError("radius must be positive")
    return ArcSpline(tuple(Arc.from_sweep(center, radius, k * PI / 2 - PI / 2, PI / 2) for k in range(4)))


def make_stadium(r: float = 1.0, d: float = 1.0) -> ArcSpline:
    """Two semicircles of radius ``r`` joined by segments of length ``d``."""
    if not (r > 0 and d > 0):
        raise GeneratorError("stadium needs r > 0 and d > 0")
    moves = [("L", d), ("A", r, PI), ("L", d), ("A", r, PI)]
    return ArcSpline(tuple(turtle((-d / 2, -r), 0.0, moves)))


def make_rounded_polygon(vertices, radius: float) -> ArcSpline:
    """Convex polygon (counterclockwise vertices) with corners filleted at ``radius``."""
    V = np.asarray(vertices, dtype=float)
    n = len(V)
    if n < 3 or not radius > 0:
        raise GeneratorError("need >= 3 vertices and a positive radius")
    area = 0.5 * sum(V[i, 0] * V[(i + 1) % n, 1] - V[(i + 1) % n, 0] * V[i, 1] for i in range(n))
    if area <= 0:
        V = V[::-1]
    inset = []
    for i in range(n):
        e0 = V[i] - V[i - 1]
        e1 = V[(i + 1) % n] - V[i]
        if e0[0] * e1[1] - e0[1] * e1[0] <= 0:
            raise GeneratorError("polygon must be strictly convex")
        n0 = np.array([-e0[1], e0[0]]) / np.linalg.norm(e0)
        n1 = np.array([-e1[1], e1[0]]) / np.linalg.norm(e1)
        inset.append(V[i] + radius * (n0 + n1) / (1.0 + n0 @ n1))
    for i in range(n):
        # a fillet that eats a whole side flips the inset edge
        if (inset[i] - inset[i - 1]) @ (V[i] - V[i - 1]) <= 0:
            raise GeneratorError(f"fillet radius {radius} too large for side {i}")
    return belt([(float(c[0]), float(c[1]), radius, 1) for c in inset])


def regular_polygon(n: int, circumradius: float = 1.0, phase: float = 0.0) -> list:
    return [(circumradius * math.cos(phase + 2 * PI * k / n), circumradius * math.sin(phase + 2 * PI * k / n))
            for k in range(n)]


def square(side: float = 2.0) -> list:
    h = side / 2
    return [(-h, -h), (h, -h), (h, h), (-h, h)]


# --------------------------------------------------------------------------
# nonconvex shapes

def make_dumbbell(sep: float = 3.0, lobe_radius: float = 2.0, lobe_offset: float = 0.0,
                  neck: float = 0.5, bite_radius: float = 1.0) -> ArcSpline:
    """Two convex lobes joined by a neck of half-width ``neck`` carved by two
    concave bites of radius ``bite_radius``."""
    yb = neck + bite_radius
    return belt([(-sep, lobe_offset, lobe_radius, 1), (0.0, -yb, bite_radius, -1),
                 (sep, lobe_offset, lobe_radius, 1), (0.0, yb, bite_radius, -1)])


def make_h_dumbbell(y_t: float = 1.5, r: float = 1.0, half_width: float = 3.0,
                    half_height: float = 2.0, R: float = 2.0) -> ArcSpline:
    """Symmetric 'H' shaped dumbbell: four convex corner circles and two
    concave bites; each concave arc sweeps exactly pi."""
    return belt([(-half_width, -half_height, R, 1), (0.0, -y_t, r, -1),
                 (half_width, -half_height, R, 1), (half_width, half_height, R, 1),
                 (0.0, y_t, r, -1), (-half_width, half_height, R, 1)])


def make_necked_dumbbell(neck: float = 0.05, r: float = 1.0, R: float = 2.0, gap: float = 0.4,
                         rise: float = 0.5) -> ArcSpline:
    """'H' dumbbell whose bites sweep more than pi, so the reduction pinches
    the neck.  ``neck`` is the relative shortfall of the half width below
    ``R + r``; ``gap`` is half the neck opening; ``rise`` lifts the corner
    circles above the point where they would touch the bites."""
    if not (0.0 < neck < 1.0) or min(r, R, gap, rise) <= 0.0:
        raise GeneratorError("invalid necked dumbbell parameters")
    hw = (R + r) * (1.0 - neck)
    y_t = r + gap
    hh = y_t + math.sqrt((R + r) ** 2 - hw ** 2) + rise
    return make_h_dumbbell(y_t=y_t, r=r, half_width=hw, half_height=hh, R=R)


def make_dented_oval(half_length: float = 2.0, radius: float = 1.5, dent_depth: float = 0.5,
                     dent_radius: float = 1.0) -> ArcSpline:
    """Stadium-like oval with one concave dent on top."""
    yb = radius - dent_depth + dent_radius
    return belt([(-half_length, 0.0, radius, 1), (half_length, 0.0, radius, 1), (0.0, yb, dent_radius, -1)])


def make_flower(lobes: int = 4, ring: float = 2.0, lobe_radius: float = 1.2, bite_ring: float = 2.6,
                bite_radius: float = 0.6, phase: float = 0.0, jitter: Sequence[float] | None = None) -> ArcSpline:
    """``lobes`` convex lobes alternating with concave bites around a ring."""
    circles = []
    for k in range(lobes):
        a = phase + 2 * PI * k / lobes
        rr = ring * (1.0 + (jitter[k] if jitter is not None else 0.0))
        circles.append((rr * math.cos(a), rr * math.sin(a), lobe_radius, 1))
        b = a + PI / lobes
        circles.append((bite_ring * math.cos(b), bite_ring * math.sin(b), bite_radius, -1))
    return belt(circles)


def make_multi_lobe(centers, lobe_radii, bites) -> ArcSpline:
    """Belt from explicit lobes and bites; ``bites[k]`` (or None) sits between
    lobe k and lobe k+1 as ``(x, y, radius)``."""
    circles = []
    for k, (c, R) in enumerate(zip(centers, lobe_radii)):
        circles.append((c[0], c[1], R, 1))
        if bites[k] is not None:
            bx, by, br = bites[k]
            circles.append((bx, by, br, -1))
    return belt(circles)


def make_cusp_drop(alpha: float = PI / 3, r: float = 1.0) -> ArcSpline:
    """Class C horn: cusp at the origin pointing west, one convex lobe."""
    R = r * (1 - math.cos(alpha)) / math.cos(alpha)
    prims = turtle((0.0, 0.0), 0.0, [("A", r, -alpha), ("A", R, PI + 2 * alpha), ("A", r, -alpha)])
    return ArcSpline(tuple(prims), curve_class="C")


# --------------------------------------------------------------------------
# figure-1 family

FIG1_DEFAULTS = dict(block_width=2.5, block_height=5.0, outer_radius=1.0, inner_radius=1.0, d0=15.0)


def _fig1_parts(block_width, block_height, outer_radius, inner_radius):
    r, rho = outer_radius, inner_radius
    block = block_width * block_height - (4 - PI) * r * r
    fillets = 4 * rho * rho * (1 - PI / 4)
    return block, fillets


def figure1_default_area(**kw) -> float:
    p = {**FIG1_DEFAULTS, **kw}
    block, fillets = _fig1_parts(p["block_width"], p["block_height"], p["outer_radius"], p["inner_radius"])
    # bar of width 0.5 at n = 1
    return 2 * block + fillets + 0.5 * p["d0"]


def figure1_delta(n: int, base_area: float, **kw) -> float:
    """Bar width making the area equal ``base_area``.

    A = 2 A_block + delta d + 4 rho^2 (1 - pi/4) with d the gap between the
    blocks, so delta is linear in the area.
    """
    p = {**FIG1_DEFAULTS, **kw}
    block, fillets = _fig1_parts(p["block_width"], p["block_height"], p["outer_radius"], p["inner_radius"])
    d = p["d0"] * n
    return (base_area - 2 * block - fillets) / d


def make_figure1_family(n: int, base_area: float | None = None, **kw) -> ArcSpline:
    """H shaped curve: two rounded blocks joined by a bar of length ``d0 n``.

    Twelve quarter circles (eight convex of ``outer_radius``, four concave of
    ``inner_radius``) and twelve segments; the bar width shrinks with n so the
    area stays at ``base_area`` while the energy is fixed at
    ``2 pi / outer_radius + pi / inner_radius``.
    """
    if n < 1:
        raise GeneratorError("n must be >= 1")
    p = {**FIG1_DEFAULTS, **kw}
    w, h, r, rho, d0 = (p["block_width"], p["block_height"], p["outer_radius"], p["inner_radius"], p["d0"])
    if base_area is None:
        base_area = figure1_default_area(**kw)
    d = d0 * n
    delta = figure1_delta(n, base_area, **kw)
    side = h / 2 - delta / 2 - r - rho
    if w < 2 * r or h < 2 * r:
        raise GeneratorError("blocks too small for the outer radius")
    if delta <= 0 or side < 0 or d < 2 * rho:
        block, fillets = _fig1_parts(w, h, r, rho)
        excess = base_area - 2 * block - fillets
        if excess <= 0:
            raise GeneratorError("base_area too small: no positive bar width for any n")
        n_min = max(excess / ((h - 2 * (r + rho)) * d0), 2 * rho / d0) if h > 2 * (r + rho) else math.inf
        raise GeneratorError(f"no feasible bar width for n={n}; feasible n >= {math.ceil(n_min)}")
    moves = [("L", w - 2 * r), ("A", r, PI / 2), ("L", side), ("A", rho, -PI / 2),
             ("L", d - 2 * rho), ("A", rho, -PI / 2), ("L", side), ("A", r, PI / 2),
             ("L", w - 2 * r), ("A", r, PI / 2), ("L", h - 2 * r), ("A", r, PI / 2),
             ("L", w - 2 * r), ("A", r, PI / 2), ("L", side), ("A", rho, -PI / 2),
             ("L", d - 2 * rho), ("A", rho, -PI / 2), ("L", side), ("A", r, PI / 2),
             ("L", w - 2 * r), ("A", r, PI / 2), ("L", h - 2 * r), ("A", r, PI / 2)]
    start = (-d / 2 - w + r, -h / 2)
    return ArcSpline(tuple(turtle(start, 0.0, moves)))


# --------------------------------------------------------------------------
# biarc fitting

def _arc_through(p, t, q):
    """Primitive leaving ``p`` with unit tangent ``t`` and ending at ``q``."""
    vx, vy = q[0] - p[0], q[1] - p[1]
    cr = t[0] * vy - t[1] * vx
    dt = t[0] * vx + t[1] * vy
    chord2 = vx * vx + vy * vy
    if abs(cr) <= 1e-12 * chord2 ** 0.5 * max(1.0, chord2 ** 0.5) or abs(cr) < 1e-15:
        return Segment((p[0], p[1]), (q[0], q[1]))
    rho = chord2 / (2 * cr)          # signed radius, > 0 for left turns
    c = (p[0] - rho * t[1], p[1] + rho * t[0])
    sweep = 2 * math.atan2(cr, dt)
    a0 = math.atan2(p[1] - c[1], p[0] - c[0])
    return Arc.from_sweep(c, abs(rho), a0, sweep)


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def _biarc_joint(p0, t0, p1, t1, d1):
    v = (p1[0] - p0[0], p1[1] - p0[1])
    den = 2 * _dot(v, t1) + 2 * d1 * (1 - _dot(t0, t1))
    if abs(den) < 1e-300:
        return None
    d2 = (_dot(v, v) - 2 * d1 * _dot(v, t0)) / den
    if d1 <= 0 or d2 <= 0:
        return None
    w0, w1 = d2 / (d1 + d2), d1 / (d1 + d2)
    return ((p0[0] + d1 * t0[0]) * w0 + (p1[0] - d2 * t1[0]) * w1,
            (p0[1] + d1 * t0[1]) * w0 + (p1[1] - d2 * t1[1]) * w1)


def _circumcenter(a, b, c):
    d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
    big = max(1.0, abs(a[0]), abs(a[1]), abs(b[0]), abs(b[1]), abs(c[0]), abs(c[1]))
    if abs(d) < 1e-14 * big * big:
        return None
    sa, sb, sc = _dot(a, a), _dot(b, b), _dot(c, c)
    return ((sa * (b[1] - c[1]) + sb * (c[1] - a[1]) + sc * (a[1] - b[1])) / d,
            (sa * (c[0] - b[0]) + sb * (a[0] - c[0]) + sc * (b[0] - a[0])) / d)


def _two_arcs(p0, t0, pm, p1):
    a = _arc_through(p0, t0, pm)
    tm = (math.cos(a.heading_at(1.0)), math.sin(a.heading_at(1.0))) if isinstance(a, Arc) else t0
    return a, _arc_through(pm, tm, p1)


def biarc(p0, t0, p1, t1, target=None) -> list:
    """Biarc joining two point/tangent pairs (tangents unit).

    Without ``target`` the equal-parameter joint is used; with ``target``
    the joint is the point of the joint circle nearest to it.
    """
    p0, t0, p1, t1 = ((float(x[0]), float(x[1])) for x in (p0, t0, p1, t1))
    v = (p1[0] - p0[0], p1[1] - p0[1])
    tt = (t0[0] + t1[0], t0[1] + t1[1])
    vt = _dot(v, tt)
    denom = 2 * (1 - _dot(t0, t1))
    if denom < 1e-12:
        vt0 = _dot(v, t0)
        d = _dot(v, v) / (4 * vt0) if vt0 != 0 else 0.0
    else:
        d = (-vt + math.sqrt(vt * vt + denom * _dot(v, v))) / denom
    pm = (0.5 * (p0[0] + d * t0[0] + p1[0] - d * t1[0]), 0.5 * (p0[1] + d * t0[1] + p1[1] - d * t1[1]))
    a, b = _two_arcs(p0, t0, pm, p1)
    if target is not None and d > 0:
        j1, j2 = _biarc_joint(p0, t0, p1, t1, 0.5 * d), _biarc_joint(p0, t0, p1, t1, 1.5 * d)
        cc = _circumcenter(pm, j1, j2) if (j1 is not None and j2 is not None) else None
        if cc is not None:
            rad = math.dist(cc, pm)
            wx, wy = float(target[0]) - cc[0], float(target[1]) - cc[1]
            nw = math.hypot(wx, wy)
            if nw > 0:
                jm = (cc[0] + rad * wx / nw, cc[1] + rad * wy / nw)
                if math.dist(jm, pm) < 0.5 * math.dist(p0, p1):
                    a2, b2 = _two_arcs(p0, t0, jm, p1)
                    h_end = b2.heading_at(1.0)
                    if abs(math.sin(h_end) * t1[0] - math.cos(h_end) * t1[1]) < 1e-9 and \
                            math.cos(h_end) * t1[0] + math.sin(h_end) * t1[1] > 0:
                        a, b = a2, b2
    out = [x for x in (a, b) if x.length > 1e-14]
    if out:
        # snap the end exactly onto p1
        last = out[-1]
        if isinstance(last, Segment):
            out[-1] = Segment(last.start, p1)
    return out


def _merge_segments(prims: list) -> list:
    out = []
    for p in prims:
        if out and isinstance(p, Segment) and isinstance(out[-1], Segment):
            a = out[-1]
            d0 = np.subtract(a.end, a.start)
            d1 = np.subtract(p.end, p.start)
            if abs(d0[0] * d1[1] - d0[1] * d1[0]) <= 1e-12 * np.linalg.norm(d0) * np.linalg.norm(d1):
                out[-1] = Segment(a.start, p.end)
                continue
        out.append(p)
    return out


def biarc_fit(samples, tol: float = 1e-6, closed: bool = True, mids=None) -> ArcSpline:
    """Tangent-continuous arc-spline through ``(point, tangent)`` samples.

    Each consecutive pair is joined by a biarc; collinear runs collapse into
    segments.  ``tol`` bounds the closure snapping (deviation from the
    samples is controlled by sample density, see :func:`fit_parametric`).
    """
    pts = [np.asarray(p, dtype=float) for p, _ in samples]
    tans = [np.asarray(t, dtype=float) / np.linalg.norm(t) for _, t in samples]
    n = len(pts)
    if n < 2:
        raise GeneratorError("need at least two samples")
    prims = []
    rng = range(n) if closed else range(n - 1)
    for i in rng:
        j = (i + 1) % n
        prims.extend(biarc(pts[i], tans[i], pts[j], tans[j], None if mids is None else mids[i]))
    prims = _merge_segments(prims)
    if closed and len(prims) > 1 and isinstance(prims[0], Segment) and isinstance(prims[-1], Segment):
        merged = _merge_segments([prims[-1], prims[0]])
        if len(merged) == 1:
            prims = [merged[0]] + prims[1:-1]
    return ArcSpline(tuple(prims), tol=max(1e-9, tol * 1e-3))


def _deviation(prims: list, x) -> float:
    from .geometry import point_distance
    return min(point_distance(x, p) for p in prims)


def fit_parametric(f: Callable[[float], np.ndarray], df: Callable[[float], np.ndarray],
                   tol: float = 1e-6, n0: int = 32, max_samples: int = 1 << 14,
                   max_turn: float = PI / 64) -> ArcSpline:
    """Adaptive biarc fit of a smooth closed curve ``f`` on ``[0, 1)``.

    Intervals are bisected until the curve lies within ``tol`` of the biarc
    fitted over that interval (checked at quarter points) and the biarc turns
    by at most ``max_turn``; the second rule keeps the piecewise-constant
    curvature close enough for the energy to converge.
    """
    def unit_tangent(u):
        t = df(u % 1.0)
        n = math.hypot(t[0], t[1])
        return (t[0] / n, t[1] / n)

    def parts(a, b):
        """1 if the biarc over [a, b] is acceptable, else a suggested split count."""
        bi = biarc(f(a % 1.0), unit_tangent(a), f(b % 1.0), unit_tangent(b), f(0.5 * (a + b)))
        turn = sum(abs(x.turning) for x in bi)
        worst = max(_deviation(bi, f(a + fr * (b - a))) for fr in (0.25, 0.5, 0.75))
        if turn <= max_turn and worst <= tol:
            return 1
        # biarc deviation scales like h^3
        k = max(math.ceil(1.1 * (worst / tol) ** (1 / 3)), math.ceil(turn / max_turn), 2)
        return min(k, 16)

    params = []
    stack = [(k / n0, (k + 1) / n0) for k in range(n0 - 1, -1, -1)]
    budget = max_samples
    while stack:
        a, b = stack.pop()
        k = parts(a, b) if len(params) + len(stack) < budget else 1
        if k > 1:
            stack.extend((a + (b - a) * (i - 1) / k, a + (b - a) * i / k) for i in range(k, 0, -1))
        else:
            params.append(a)
    samples = [(f(u), df(u)) for u in params]
    ends = params[1:] + [1.0]
    return biarc_fit(samples, tol, mids=[f(0.5 * (a + b)) for a, b in zip(params, ends)])


def make_ellipse(a: float = 2.0, b: float = 1.0, tol: float = 1e-6) -> ArcSpline:
    f = lambda u: np.array([a * math.cos(2 * PI * u), b * math.sin(2 * PI * u)])  # noqa: E731
    df = lambda u: np.array([-a * math.sin(2 * PI * u), b * math.cos(2 * PI * u)])  # noqa: E731
    return fit_parametric(f, df, tol)


def ellipse_energy(a: float, b: float, n: int = 20000) -> float:
    """Quadrature value of the elastic energy of an ellipse."""
    th = np.linspace(0.0, 2 * PI, n, endpoint=False)
    q = a * a * np.sin(th) ** 2 + b * b * np.cos(th) ** 2
    return float(0.5 * np.sum(a * a * b * b / q ** 2.5) * (2 * PI / n))


# --------------------------------------------------------------------------
# random curves

def _radial(coef: np.ndarray):
    modes = [(k + 2, float(c[0]), float(c[1])) for k, c in enumerate(coef)]

    def radius(th):
        r, d = 1.0, 0.0
        for k, a, b in modes:
            ck, sk = math.cos(k * th), math.sin(k * th)
            r += a * ck + b * sk
            d += k * (b * ck - a * sk)
        return r, 2 * PI * d

    def f(u):
        th = 2 * PI * u
        r = radius(th)[0]
        return np.array([r * math.cos(th), r * math.sin(th)])

    def df(u):
        th = 2 * PI * u
        r, d = radius(th)
        c, s = math.cos(th), math.sin(th)
        return np.array([d * c - 2 * PI * r * s, d * s + 2 * PI * r * c])
    return f, df


class RandomStats:
    """Running rejection counters for :func:`make_random_simple`."""
    attempts = 0
    rejected = 0


def make_random_simple(seed: int, complexity: int = 4, tol: float = 1e-6, amplitude: float = 0.3,
                       max_attempts: int = 100, max_turn: float = PI / 16) -> ArcSpline:
    """Random smooth star-shaped curve fitted by biarcs, guaranteed simple.

    The radius is ``1 + sum_k a_k cos(k t) + b_k sin(k t)`` over
    ``complexity`` modes; invalid fits are redrawn, and after
    ``max_attempts`` rejections the amplitude is halved.
    """
    rng = np.random.default_rng(seed)
    amp = amplitude
    while True:
        for _ in range(max_attempts):
            RandomStats.attempts += 1
            if complexity <= 0:
                coef = np.zeros((0, 2))
            else:
                coef = rng.uniform(-1.0, 1.0, size=(complexity, 2)) * amp / np.arange(1, complexity + 1)[:, None]
            if complexity > 0 and np.sum(np.abs(coef)) >= 0.8:
                coef *= 0.8 / np.sum(np.abs(coef))
            f, df = _radial(coef)
            try:
                curve = fit_parametric(f, df, tol, max_turn=max_turn)
            except (GeneratorError, ValueError, ZeroDivisionError):
                RandomStats.rejected += 1
                continue
            if validate(curve).valid:
                return curve
            RandomStats.rejected += 1
        log.info("seed %s: %d rejections, widening smoothing", seed, max_attempts)
        amp *= 0.5


# --------------------------------------------------------------------------
# corpora

def nonconvex_corpus(count: int = 100, seed: int = 0) -> list[tuple[str, ArcSpline]]:
    """Deterministic mix of dumbbells, dented ovals and multi-lobe flowers."""
    rng = np.random.default_rng(seed)
    out = []
    k = 0
    while len(out) < count:
        kind = k % 3
        k += 1
        try:
            if kind == 0 and (k // 3) % 2 == 1:
                c = make_necked_dumbbell(neck=rng.uniform(0.02, 0.12), r=rng.uniform(0.8, 1.2),
                                         R=rng.uniform(1.6, 2.4), gap=rng.uniform(0.2, 0.6),
                                         rise=rng.uniform(0.3, 1.0))
                name = "dumbbell"
            elif kind == 0:
                c = make_dumbbell(sep=rng.uniform(2.6, 4.0), lobe_radius=rng.uniform(1.4, 2.2),
                                  lobe_offset=rng.uniform(-0.3, 0.3), neck=rng.uniform(0.25, 0.8),
                                  bite_radius=rng.uniform(0.5, 1.5))
                name = "dumbbell"
            elif kind == 1:
                c = make_dented_oval(half_length=rng.uniform(1.0, 3.0), radius=rng.uniform(1.2, 2.0),
                                     dent_depth=rng.uniform(0.2, 0.8), dent_radius=rng.uniform(0.4, 1.5))
                name = "dented_oval"
            else:
                lobes = int(rng.integers(3, 6))
                c = make_flower(lobes=lobes, ring=rng.uniform(1.8, 2.4), lobe_radius=rng.uniform(0.9, 1.3),
                                bite_ring=rng.uniform(2.4, 3.0), bite_radius=rng.uniform(0.4, 0.8),
                                phase=rng.uniform(0, 2 * PI), jitter=rng.uniform(-0.08, 0.08, size=lobes))
                name = "multi_lobe"
        except GeneratorError:
            continue
        if validate(c).valid:
            out.append((f"{name}_{len(out):03d}", c))
    return out


def convex_suite() -> list[tuple[str, ArcSpline]]:
    return [("circle", make_circle(1.0)), ("stadium", make_stadium(1.0, 1.0)),
            ("rounded_square", make_rounded_polygon(square(2.0), 0.5)),
            ("ellipse", make_ellipse(2.0, 1.0, 1e-5))]
