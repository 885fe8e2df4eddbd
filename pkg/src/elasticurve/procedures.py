"""Area-decreasing deformations of arc-splines and the pinch split.

Procedure 1 retracts a short convex arc wedged between two concave arcs;
Procedure 2 pushes a deep concave arc inward by translation until the curve
touches itself.  A touching curve is cut at its extremal contacts into
class C pieces.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arcs import MaximalArc, decompose_maximal_arcs, cusp_adjacent
from .curve import ArcSpline, is_simple, signed_area
from .geometry import closest_pair, intersect
from .primitives import Arc, Segment, tidy

PI = math.pi
TURN_TOL = 1e-12


class ProcedureError(RuntimeError):
    """A procedure was asked to run outside its preconditions or failed."""


# --------------------------------------------------------------------------
# sites

@dataclass(frozen=True)
class Procedure1Site:
    concave1: MaximalArc
    convex: MaximalArc
    concave2: MaximalArc
    index: int                    # position of the convex arc in the decomposition

    def to_dict(self) -> dict:
        return {"procedure": 1, "concave1": self.concave1.to_dict(), "convex": self.convex.to_dict(),
                "concave2": self.concave2.to_dict(), "index": self.index}


@dataclass(frozen=True)
class Procedure2Site:
    arc: MaximalArc
    endpoint_choice: str          # "use_p1" or "use_p2"
    index: int

    def to_dict(self) -> dict:
        return {"procedure": 2, "arc": self.arc.to_dict(), "endpoint_choice": self.endpoint_choice,
                "index": self.index}


def find_procedure1_sites(curve: ArcSpline) -> list[Procedure1Site]:
    arcs = decompose_maximal_arcs(curve)
    m = len(arcs)
    out = []
    for k, v in enumerate(arcs):
        if v.sign < 0 or not (TURN_TOL < v.total_curvature <= PI + TURN_TOL):
            continue
        if curve.is_cusped:
            if k == 0 or k == m - 1 or cusp_adjacent(curve, v):
                continue
            c1, c2 = arcs[k - 1], arcs[k + 1]
        else:
            if m < 4:
                continue
            c1, c2 = arcs[k - 1], arcs[(k + 1) % m]
        if c1.sign < 0 and c2.sign < 0:
            out.append(Procedure1Site(c1, v, c2, k))
    return out


def find_procedure2_sites(curve: ArcSpline) -> list[Procedure2Site]:
    arcs = decompose_maximal_arcs(curve)
    out = []
    for k, a in enumerate(arcs):
        if a.sign > 0 or a.total_curvature > -PI + TURN_TOL:
            continue
        choice = "use_p1"
        if curve.is_cusped and a.s0 <= 1e-12 * curve.length:
            choice = "use_p2"
        out.append(Procedure2Site(a, choice, k))
    return out


# --------------------------------------------------------------------------
# contacts and pinch events

@dataclass(frozen=True)
class Contact:
    s: float
    s_prime: float
    point: tuple
    distance: float


@dataclass
class PinchEvent:
    s1: float
    s1_prime: float
    s2: float
    s2_prime: float
    contacts: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"s1": self.s1, "s1_prime": self.s1_prime, "s2": self.s2, "s2_prime": self.s2_prime,
                "contacts": [[c.s, c.s_prime, list(c.point)] for c in self.contacts]}


def _cyc_gap(curve: ArcSpline, s: float, t: float) -> float:
    d = abs(s - t)
    return min(d, curve.length - d) if curve.curve_class == "K" else d


def find_contacts(curve: ArcSpline, tol: float | None = None) -> list[Contact]:
    """Self-contacts: pairs of curve points closer than ``tol`` that are far
    apart along the curve (the closure of a class C curve is not one)."""
    if tol is None:
        tol = 1e-8 * max(1.0, curve.scale)
    n = len(curve)
    L = curve.length
    sep = max(1e-6 * L, 100 * tol)
    boxes = curve.boxes
    mask = ((boxes[:, None, 0] <= boxes[None, :, 2] + tol) & (boxes[:, None, 2] >= boxes[None, :, 0] - tol)
            & (boxes[:, None, 1] <= boxes[None, :, 3] + tol) & (boxes[:, None, 3] >= boxes[None, :, 1] - tol))
    out = []
    for i, j in zip(*np.nonzero(np.triu(mask, 1))):
        i, j = int(i), int(j)
        a, b = curve[i], curve[j]
        cands = []
        d, t, u = closest_pair(a, b)
        if d <= tol and isinstance(a, Arc) and isinstance(b, Arc):
            t, u = _snap_tangent_contact(a, b, t, u)
        if d <= tol:
            cands.append((t, u, d))
        if d <= tol and isinstance(a, Segment) and isinstance(b, Segment):
            # parallel overlap: report both ends of the shared stretch
            for hit in _segment_overlap(a, b, tol):
                cands.append(hit)
        for (t, u, d) in cands:
            s, sp = curve.s_of(i, t), curve.s_of(j, u)
            if _cyc_gap(curve, s, sp) <= sep:
                continue
            if curve.is_cusped and (min(s, sp) <= sep and max(s, sp) >= L - sep):
                continue
            out.append(Contact(min(s, sp), max(s, sp), a.point(t), d))
    return _cluster(out, 1e-8 * max(1.0, L))


def _snap_tangent_contact(a: Arc, b: Arc, t: float, u: float) -> tuple[float, float]:
    """Move a near-tangent arc/arc contact onto the line of centres.

    Rounding can push two tangent circles into a minute overlap; the closest
    pair is then one of two crossing points whose tangents miss being
    antiparallel by roughly sqrt(overlap / radius).
    """
    dx, dy = b.center[0] - a.center[0], b.center[1] - a.center[1]
    if math.hypot(dx, dy) <= 1e-12 * max(a.radius, b.radius):
        return t, u
    ang = math.atan2(dy, dx)
    best = None
    for aa, bb in ((ang, ang + PI), (ang + PI, ang), (ang, ang), (ang + PI, ang + PI)):
        ta, tb = a.param_of_angle(aa, 1e-9), b.param_of_angle(bb, 1e-9)
        if ta is None or tb is None:
            continue
        gap = math.dist(a.point(ta), b.point(tb))
        if best is None or gap < best[0]:
            best = (gap, ta, tb)
    old = math.dist(a.point(t), b.point(u))
    if best is None or best[0] > old + 1e-9 * max(a.radius, b.radius):
        return t, u
    return best[1], best[2]


def _segment_overlap(a: Segment, b: Segment, tol: float):
    dx, dy = a.end[0] - a.start[0], a.end[1] - a.start[1]
    la = math.hypot(dx, dy)
    ux, uy = dx / la, dy / la
    ex, ey = b.end[0] - b.start[0], b.end[1] - b.start[1]
    if abs(ux * ey - uy * ex) > 1e-9 * math.hypot(ex, ey):
        return []
    proj = lambda p: ((p[0] - a.start[0]) * ux + (p[1] - a.start[1]) * uy) / la  # noqa: E731
    t0, t1 = proj(b.start), proj(b.end)
    lo, hi = max(0.0, min(t0, t1)), min(1.0, max(t0, t1))
    out = []
    if hi < lo:
        return out
    for t in (lo, hi):
        p = a.point(t)
        from .geometry import closest_point
        d, u = closest_point(p, b)
        if d <= tol:
            out.append((t, u, d))
    return out


def _cluster(contacts: list[Contact], tol: float) -> list[Contact]:
    contacts = sorted(contacts, key=lambda c: (c.s, c.s_prime))
    out: list[Contact] = []
    for c in contacts:
        if any(abs(c.s - o.s) <= tol and abs(c.s_prime - o.s_prime) <= tol for o in out):
            continue
        out.append(c)
    return out


def pinch_event(curve: ArcSpline, contacts: list[Contact]) -> PinchEvent:
    """Extremal contact couples: the outermost and innermost nested pairs."""
    if not contacts:
        raise ProcedureError("no self-contact to split at")
    L = curve.length
    pts = sorted({round(x, 12) for c in contacts for x in (c.s, c.s_prime)})
    eps = 1e-9 * max(1.0, L)

    def inside_empty(c):
        return not any(c.s + eps < x < c.s_prime - eps for x in pts)

    def outside_empty(c):
        return not any(x > c.s_prime + eps or x < c.s - eps for x in pts)

    inner = [c for c in contacts if inside_empty(c)]
    if not inner:
        raise ProcedureError("contacts are not nested")
    if curve.is_cusped:
        # keep the lobe with the largest area when several are available
        best = max(inner, key=lambda c: signed_area(curve.extract(c.s, c.s_prime)))
        outer = min(contacts, key=lambda c: c.s)
        return PinchEvent(min(outer.s, best.s), max(outer.s_prime, best.s_prime), best.s, best.s_prime, contacts)
    outer = [c for c in contacts if outside_empty(c)]
    if not outer:
        raise ProcedureError("contacts are not nested")
    i_c, o_c = inner[0], outer[0]
    if len(inner) > 1 and o_c in inner:
        i_c = next(c for c in inner if c is not o_c)
    s1 = o_c.s
    wrap = lambda x: s1 + ((x - s1) % L)  # noqa: E731
    s2, s2p = wrap(i_c.s), wrap(i_c.s_prime)
    s1p = wrap(o_c.s_prime)
    if s2 > s2p:
        s2, s2p = s2p, s2
    return PinchEvent(s1, s1p, s2, s2p, contacts)


def _as_cusp_curve(curve: ArcSpline, s0: float, s1: float) -> ArcSpline:
    prims = curve.extract(s0, s1)
    if len(prims) < 2:
        raise ProcedureError("degenerate lobe")
    return ArcSpline(tuple(prims), "C", curve.tol, curve.angle_tol)


def split_at_pinch(curve: ArcSpline, event: PinchEvent) -> tuple[ArcSpline, ArcSpline]:
    """Cut a pinched class K curve into its two extremal class C lobes."""
    if curve.is_cusped:
        raise ProcedureError("expected a class K curve")
    if not (event.s1 <= event.s2 + 1e-12 and event.s2 < event.s2_prime and event.s2_prime <= event.s1_prime + 1e-12):
        raise ProcedureError("pinch event violates s1 <= s2 < s2' <= s1'")
    L = curve.length
    g1 = _as_cusp_curve(curve, event.s1_prime, event.s1 + L)
    g2 = _as_cusp_curve(curve, event.s2, event.s2_prime)
    return g1, g2


def split_at_pinch_cusp(curve: ArcSpline, event: PinchEvent) -> ArcSpline:
    """Keep the lobe between the last pinch couple of a class C curve."""
    if not curve.is_cusped:
        raise ProcedureError("expected a class C curve")
    if not (0.0 <= event.s2 < event.s2_prime <= curve.length + 1e-12):
        raise ProcedureError("pinch event inconsistent with the curve")
    return _as_cusp_curve(curve, event.s2, min(event.s2_prime, curve.length))


def split(curve: ArcSpline, contacts: list[Contact]) -> tuple[list[ArcSpline], PinchEvent]:
    ev = pinch_event(curve, contacts)
    if curve.is_cusped:
        return [_tidied(split_at_pinch_cusp(curve, ev))], ev
    return [_tidied(c) for c in split_at_pinch(curve, ev)], ev


# --------------------------------------------------------------------------
# Procedure 1

@dataclass
class P1Result:
    curve: ArcSpline
    event: str
    events: list
    phi_bar: float
    eps_bar: float
    contacts: list = field(default_factory=list)
    u_bar: float = 0.0


def _tidied(curve: ArcSpline) -> ArcSpline:
    """Remove slivers left behind by snapped configurations."""
    prims = tidy(curve.primitives, 1e-11 * max(1.0, curve.scale))
    if len(prims) == len(curve.primitives):
        return curve
    return curve.with_primitives(tuple(prims))


class _P1:
    """Procedure 1 geometry on a curve whose three site arcs are linear in s.

    Configurations are indexed by ``u``: while ``u <= lt`` the cut point
    slides back along the straight tail of the first concave arc (heading
    offset zero), afterwards the heading offset is ``u - lt``.
    """

    def __init__(self, curve: ArcSpline, site: Procedure1Site):
        c1, v, c2 = site.concave1, site.convex, site.concave2
        if not (TURN_TOL < v.total_curvature <= PI + TURN_TOL):
            raise ProcedureError("convex arc must have total curvature in (0, pi]")
        if curve.curve_class == "K":
            shift = c1.first
            curve = curve.rotate_start(shift)
            n = len(curve)
            idx = lambda i: (i - shift) % n  # noqa: E731
        else:
            idx = lambda i: i  # noqa: E731
        self.curve = curve
        self.P = curve.primitives
        self.H = curve.headings
        self.i1, self.i2 = idx(c1.first), idx(c1.last) + 1
        self.i3 = idx(v.last) + 1
        self.i4 = idx(c2.last) + 1
        if not (self.i1 < self.i2 < self.i3 < self.i4 <= len(self.P)):
            raise ProcedureError("site arcs are not consecutive")
        H = self.H
        self.th1, self.th2, self.th3, self.th4 = H[self.i1], H[self.i2], H[self.i3], H[self.i4]
        self.phi1 = self.th1 - self.th2
        self.phiV = self.th3 - self.th2
        self.phi_max = min(self.phi1, self.phiV)
        j, lt = self.i2, 0.0
        while j - 1 > self.i1 and isinstance(self.P[j - 1], Segment):
            lt += self.P[j - 1].length
            j -= 1
        self.j_tail, self.lt = j, lt
        self.u1 = lt + self.phi1
        self.u_max = lt + self.phi_max
        self.scale = max(1.0, curve.scale)

    def head(self, u):
        return self.th2 + max(u - self.lt, 0.0)

    # points with a given heading -------------------------------------------------
    def _on_concave(self, lo, hi, h, closest_end: bool):
        rng = range(hi - 1, lo - 1, -1) if closest_end else range(lo, hi)
        for i in rng:
            p = self.P[i]
            a, b = self.H[i], self.H[i + 1]
            if isinstance(p, Segment):
                if abs(a - h) <= 1e-14:
                    return i, (1.0 if closest_end else 0.0)
                continue
            if b - 1e-14 <= h <= a + 1e-14:
                return i, min(max((h - a) / (b - a), 0.0), 1.0)
        return None

    def _on_convex(self, lo, hi, h, t_min=0.0, i_min=None):
        start = lo if i_min is None else i_min
        for i in range(start, hi):
            p = self.P[i]
            a, b = self.H[i], self.H[i + 1]
            if isinstance(p, Segment):
                if abs(a - h) <= 1e-14 and not (i == start and t_min >= 1.0):
                    return i, (t_min if i == start else 0.0)
                continue
            if a - 1e-14 <= h <= b + 1e-14:
                t = min(max((h - a) / (b - a), 0.0), 1.0)
                if i == start and t < t_min:
                    t = t_min
                return i, t
        return None

    def p_eps(self, u):
        if u <= self.lt:
            rest = u
            for i in range(self.i2 - 1, self.j_tail - 1, -1):
                ln = self.P[i].length
                if rest <= ln:
                    return i, 1.0 - rest / ln
                rest -= ln
            return self.j_tail, 0.0
        return self._on_concave(self.i1, self.j_tail, self.head(u), True)

    def p_star(self, u):
        return self._on_convex(self.i2, self.i3, self.head(u))

    def eps_of(self, phi) -> float:
        if phi <= 0:
            return 0.0
        pe, ps = self.p_eps(phi), self.p_star(phi)
        if pe is None or ps is None:
            return math.nan
        c = self.curve
        return (c.s_of(self.i2 - 1, 1.0) - c.s_of(*pe)) + (c.s_of(*ps) - c.s_of(self.i2, 0.0))

    # common tangent --------------------------------------------------------------
    def tangent(self, phi, ps, T):
        """Largest heading psi of a line tangent to the translated convex part
        (after ``ps``) and to the second concave arc."""
        best = None
        hp = self.head(phi)
        for j in range(ps[0], self.i3):
            a = self.P[j]
            if not isinstance(a, Arc):
                continue
            lo_j = max(self.H[j], hp) if j == ps[0] else self.H[j]
            hi_j = self.H[j + 1]
            ca = (a.center[0] + T[0], a.center[1] + T[1])
            for k in range(self.i3, self.i4):
                b = self.P[k]
                if not isinstance(b, Arc):
                    continue
                lo = max(lo_j, self.H[k + 1])
                hi = min(hi_j, self.H[k])
                if lo > hi + 1e-12:
                    continue
                dx, dy = b.center[0] - ca[0], b.center[1] - ca[1]
                d = math.hypot(dx, dy)
                K = b.sign * b.radius - a.sign * a.radius
                if d <= abs(K) or d == 0.0:
                    continue
                psi = math.atan2(dy, dx) - math.asin(K / d)
                psi += 2 * PI * math.ceil((lo - 1e-12 - psi) / (2 * PI))
                if psi > hi + 1e-12:
                    continue
                psi = min(max(psi, lo), hi)
                if best is None or psi > best[0]:
                    best = (psi, j, k)
        return best

    # configuration ---------------------------------------------------------------
    def config(self, phi, snap=None):
        """``(prims, info)`` for heading offset ``phi`` or ``(None, reason)``."""
        P = self.P
        hp = self.head(phi)
        if snap == "F1":
            pe = (self.i1, 0.0)
        else:
            pe = self.p_eps(phi)
        ps = self.p_star(phi)
        if pe is None or ps is None:
            return None, "range"
        pe_pt = P[pe[0]].point(pe[1])
        ps_pt = P[ps[0]].point(ps[1])
        T = (pe_pt[0] - ps_pt[0], pe_pt[1] - ps_pt[1])
        head = list(P[:pe[0]])
        if pe[1] * P[pe[0]].length > 1e-15 * self.scale:
            head.append(P[pe[0]] if pe[1] >= 1.0 else P[pe[0]].sub(0.0, pe[1]))
        if snap == "F2":
            tgt = self._on_concave(self.i3, self.i4, hp, False)
            if tgt is None:
                return None, "range"
            k, tk = tgt
            q_pt = pe_pt
            mid = []
            psi = hp
        elif snap == "F3":
            psi = self.th4
            qq = self._on_convex(self.i2, self.i3, psi, ps[1], ps[0])
            if qq is None:
                return None, "range"
            j, tj = qq
            mid = self._translated_part(ps, (j, tj), T)
            q_pt = (P[j].point(tj)[0] + T[0], P[j].point(tj)[1] + T[1])
            k, tk = self.i4 - 1, 1.0
        else:
            tg = self.tangent(phi, ps, T)
            if tg is None:
                return None, "no_tangent"
            psi, j, k = tg
            if psi <= hp + 1e-13:
                return None, "F2"
            if psi <= self.th4 + 1e-13:
                return None, "F3"
            tj = (psi - self.H[j]) / P[j].turning
            tk = (psi - self.H[k]) / P[k].turning
            tj, tk = min(max(tj, 0.0), 1.0), min(max(tk, 0.0), 1.0)
            mid = self._translated_part(ps, (j, tj), T)
            qj = P[j].point(tj)
            q_pt = (qj[0] + T[0], qj[1] + T[1])
        p_pt = P[k].point(tk)
        tail = []
        if tk < 1.0:
            tail.append(P[k] if tk <= 0.0 else P[k].sub(tk, 1.0))
        tail.extend(P[k + 1:])
        seg = []
        if math.dist(q_pt, p_pt) > 1e-12 * self.scale:
            seg = [Segment(q_pt, p_pt)]
            # the segment must run along the tangent direction
            if math.cos(psi) * (p_pt[0] - q_pt[0]) + math.sin(psi) * (p_pt[1] - q_pt[1]) <= 0:
                return None, "no_tangent"
        prims = head + mid + seg + tail
        changed = range(max(len(head) - 1, 0), min(len(head) + len(mid) + len(seg) + 1, len(prims)))
        return prims, {"psi": psi, "changed": list(changed), "T": T}

    def _translated_part(self, ps, q, T):
        P = self.P
        (i0, t0), (j, tj) = ps, q
        out = []
        for i in range(i0, j + 1):
            a = t0 if i == i0 else 0.0
            b = tj if i == j else 1.0
            if b - a <= 0.0 or (b - a) * P[i].length <= 1e-15:
                continue
            piece = P[i] if (a <= 0.0 and b >= 1.0) else P[i].sub(a, b)
            out.append(piece.translated(T))
        return out

    def build(self, prims):
        return ArcSpline(tuple(prims), self.curve.curve_class, self.curve.tol, self.curve.angle_tol)

    def valid(self, phi, snap=None):
        prims, info = self.config(phi, snap)
        if prims is None:
            return False, info, None
        c = self.build(prims)
        ok, _ = is_simple(c, only=info["changed"])
        return ok, ("ok" if ok else "F4"), c


def procedure1_run(curve: ArcSpline, site: Procedure1Site, grid: int = 48) -> P1Result:
    """Advance Procedure 1 to the supremum of admissible epsilon."""
    g = _P1(curve, site)
    pm = g.u_max
    snap_end = "F1" if g.phi1 <= g.phiV else None
    lo, hi, reason_hi = 0.0, None, None
    for k in range(1, grid + 1):
        phi = pm * k / grid
        ok, reason, _ = g.valid(phi, snap_end if k == grid else None)
        if not ok:
            hi, reason_hi = phi, reason
            break
        lo = phi
    events = []
    if hi is None:
        phi_bar = pm
        events.append("F1" if snap_end else "F2")
    else:
        for _ in range(200):
            if hi - lo <= 1e-14 * max(1.0, pm):
                break
            mid = 0.5 * (lo + hi)
            ok, reason, _ = g.valid(mid)
            if ok:
                lo = mid
            else:
                hi, reason_hi = mid, reason
        phi_bar = lo
    # classify the boundary
    prims, info = g.config(phi_bar, snap_end if hi is None else None)
    if prims is None:
        raise ProcedureError(f"Procedure 1 configuration lost at phi={phi_bar}: {info}")
    psi = info["psi"]
    atol = 1e-9
    if abs(phi_bar - g.u1) <= atol:
        events.append("F1")
    if psi - g.head(phi_bar) <= atol or reason_hi in ("F2", "no_tangent", "range"):
        events.append("F2")
    if psi - g.th4 <= atol or reason_hi == "F3":
        events.append("F3")
    base = g.build(prims)
    contacts = find_contacts(base)
    if contacts or reason_hi == "F4":
        events.append("F4")
    events = sorted(set(events), key=["F1", "F2", "F3", "F4"].index)
    if not events:
        events = ["F4"]
    event = "F4" if "F4" in events else events[0]
    if event == "F4":
        if not contacts:
            contacts = find_contacts(base, tol=1e-6 * max(1.0, base.scale))
        out = base
    else:
        prims2, info2 = g.config(phi_bar, event)
        out = g.build(prims2) if prims2 is not None else base
        if prims2 is None or not is_simple(out)[0]:
            out = base
    out = _tidied(out)
    return P1Result(out, event, events, max(phi_bar - g.lt, 0.0), g.eps_of(phi_bar), contacts, phi_bar)


def procedure1_step(curve: ArcSpline, site: Procedure1Site, eps: float) -> ArcSpline:
    """The deformed curve at arc-length parameter ``eps`` (0 < eps < eps_bar)."""
    if eps <= 0:
        return curve
    g = _P1(curve, site)
    res = procedure1_run(curve, site)
    if eps >= res.eps_bar:
        raise ProcedureError(f"eps={eps} is not below eps_bar={res.eps_bar}")
    lo, hi = 0.0, res.u_bar
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g.eps_of(mid) < eps:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15:
            break
    prims, info = g.config(hi)
    if prims is None:
        raise ProcedureError(f"no admissible configuration at eps={eps}: {info}")
    return g.build(prims)


def procedure1_phi_of_eps(curve: ArcSpline, site: Procedure1Site, eps: float) -> float:
    """Heading offset reached at arc-length parameter ``eps``."""
    g = _P1(curve, site)
    lo, hi = 0.0, g.u_max
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g.eps_of(mid) < eps:
            lo = mid
        else:
            hi = mid
    return max(hi - g.lt, 0.0)


# --------------------------------------------------------------------------
# Procedure 2

@dataclass
class P2Result:
    curve: ArcSpline
    event: PinchEvent
    eps_bar: float
    a: float
    b: float
    direction: tuple
    width: float


def _turn_point(curve: ArcSpline, s: float, target: float, forward: bool) -> float:
    """First arc length from ``s`` where the accumulated turning reaches
    ``target`` (negative), walking forward or backward."""
    L = curve.length
    if forward:
        pieces = curve.extract(s, s + L if curve.curve_class == "K" else L)
    else:
        pieces = curve.extract(s - L if curve.curve_class == "K" else 0.0, s)[::-1]
    acc, pos = 0.0, s
    for p in pieces:
        if isinstance(p, Arc) and p.sweep < 0 and acc + p.sweep <= target + 1e-15:
            frac = min(max((target - acc) / p.sweep, 0.0), 1.0)
            return pos + frac * p.length if forward else pos - frac * p.length
        acc += p.turning
        pos = pos + p.length if forward else pos - p.length
    raise ProcedureError("concave arc does not turn by -pi")


def _p2_geometry(curve: ArcSpline, site: Procedure2Site):
    arc = site.arc
    if arc.sign > 0 or arc.total_curvature > -PI + TURN_TOL:
        raise ProcedureError("Procedure 2 needs a concave arc with total curvature <= -pi")
    if site.endpoint_choice == "use_p1":
        a = arc.s0
        b = _turn_point(curve, a, -PI, True)
        b = min(b, arc.s1)
    else:
        b = arc.s1
        a = _turn_point(curve, b, -PI, False)
        a = max(a, arc.s0)
    h = curve.heading(a % curve.length if curve.curve_class == "K" else a)
    u = (math.cos(h), math.sin(h))
    return a, b, u


def _p2_pieces(curve: ArcSpline, a: float, b: float):
    L = curve.length
    moving = curve.extract(a, b)
    if curve.curve_class == "K":
        return [], moving, curve.extract(b, a + L)
    return curve.extract(0.0, a), moving, curve.extract(b, L)


def procedure2_curve(curve: ArcSpline, a: float, b: float, u, eps: float) -> ArcSpline:
    pre, moving, post = _p2_pieces(curve, a, b)
    v = (eps * u[0], eps * u[1])
    pa, pb = moving[0].start_point, moving[-1].end_point
    moved = [p.translated(v) for p in moving]
    segs_a = [Segment(pa, moved[0].start_point)] if eps > 0 else []
    segs_b = [Segment(moved[-1].end_point, pb)] if eps > 0 else []
    prims = pre + segs_a + moved + segs_b + post
    return ArcSpline(tuple(prims), curve.curve_class, curve.tol, curve.angle_tol)


def _quad_roots(A, B, C):
    if abs(A) < 1e-300:
        return [] if abs(B) < 1e-300 else [-C / B]
    disc = B * B - 4 * A * C
    if disc < 0:
        if disc > -1e-12 * B * B:
            disc = 0.0
        else:
            return []
    sq = math.sqrt(disc)
    q = -0.5 * (B + math.copysign(sq, B))
    roots = [q / A]
    if q != 0:
        roots.append(C / q)
    return roots


def _translation_events(moving, static, u, ends, scale):
    """Candidate epsilons at which ``moving + eps u`` first touches ``static``."""
    cands = []
    tol = 1e-9
    for P in moving:
        for Q in static:
            if isinstance(P, Arc) and isinstance(Q, Arc):
                wx, wy = P.center[0] - Q.center[0], P.center[1] - Q.center[1]
                for D in (P.radius + Q.radius, abs(P.radius - Q.radius)):
                    for e in _quad_roots(1.0, 2 * (wx * u[0] + wy * u[1]), wx * wx + wy * wy - D * D):
                        c = (P.center[0] + e * u[0], P.center[1] + e * u[1])
                        dx, dy = Q.center[0] - c[0], Q.center[1] - c[1]
                        dd = math.hypot(dx, dy)
                        if dd == 0:
                            continue
                        for sgn in (1.0, -1.0):
                            x = (c[0] + sgn * P.radius * dx / dd, c[1] + sgn * P.radius * dy / dd)
                            if abs(math.dist(x, Q.center) - Q.radius) > 1e-9 * scale:
                                continue
                            tp = P.param_of_angle(math.atan2(x[1] - c[1], x[0] - c[0]), tol)
                            tq = Q.param_of_angle(math.atan2(x[1] - Q.center[1], x[0] - Q.center[0]), tol)
                            if tp is not None and tq is not None:
                                cands.append(e)
            elif isinstance(P, Arc) or isinstance(Q, Arc):
                arc, seg, moving_arc = (P, Q, True) if isinstance(P, Arc) else (Q, P, False)
                dx, dy = seg.end[0] - seg.start[0], seg.end[1] - seg.start[1]
                ln = math.hypot(dx, dy)
                nx, ny = -dy / ln, dx / ln
                nu = nx * u[0] + ny * u[1]
                if abs(nu) < 1e-15:
                    continue
                base = nx * (arc.center[0] - seg.start[0]) + ny * (arc.center[1] - seg.start[1])
                for sgn in (1.0, -1.0):
                    # signed distance of the (relative) center from the line equals +-R
                    e = (sgn * arc.radius - base) / nu if moving_arc else (base - sgn * arc.radius) / nu
                    shift = e if moving_arc else -e
                    c = (arc.center[0] + shift * u[0], arc.center[1] + shift * u[1])
                    x = (c[0] - sgn * arc.radius * nx, c[1] - sgn * arc.radius * ny)
                    tp = arc.param_of_angle(math.atan2(x[1] - c[1], x[0] - c[0]), tol)
                    ts = ((x[0] - seg.start[0]) * dx + (x[1] - seg.start[1]) * dy) / (ln * ln)
                    if tp is not None and -tol <= ts <= 1 + tol:
                        cands.append(e)
    # free ends of the moving chain travel along rays
    far = 4.0 * scale
    for pt in ends:
        ray = Segment(pt, (pt[0] + far * u[0], pt[1] + far * u[1]))
        for Q in static:
            for (t, _w) in intersect(ray, Q):
                cands.append(t * far)
    # static endpoints against the moving chain
    for Q in static:
        for pt in (Q.start_point, Q.end_point):
            ray = Segment(pt, (pt[0] - far * u[0], pt[1] - far * u[1]))
            for P in moving:
                for (t, _w) in intersect(ray, P):
                    cands.append(t * far)
    return cands


def procedure2_run(curve: ArcSpline, site: Procedure2Site) -> P2Result:
    """Translate the -pi sub-arc inward until the curve first touches itself."""
    a, b, u = _p2_geometry(curve, site)
    pre, moving, post = _p2_pieces(curve, a, b)
    static = pre + post
    scale = max(1.0, curve.scale)
    pa, pb = moving[0].start_point, moving[-1].end_point
    width = abs(u[0] * (pb[1] - pa[1]) - u[1] * (pb[0] - pa[0]))
    floor = 1e-9 * scale
    cands = sorted(e for e in _translation_events(moving, static, u, (pa, pb), scale) if e > floor)
    eps_bar = None
    for e in cands:
        c = procedure2_curve(curve, a, b, u, e)
        probe = procedure2_curve(curve, a, b, u, e * (1 - 1e-7))
        if is_simple(probe)[0] and find_contacts(c):
            eps_bar = e
            break
    if eps_bar is None:
        eps_bar = _bisect_first_contact(curve, a, b, u, scale)
    pinched = procedure2_curve(curve, a, b, u, eps_bar)
    contacts = find_contacts(pinched)
    if not contacts:
        contacts = find_contacts(pinched, tol=1e-6 * scale)
    ev = pinch_event(pinched, contacts)
    return P2Result(pinched, ev, eps_bar, a, b, u, width)


def _bisect_first_contact(curve, a, b, u, scale, grid: int = 256) -> float:
    hi_lim = 4.0 * scale
    lo = 0.0
    hi = None
    for k in range(1, grid + 1):
        e = hi_lim * k / grid
        if not is_simple(procedure2_curve(curve, a, b, u, e))[0]:
            hi = e
            break
        lo = e
    if hi is None:
        raise ProcedureError("failed to bracket the first self-contact")
    for _ in range(200):
        if hi - lo <= 1e-14 * scale:
            break
        mid = 0.5 * (lo + hi)
        if is_simple(procedure2_curve(curve, a, b, u, mid))[0]:
            lo = mid
        else:
            hi = mid
    return lo


def procedure2_step(curve: ArcSpline, site: Procedure2Site, eps: float) -> ArcSpline:
    a, b, u = _p2_geometry(curve, site)
    return procedure2_curve(curve, a, b, u, eps)


def procedure2_area_rate(curve: ArcSpline, site: Procedure2Site) -> float:
    """Predicted dA/deps: minus the distance between the parallel tangent lines."""
    a, b, u = _p2_geometry(curve, site)
    pa, pb = curve.point(a % curve.length if curve.curve_class == "K" else a), \
        curve.point(b % curve.length if curve.curve_class == "K" else b)
    return -abs(u[0] * (pb[1] - pa[1]) - u[1] * (pb[0] - pa[0]))
