"""Maximal convex/concave arcs and the structural predicates built on them.

Held convex sets, sharp and dagger points, void and nested arcs, the
K_pi / C_pi classification and the searches that produce held-arc
certificates on terminal curves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curve import (ArcSpline, SubArcRef, closest_on_curve, contains,
                    distance_to_curve, sample_at, signed_area)
from .geometry import intersect
from .primitives import Arc, Segment

PI = math.pi
CLASS_BAND = 1e-9
HELD_TOL = 1e-9


class SearchError(RuntimeError):
    """A certificate or point search failed on its stated preconditions."""


@dataclass(frozen=True)
class MaximalArc:
    sign: int                    # +1 convex, -1 concave
    s0: float
    s1: float                    # may exceed L for class K arcs wrapping the closure
    total_curvature: float
    first: int                   # primitive indices (cyclic) covered
    last: int

    @property
    def kind(self) -> str:
        return "convex" if self.sign > 0 else "concave"

    def span(self, curve: ArcSpline) -> SubArcRef:
        return SubArcRef.from_s(curve, self.s0, self.s1)

    def to_dict(self) -> dict:
        return {"sign": self.kind, "s0": self.s0, "s1": self.s1,
                "total_curvature": self.total_curvature,
                "primitives": [self.first, self.last]}


@dataclass
class HeldArcCertificate:
    s0: float
    s1: float
    chord: tuple
    total_curvature: float
    energy: float
    held_area: float
    span: SubArcRef | None = None

    def pieces(self, curve: ArcSpline):
        return curve.extract(self.s0, self.s1)

    def to_dict(self) -> dict:
        return {"s0": self.s0, "s1": self.s1, "chord": [list(self.chord[0]), list(self.chord[1])],
                "total_curvature": self.total_curvature, "energy": self.energy,
                "held_area": self.held_area,
                "span": self.span.to_dict() if self.span else None}


@dataclass
class ClassTag:
    tag: str                     # "Kpi", "Cpi" or "neither"
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"tag": self.tag, "witnesses": [w.to_dict() for w in self.witnesses]}


# --------------------------------------------------------------------------
# decomposition

def _effective_signs(curve: ArcSpline) -> list[int]:
    """Primitive curvature signs with segments absorbed into the preceding arc
    (class C: into the following arc when no arc precedes them)."""
    raw = [p.sign for p in curve.primitives]
    n = len(raw)
    out = list(raw)
    if curve.curve_class == "K":
        start = next(i for i in range(n) if raw[i] != 0)
        cur = raw[start]
        for k in range(1, n + 1):
            i = (start + k) % n
            if raw[i] == 0:
                out[i] = cur
            else:
                cur = raw[i]
    else:
        cur = 0
        for i in range(n):
            if raw[i] == 0:
                out[i] = cur
            else:
                cur = raw[i]
        nxt = 0
        for i in range(n - 1, -1, -1):
            if out[i] == 0:
                out[i] = nxt
            else:
                nxt = out[i]
    return out


def decompose_maximal_arcs(curve: ArcSpline) -> list[MaximalArc]:
    """Alternating cover of the curve by maximal convex and concave arcs.

    Arcs are listed in orientation order starting from arc length 0 (for
    class K, from the first sign change at or after 0).
    """
    signs = _effective_signs(curve)
    n = len(signs)
    L = curve.length
    cum = curve.cum
    turn = [p.turning for p in curve.primitives]
    if curve.curve_class == "K":
        if all(sg == signs[0] for sg in signs):
            return [MaximalArc(signs[0], 0.0, L, sum(turn), 0, n - 1)]
        start = next(i for i in range(n) if signs[i] != signs[i - 1])
        order = [(start + k) % n for k in range(n)]
    else:
        order = list(range(n))
    arcs = []
    run = [order[0]]
    for i in order[1:]:
        if signs[i] == signs[run[-1]]:
            run.append(i)
        else:
            arcs.append(run)
            run = [i]
    arcs.append(run)
    out = []
    for run in arcs:
        s0 = float(cum[run[0]])
        s1 = float(cum[run[-1] + 1])
        if s1 <= s0:
            s1 += L
        out.append(MaximalArc(signs[run[0]], s0, s1, sum(turn[i] for i in run), run[0], run[-1]))
    return out


def oscillation_number(curve: ArcSpline) -> int:
    """Number of maximal concave arcs."""
    return sum(1 for a in decompose_maximal_arcs(curve) if a.sign < 0)


def cusp_adjacent(curve: ArcSpline, arc: MaximalArc) -> bool:
    L = curve.length
    return curve.is_cusped and (arc.s0 <= 1e-12 * L or arc.s1 >= L * (1 - 1e-12))


# --------------------------------------------------------------------------
# sharp / dagger points

def _advance(curve: ArcSpline, s: float, target: float, forward: bool) -> float:
    """Arc length of the first point whose accumulated turning from ``s``
    reaches ``target`` (> 0), walking forward or backward."""
    L = curve.length
    if forward:
        stop = s + L if curve.curve_class == "K" else L
        pieces = curve.extract(s, stop)
    else:
        start = s - L if curve.curve_class == "K" else 0.0
        pieces = curve.extract(start, s)[::-1]
    acc = 0.0
    pos = s
    for p in pieces:
        if isinstance(p, Arc) and acc + p.sweep >= target - 1e-15 and p.sweep > 0:
            frac = min(max((target - acc) / p.sweep, 0.0), 1.0)
            ds = frac * p.length
            return pos + ds if forward else pos - ds
        acc += p.turning
        pos = pos + p.length if forward else pos - p.length
    raise SearchError("not enough total curvature ahead to reach the requested turning")


def _norm_s(curve: ArcSpline, s: float) -> float:
    if curve.curve_class == "K":
        L = curve.length
        s = s % L
        if s >= L:
            s -= L
    return s


def find_sharp_point(curve: ArcSpline, s: float, direction: str = "forward") -> float:
    """Arc length of the nearest point whose connecting arc from/to ``s`` has
    total curvature pi."""
    if direction not in ("forward", "backward"):
        raise ValueError("direction must be 'forward' or 'backward'")
    return _advance(curve, s, PI, direction == "forward")


def chord_crossings(curve: ArcSpline, p, q, end_tol: float = 1e-9) -> list[tuple[float, float]]:
    """``(u, s)`` for every boundary point strictly inside the segment p->q
    (``u`` is the chord parameter, ``s`` the curve arc length)."""
    seg = Segment(tuple(p), tuple(q))
    out = []
    for i, prim in enumerate(curve.primitives):
        for (u, t) in intersect(seg, prim):
            if end_tol < u < 1.0 - end_tol:
                out.append((u, curve.s_of(i, t)))
    out.sort()
    return out


def chord_in_closure(curve: ArcSpline, p, q) -> bool:
    """True iff the open segment p->q lies in the closure of the enclosed region."""
    cross = chord_crossings(curve, p, q)
    us = [0.0] + [u for u, _ in cross] + [1.0]
    tol = 10 * curve.tol * max(1.0, curve.scale)
    for a, b in zip(us[:-1], us[1:]):
        if b - a <= 1e-12:
            continue
        m = 0.5 * (a + b)
        x = (p[0] + m * (q[0] - p[0]), p[1] + m * (q[1] - p[1]))
        if not contains(curve, x) and distance_to_curve(curve, x) > tol:
            return False
    return True


def find_chord_dagger(curve: ArcSpline, s_p: float, s_sharp: float) -> tuple[tuple[float, float], float]:
    """Boundary crossing on the segment p -> p_sharp nearest to p, as
    ``(point, arc length)``."""
    p = curve.point(s_p)
    q = curve.point(s_sharp)
    cross = chord_crossings(curve, p, q)
    if not cross:
        raise SearchError("the segment meets the curve only at its endpoints")
    u, s = cross[0]
    return (p[0] + u * (q[0] - p[0]), p[1] + u * (q[1] - p[1])), s


# --------------------------------------------------------------------------
# held convex sets

def _certificate(curve: ArcSpline, s0: float, s1: float) -> HeldArcCertificate:
    pieces = curve.extract(s0, s1)
    p, q = pieces[0].start_point, pieces[-1].end_point
    area = signed_area(pieces + [Segment(q, p)])
    return HeldArcCertificate(s0, s1, (p, q), sum(x.turning for x in pieces),
                              sum(x.energy for x in pieces), area,
                              SubArcRef.from_s(curve, s0, s1))


def holds_convex_set_s(curve: ArcSpline, s0: float, s1: float) -> HeldArcCertificate | None:
    """Check conditions (i)-(iii) on the sub-arc ``s0 .. s1``."""
    if curve.is_cusped and (s0 < -1e-12 or s1 > curve.length + 1e-12):
        return None
    pieces = curve.extract(s0, s1)
    if not pieces:
        return None
    signs = [x.sign for x in pieces]
    if min(signs) < 0 or max(signs) <= 0:
        return None
    tot = sum(x.turning for x in pieces)
    if abs(tot - PI) > HELD_TOL:
        return None
    p, q = pieces[0].start_point, pieces[-1].end_point
    if math.dist(p, q) <= curve.tol:
        return None
    if not chord_in_closure(curve, p, q):
        return None
    return _certificate(curve, s0, s1)


def holds_convex_set(curve: ArcSpline, sub: SubArcRef) -> HeldArcCertificate | None:
    s0, s1 = sub.s_range(curve)
    if curve.is_cusped and sub.wraps_closure:
        return None
    return holds_convex_set_s(curve, s0, s1)


def _candidate_starts(curve: ArcSpline, arc: MaximalArc, grid: int) -> list[float]:
    L = curve.length
    starts = set()
    for k in range(grid + 1):
        starts.add(arc.s0 + (arc.s1 - arc.s0) * k / grid)
    for c in curve.cum:
        for shift in (0.0, L):
            if arc.s0 <= c + shift <= arc.s1:
                starts.add(float(c + shift))
    ordered = sorted(starts)
    return [("start", s) for s in ordered] + [("end", s) for s in ordered]


def scan_held_arcs(curve: ArcSpline, arc: MaximalArc, grid: int = 64,
                   first: bool = True) -> list[HeldArcCertificate]:
    """Held pi-sub-arcs of a maximal convex arc among joint and grid candidates."""
    if arc.sign < 0 or arc.total_curvature < PI - HELD_TOL:
        return []
    found = []
    seen = set()
    for role, s in _candidate_starts(curve, arc, grid):
        try:
            if role == "start":
                a, b = s, _advance(curve, s, PI, True)
            else:
                a, b = _advance(curve, s, PI, False), s
        except SearchError:
            continue
        if a < arc.s0 - 1e-12 or b > arc.s1 + 1e-12:
            continue
        key = round(a, 12)
        if key in seen:
            continue
        seen.add(key)
        cert = holds_convex_set_s(curve, a, b)
        if cert is not None:
            found.append(cert)
            if first:
                return found
    return found


def is_void(curve: ArcSpline, arc: MaximalArc, grid: int = 64) -> bool:
    """True iff no scanned pi-sub-arc of ``arc`` holds a convex set."""
    return not scan_held_arcs(curve, arc, grid)


# --------------------------------------------------------------------------
# nesting

def is_nested(curve: ArcSpline, inner: SubArcRef, outer: SubArcRef) -> bool:
    """Inner arc q->q' crosses the segment p p' spanned by outer arc p'->p."""
    o0, o1 = outer.s_range(curve)
    p_prime, p = curve.point(o0), curve.point(o1)
    i0, i1 = inner.s_range(curve)
    seg = Segment(p, p_prime)
    for prim in curve.extract(i0, i1):
        for (u, _t) in intersect(seg, prim):
            if 1e-9 < u < 1 - 1e-9:
                return True
    return False


def find_nested_instances(curve: ArcSpline) -> list[tuple[SubArcRef, SubArcRef]]:
    """All ``(inner, outer)`` nested pairs flanking a maximal concave arc."""
    arcs = decompose_maximal_arcs(curve)
    m = len(arcs)
    out = []
    for k, a in enumerate(arcs):
        if a.sign > 0:
            continue
        if curve.is_cusped and (k == 0 or k == m - 1):
            continue
        prev, nxt = arcs[(k - 1) % m], arcs[(k + 1) % m]
        if prev.sign < 0 or nxt.sign < 0:
            continue
        if prev.total_curvature < PI or nxt.total_curvature < PI:
            continue
        try:
            sp_prime = _advance(curve, a.s0, PI, False)
            sq_prime = _advance(curve, a.s1, PI, True)
        except SearchError:
            continue
        if sp_prime < 0.0:
            if curve.is_cusped:
                continue
            sp_prime, s_end = sp_prime + curve.length, a.s0 + curve.length
        else:
            s_end = a.s0
        outer = SubArcRef.from_s(curve, sp_prime, s_end)
        inner = SubArcRef.from_s(curve, a.s1, sq_prime)
        if is_nested(curve, inner, outer):
            out.append((inner, outer))
    return out


# --------------------------------------------------------------------------
# classification

def classify(curve: ArcSpline, band: float = CLASS_BAND) -> ClassTag:
    arcs = decompose_maximal_arcs(curve)
    bad = []
    for a in arcs:
        if a.sign > 0:
            if curve.is_cusped and cusp_adjacent(curve, a):
                continue
            if not a.total_curvature > PI + band:
                bad.append(a)
        else:
            if not (-PI + band < a.total_curvature < 0.0):
                bad.append(a)
    if bad:
        return ClassTag("neither", bad)
    return ClassTag("Cpi" if curve.is_cusped else "Kpi", [])


# --------------------------------------------------------------------------
# certificate searches

def _disjoint(curve: ArcSpline, a: HeldArcCertificate, b: HeldArcCertificate) -> bool:
    L = curve.length
    tol = 1e-9 * max(L, 1.0)
    for shift in (-L, 0.0, L) if curve.curve_class == "K" else (0.0,):
        lo = max(a.s0, b.s0 + shift)
        hi = min(a.s1, b.s1 + shift)
        if hi - lo > tol:
            return False
    return True


def spans_disjoint(curve: ArcSpline, a: HeldArcCertificate, b: HeldArcCertificate) -> bool:
    return _disjoint(curve, a, b)


@dataclass
class SearchRecord:
    route: str
    void_arcs: list = field(default_factory=list)
    chords: list = field(default_factory=list)
    steps: int = 0

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def find_two_disjoint_held_arcs(curve: ArcSpline, grid: int = 64, record: SearchRecord | None = None,
                                check_class: bool = True):
    """Two held-arc certificates with disjoint spans on a K_pi curve."""
    if curve.is_cusped:
        raise SearchError("expected a class K curve")
    if check_class and classify(curve).tag != "Kpi":
        raise SearchError("curve is not in K_pi")
    rec = record if record is not None else SearchRecord("")
    arcs = decompose_maximal_arcs(curve)
    concave = [a for a in arcs if a.sign < 0]
    L = curve.length
    if not concave:
        rec.route = "convex"
        s0 = 0.0
        s1 = _advance(curve, s0, PI, True)
        s2 = _advance(curve, s1, PI, True)
        c1 = holds_convex_set_s(curve, s0, s1)
        c2 = holds_convex_set_s(curve, s1, min(s2, s0 + L))
        if c1 and c2:
            return c1, c2
    if len(concave) == 1:
        rec.route = "single_concave"
        c = concave[0]
        q1 = _advance(curve, c.s0 + L, PI, False)
        q2 = _advance(curve, c.s1, PI, True)
        c1 = holds_convex_set_s(curve, q1, c.s0 + L)
        c2 = holds_convex_set_s(curve, c.s1, q2)
        if c1 and c2 and _disjoint(curve, c1, c2):
            return c1, c2
    convex = [a for a in arcs if a.sign > 0]
    held = [scan_held_arcs(curve, a, grid) for a in convex]
    m = len(convex)
    void_idx = [k for k in range(m) if not held[k]]
    rec.void_arcs = void_idx
    pair = None
    if void_idx and m > 1:
        rec.route = "void_walk"
        i = void_idx[0]
        a = convex[i]
        for role, sp, forward in (("p", a.s1, False), ("q", a.s0, True)):
            try:
                sharp = _advance(curve, sp, PI, forward)
                pt, sd = find_chord_dagger(curve, sp, sharp)
                rec.chords.append({"side": role, "from": list(curve.point(sp)), "to": list(pt)})
            except SearchError:
                pass
        gp = gq = None
        for step in range(1, m):
            rec.steps = step
            if gp is None and held[(i + step) % m]:
                gp = (i + step) % m
            if gq is None and held[(i - step) % m]:
                gq = (i - step) % m
            if gp is not None and gq is not None and gp != gq:
                pair = (held[gp][0], held[gq][0])
                break
    elif m > 1:
        rec.route = rec.route or "non_void"
    if pair is None:
        ok = [k for k in range(m) if held[k]]
        if len(ok) >= 2:
            rec.route = rec.route + "+exhaustive" if rec.route else "exhaustive"
            pair = (held[ok[0]][0], held[ok[1]][0])
        elif len(ok) == 1:
            more = scan_held_arcs(curve, convex[ok[0]], grid, first=False)
            for x in more:
                for y in more:
                    if x is not y and _disjoint(curve, x, y):
                        return x, y
    if pair is None:
        raise SearchError("no pair of disjoint held arcs found")
    return pair


def find_held_arc_cusp(curve: ArcSpline, grid: int = 64, check_class: bool = True) -> HeldArcCertificate:
    """A held-arc certificate on a C_pi curve, away from the cusp."""
    if not curve.is_cusped:
        raise SearchError("expected a class C curve")
    if check_class and classify(curve).tag != "Cpi":
        raise SearchError("curve is not in C_pi")
    arcs = [a for a in decompose_maximal_arcs(curve) if a.sign > 0]
    arcs.sort(key=lambda a: cusp_adjacent(curve, a))
    for a in arcs:
        found = scan_held_arcs(curve, a, grid)
        if found:
            return found[0]
    raise SearchError("no held arc found on the cusp curve")


# --------------------------------------------------------------------------
# lemma diagnostics

def _probe_points(curve: ArcSpline, grid: int) -> np.ndarray:
    s = np.concatenate((curve.cum[:-1], np.linspace(0.0, curve.length, grid, endpoint=False)))
    return np.unique(s)


def check_lemma_total(curve: ArcSpline, grid: int = 2048) -> dict:
    """Minimum total curvature over sub-arcs with endpoints among joints and
    grid points; on K_pi / C_pi curves it must exceed -pi."""
    s = _probe_points(curve, grid)
    # the end value is taken from the primitives: locate() wraps s = L back to 0
    T = np.array([curve.cumulative_turning(x) for x in s] + [sum(p.turning for p in curve.primitives)])
    s = np.append(s, curve.length)
    run_max = np.maximum.accumulate(T)
    drawdown = float(np.max(run_max - T))        # max over i<j of T_i - T_j
    run_min = np.minimum.accumulate(T)
    rise = float(np.max(T - run_min))            # max over i<j of T_j - T_i
    # sub-arcs through the closure (plus the cusp jump for class C) total 2pi - rise
    full = 2 * PI
    candidates = [-drawdown]
    if rise < full - 1e-9:
        candidates.append(full - rise)
    m = min(candidates)
    return {"min_total_curvature": m, "bound": -PI, "passes": m > -PI + 1e-9, "samples": int(len(s))}


def check_lemma_rotation(curve: ArcSpline, samples: int = 1024, probes: int = 128) -> dict:
    """Whenever the curve leaves the tangent line at p away from the normal and
    first returns to it at q, q must lie ahead of p along the tangent."""
    L = curve.length
    s = np.linspace(0.0, L, samples, endpoint=False)
    pts = sample_at(curve, s)
    tol = 1e-9 * max(curve.scale, 1.0)
    checked = 0
    violations = []
    step = max(1, samples // probes)
    for k in range(0, samples, step):
        p = pts[k]
        h = curve.heading(s[k])
        t = np.array([math.cos(h), math.sin(h)])
        if curve.curve_class == "K":
            order = np.r_[k + 1:samples, 0:k]
        else:
            order = np.arange(k + 1, samples)
        rel = pts[order] - p
        sigma = t[0] * rel[:, 1] - t[1] * rel[:, 0]
        off = np.nonzero(np.abs(sigma) > tol)[0]
        if len(off) == 0 or sigma[off[0]] > 0:
            continue
        back = np.nonzero(sigma[off[0]:] >= 0.0)[0]
        if len(back) == 0:
            continue
        j = off[0] + back[0]
        if j == 0:
            continue
        a, b = sigma[j - 1], sigma[j]
        w = a / (a - b) if a != b else 1.0
        q = pts[order[j - 1]] + w * (pts[order[j]] - pts[order[j - 1]])
        checked += 1
        if float(np.dot(q - p, t)) < -tol:
            violations.append({"s": float(s[k]), "q": q.tolist()})
    return {"checked": checked, "violations": violations, "passes": not violations}
