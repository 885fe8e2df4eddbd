"""Closed arc-spline curves and their exact geometric functionals.

An :class:`ArcSpline` is a closed, tangent-continuous chain of segments and
circular arcs.  Class ``"K"`` curves are regular at the closure joint; class
``"C"`` curves have an external cusp there (outgoing tangent equal to minus
the incoming one).  Arc length ``s`` starts at the first primitive.
"""
from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .geometry import closest_point, intersect
from .primitives import (TWO_PI, Arc, Primitive, Segment, primitive_from_dict,
                         wrap_angle)

POS_TOL = 1e-9
ANG_TOL = 1e-9
MIN_PIECE = 1e-13


@dataclass(frozen=True)
class ArcSpline:
    primitives: tuple
    curve_class: str = "K"
    tol: float = POS_TOL
    angle_tol: float = ANG_TOL

    def __post_init__(self):
        object.__setattr__(self, "primitives", tuple(self.primitives))
        if self.curve_class not in ("K", "C"):
            raise ValueError("curve_class must be 'K' or 'C'")
        if not self.primitives:
            raise ValueError("an arc-spline needs at least one primitive")

    def __len__(self) -> int:
        return len(self.primitives)

    def __getitem__(self, i: int) -> Primitive:
        return self.primitives[i]

    @property
    def is_cusped(self) -> bool:
        return self.curve_class == "C"

    @cached_property
    def lengths(self) -> np.ndarray:
        return np.array([p.length for p in self.primitives])

    @cached_property
    def cum(self) -> np.ndarray:
        """Arc length at the start of every primitive, plus the total."""
        return np.concatenate(([0.0], np.cumsum(self.lengths)))

    @property
    def length(self) -> float:
        return float(self.cum[-1])

    @cached_property
    def headings(self) -> np.ndarray:
        """Unwrapped tangent heading at the start of each primitive and at the end."""
        h = [wrap_angle(self.primitives[0].heading_at(0.0))]
        for i, p in enumerate(self.primitives):
            end = h[-1] + p.turning
            if i + 1 < len(self.primitives):
                raw = self.primitives[i + 1].heading_at(0.0)
                h.append(end + wrap_angle(raw - end))
            else:
                h.append(end)
        return np.array(h)

    @cached_property
    def scale(self) -> float:
        bb = self.bbox
        return max(bb[2] - bb[0], bb[3] - bb[1])

    @cached_property
    def bbox(self) -> tuple[float, float, float, float]:
        boxes = np.array([p.bbox() for p in self.primitives])
        return (boxes[:, 0].min(), boxes[:, 1].min(), boxes[:, 2].max(), boxes[:, 3].max())

    @cached_property
    def boxes(self) -> np.ndarray:
        return np.array([p.bbox() for p in self.primitives])

    def locate(self, s: float) -> tuple[int, float]:
        """Primitive index and local parameter of arc length ``s``."""
        L = self.length
        if self.curve_class == "K":
            s = s % L if (s < 0.0 or s >= L) else s
        elif s < -self.tol or s > L + self.tol:
            raise ValueError(f"arc length {s} outside [0, {L}]")
        s = min(max(s, 0.0), L)
        i = bisect.bisect_right(self.cum, s) - 1
        i = min(max(i, 0), len(self.primitives) - 1)
        ln = self.lengths[i]
        return i, float(min(max((s - self.cum[i]) / ln, 0.0), 1.0))

    def s_of(self, i: int, t: float) -> float:
        return float(self.cum[i] + t * self.lengths[i])

    def point(self, s: float) -> tuple[float, float]:
        i, t = self.locate(s)
        return self.primitives[i].point(t)

    def heading(self, s: float) -> float:
        """Unwrapped heading at arc length ``s`` (periodic shift ignored)."""
        i, t = self.locate(s)
        return float(self.headings[i] + t * self.primitives[i].turning)

    def cumulative_turning(self, s: float) -> float:
        """Integral of curvature from 0 to ``s`` (0 <= s <= L)."""
        i, t = self.locate(s)
        return float(self.headings[i] - self.headings[0] + t * self.primitives[i].turning)

    def extract(self, s0: float, s1: float) -> list[Primitive]:
        """Primitives covering arc length ``s0 .. s1`` in orientation order.

        For class K curves ``s1`` may exceed ``L`` (the piece wraps the
        closure); for class C curves ``0 <= s0 <= s1 <= L``.
        """
        L = self.length
        n = len(self.primitives)
        if self.curve_class == "K":
            base = math.floor(s0 / L) * L if (s0 < 0.0 or s0 >= L) else 0.0
            s0, s1 = s0 - base, s1 - base
        out: list[Primitive] = []
        i = min(max(bisect.bisect_right(self.cum, s0) - 1, 0), n - 1)
        offset = 0.0
        while True:
            lo = self.cum[i] + offset
            ln = self.lengths[i]
            hi = lo + ln
            if lo >= s1 - MIN_PIECE:
                break
            t0 = max((s0 - lo) / ln, 0.0)
            t1 = min((s1 - lo) / ln, 1.0)
            if (t1 - t0) * ln > MIN_PIECE:
                p = self.primitives[i]
                out.append(p if (t0 <= 0.0 and t1 >= 1.0) else p.sub(t0, t1))
            if hi >= s1 - MIN_PIECE:
                break
            i += 1
            if i == n:
                if self.curve_class == "C":
                    break
                i = 0
                offset += L
        return out

    def with_primitives(self, prims: Iterable[Primitive], curve_class: str | None = None) -> "ArcSpline":
        return ArcSpline(tuple(prims), curve_class or self.curve_class, self.tol, self.angle_tol)

    def rotate_start(self, i: int) -> "ArcSpline":
        if self.curve_class != "K":
            raise ValueError("only class K curves can change their start point")
        return self.with_primitives(self.primitives[i:] + self.primitives[:i])

    def translated(self, v) -> "ArcSpline":
        return self.with_primitives(p.translated(tuple(v)) for p in self.primitives)

    def scaled(self, lam: float) -> "ArcSpline":
        return self.with_primitives(p.scaled(lam) for p in self.primitives)

    def rotated(self, angle: float) -> "ArcSpline":
        return self.with_primitives(p.rotated(angle) for p in self.primitives)

    def to_dict(self) -> dict:
        return {"class": self.curve_class,
                "primitives": [p.to_dict() for p in self.primitives]}

    @classmethod
    def from_dict(cls, d: dict, tol: float = POS_TOL) -> "ArcSpline":
        prims = [primitive_from_dict(p) for p in d["primitives"]]
        return cls(tuple(prims), d.get("class", "K"), tol)

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str, tol: float = POS_TOL) -> "ArcSpline":
        return cls.from_dict(json.loads(text), tol)


def dumps(obj, indent: int | None = None) -> str:
    """JSON with floats written at 17 significant digits."""
    def enc(o, level):
        pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
        end = "" if indent is None else "\n" + " " * (indent * level)
        sep = "," if indent is None else ","
        if isinstance(o, (bool, np.bool_)) or o is None:
            return json.dumps(None if o is None else bool(o))
        if isinstance(o, (float, np.floating)):
            o = float(o)
            if not math.isfinite(o):
                return json.dumps(None)
            return format(o, ".17g")
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [pad + json.dumps(str(k)) + ": " + enc(v, level + 1) for k, v in o.items()]
            return "{" + sep.join(items) + end + "}"
        if isinstance(o, (list, tuple, np.ndarray)):
            if len(o) == 0:
                return "[]"
            if all(isinstance(v, (int, float, np.number)) and not isinstance(v, (bool, np.bool_)) for v in o):
                return "[" + ", ".join(enc(v, level + 1) for v in o) + "]"
            return "[" + sep.join(pad + enc(v, level + 1) for v in o) + end + "]"
        if hasattr(o, "to_dict"):
            return enc(o.to_dict(), level)
        raise TypeError(f"cannot serialize {type(o).__name__}")
    return enc(obj, 0)


@dataclass(frozen=True)
class SubArcRef:
    """Oriented sub-arc between two curve positions ``(primitive, t)``."""

    start: tuple[int, float]
    end: tuple[int, float]
    wraps_closure: bool = False

    @classmethod
    def from_s(cls, curve: ArcSpline, s0: float, s1: float) -> "SubArcRef":
        L = curve.length
        wraps = False
        if curve.curve_class == "K":
            shift = math.floor(s0 / L) * L
            s0, s1 = s0 - shift, s1 - shift
            if s1 > L:
                s1 -= L
                wraps = True
        i0, t0 = _locate_start(curve, s0)
        i1, t1 = _locate_end(curve, s1)
        return cls((i0, t0), (i1, t1), wraps)

    def s_range(self, curve: ArcSpline) -> tuple[float, float]:
        s0 = curve.s_of(*self.start)
        s1 = curve.s_of(*self.end)
        if self.wraps_closure or s1 < s0 - 1e-15:
            s1 += curve.length
        return s0, s1

    def to_dict(self) -> dict:
        return {"start": list(self.start), "end": list(self.end),
                "wraps_closure": self.wraps_closure}


def _locate_start(curve: ArcSpline, s: float) -> tuple[int, float]:
    i, t = curve.locate(s)
    if t >= 1.0 and i + 1 < len(curve):
        return i + 1, 0.0
    return i, t


def _locate_end(curve: ArcSpline, s: float) -> tuple[int, float]:
    i, t = curve.locate(s)
    if t <= 0.0 and i > 0:
        return i - 1, 1.0
    return i, t


@dataclass
class CurveMetrics:
    length: float
    area: float
    energy: float
    oscillation: int
    turning_number: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class ValidationReport:
    valid: bool
    curve_class: str
    violations: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid

    def kinds(self) -> list[str]:
        return [v["kind"] for v in self.violations]

    def to_dict(self) -> dict:
        return {"valid": self.valid, "class": self.curve_class, "violations": self.violations}


# --------------------------------------------------------------------------
# functionals

def length(curve: ArcSpline, sub: SubArcRef | None = None) -> float:
    if sub is None:
        return curve.length
    s0, s1 = sub.s_range(curve)
    return s1 - s0


def signed_area(curve_or_prims) -> float:
    """Gauss-Green area; exact for segments and arcs."""
    prims = curve_or_prims.primitives if isinstance(curve_or_prims, ArcSpline) else curve_or_prims
    return math.fsum(p.area_term() for p in prims)


def elastic_energy(curve_or_prims) -> float:
    """Half the integral of squared curvature.  The cusp of a class C curve
    contributes nothing."""
    prims = curve_or_prims.primitives if isinstance(curve_or_prims, ArcSpline) else curve_or_prims
    return sum(p.energy for p in prims)


def total_curvature(curve: ArcSpline, sub: SubArcRef | None = None) -> float:
    """Signed integral of curvature over ``sub`` (whole curve if None); a
    sub-arc passing through the cusp of a class C curve picks up +pi."""
    if sub is None:
        tot = sum(p.turning for p in curve.primitives)
        return tot + (math.pi if curve.is_cusped else 0.0)
    s0, s1 = sub.s_range(curve)
    return turning_between(curve, s0, s1) + (math.pi if (curve.is_cusped and sub.wraps_closure) else 0.0)


def turning_between(curve: ArcSpline, s0: float, s1: float) -> float:
    """Integral of curvature over ``[s0, s1]`` (class K may wrap, no cusp term)."""
    return sum(p.turning for p in curve.extract(s0, s1))


def point_at(curve: ArcSpline, s: float) -> tuple[float, float]:
    _check_s(curve, s)
    return curve.point(s)


def tangent_at(curve: ArcSpline, s: float) -> tuple[float, float]:
    _check_s(curve, s)
    h = curve.heading(s)
    return (math.cos(h), math.sin(h))


def normal_at(curve: ArcSpline, s: float) -> tuple[float, float]:
    tx, ty = tangent_at(curve, s)
    return (-ty, tx)


def _check_s(curve, s):
    if not (-curve.tol <= s <= curve.length + curve.tol):
        raise ValueError(f"arc length {s} outside [0, {curve.length}]")


def turning_number(curve: ArcSpline) -> float:
    return total_curvature(curve) / TWO_PI


def metrics(curve: ArcSpline) -> CurveMetrics:
    from .arcs import oscillation_number
    return CurveMetrics(curve.length, signed_area(curve), elastic_energy(curve),
                        oscillation_number(curve), turning_number(curve))


# --------------------------------------------------------------------------
# point location

def _arg_change_segment(p, a, b) -> float:
    ax, ay = a[0] - p[0], a[1] - p[1]
    bx, by = b[0] - p[0], b[1] - p[1]
    return math.atan2(ax * by - ay * bx, ax * bx + ay * by)


def winding_number(curve_or_prims, p) -> float:
    """Winding number of the closed chain around ``p`` (exact up to rounding)."""
    prims = curve_or_prims.primitives if isinstance(curve_or_prims, ArcSpline) else curve_or_prims
    total = 0.0
    for prim in prims:
        a, b = prim.start_point, prim.end_point
        total += _arg_change_segment(p, a, b)
        if isinstance(prim, Arc):
            cx, cy = prim.center
            if math.hypot(p[0] - cx, p[1] - cy) < prim.radius:
                side = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
                if (prim.ccw and side < 0.0) or (not prim.ccw and side > 0.0):
                    total += TWO_PI if prim.ccw else -TWO_PI
    # close any residual gap at the closure joint
    total += _arg_change_segment(p, prims[-1].end_point, prims[0].start_point)
    return total / TWO_PI


def contains(curve_or_prims, p) -> bool:
    """True iff ``p`` lies in the open region bounded by the chain."""
    return abs(winding_number(curve_or_prims, p)) > 0.5


def distance_to_curve(curve: ArcSpline, p) -> float:
    return min(closest_point(p, prim)[0] for prim in curve.primitives)


def closest_on_curve(curve: ArcSpline, p) -> tuple[float, float]:
    """``(distance, s)`` of the closest curve point to ``p``."""
    best = (math.inf, 0.0)
    for i, prim in enumerate(curve.primitives):
        d, t = closest_point(p, prim)
        if d < best[0]:
            best = (d, curve.s_of(i, t))
    return best


# --------------------------------------------------------------------------
# simplicity

def joint_exclusion(curve: ArcSpline) -> float:
    return max(100.0 * curve.tol, 1e-7 * curve.scale)


def self_intersections(curve: ArcSpline, only: Iterable[int] | None = None,
                       first: bool = False) -> list[tuple[int, int, tuple[float, float]]]:
    """Pairs of primitives that meet away from their shared joints."""
    n = len(curve)
    boxes = curve.boxes
    pad = 1e-12 * max(curve.scale, 1.0)
    excl = joint_exclusion(curve)
    L = curve.length
    idx = np.arange(n) if only is None else np.array(sorted(set(only)), dtype=int)
    if len(idx) == 0:
        return []
    bi = boxes[idx]
    mask = ((boxes[None, :, 0] <= bi[:, None, 2] + pad) & (boxes[None, :, 2] >= bi[:, None, 0] - pad)
            & (boxes[None, :, 1] <= bi[:, None, 3] + pad) & (boxes[None, :, 3] >= bi[:, None, 1] - pad))
    rows, cols = np.nonzero(mask)
    ii, jj = idx[rows], cols
    keep = ii != jj
    pairs = sorted({(int(min(a, b)), int(max(a, b))) for a, b in zip(ii[keep], jj[keep])})
    out = []
    for i, j in pairs:
        hits = intersect(curve[i], curve[j])
        if not hits:
            continue
        for (t, u) in hits:
            # hits at (nearly) the same curve position are joints, not crossings
            d = abs(curve.s_of(i, t) - curve.s_of(j, u))
            if min(d, L - d) <= excl:
                continue
            pt = curve[i].point(t)
            out.append((i, j, pt))
            if first:
                return out
            break
    return out


def is_simple(curve: ArcSpline, only: Iterable[int] | None = None) -> tuple[bool, tuple | None]:
    """``(True, None)`` for a simple curve, else ``(False, (i, j, point))``.

    The closure contact of a class C curve is a shared joint and is allowed.
    """
    hits = self_intersections(curve, only, first=True)
    return (not hits, hits[0] if hits else None)


def min_self_distance(curve: ArcSpline, sub: SubArcRef, exclusion: float | None = None) -> float:
    """Distance between ``sub`` and the rest of the curve, ignoring an
    arc-length neighbourhood of size ``exclusion`` around the endpoints."""
    from .geometry import closest_pair
    if exclusion is None:
        exclusion = 10.0 * curve.tol
    L = curve.length
    s0, s1 = sub.s_range(curve)
    inner = curve.extract(s0 + exclusion, s1 - exclusion) if s1 - s0 > 2 * exclusion else []
    if curve.curve_class == "K":
        rest = curve.extract(s1 + exclusion, s0 + L - exclusion)
    else:
        rest = (curve.extract(0.0, max(s0 - exclusion, 0.0)) if s0 - exclusion > 0 else []) + \
               (curve.extract(min(s1 + exclusion, L), L) if s1 + exclusion < L else [])
    if not inner or not rest:
        return math.inf
    return min(closest_pair(a, b)[0] for a in inner for b in rest)


# --------------------------------------------------------------------------
# validation

def validate(curve: ArcSpline) -> ValidationReport:
    """Check every arc-spline invariant and report all violations."""
    v: list[dict] = []
    n = len(curve)
    ptol = curve.tol * max(1.0, curve.scale)
    atol = curve.angle_tol
    for i, p in enumerate(curve.primitives):
        coords = [*p.start_point, *p.end_point] + ([p.radius, p.sweep] if isinstance(p, Arc) else [])
        if not all(math.isfinite(c) for c in coords):
            v.append({"kind": "non_finite", "where": i})
            continue
        if isinstance(p, Segment) and p.length <= curve.tol:
            v.append({"kind": "degenerate_segment", "where": i})
        if isinstance(p, Arc) and not (p.radius > 0.0 and 0.0 < abs(p.sweep) < TWO_PI):
            v.append({"kind": "bad_arc", "where": i, "sweep": p.sweep, "radius": p.radius})
    if v:
        return ValidationReport(False, curve.curve_class, v)
    for i in range(n - 1):
        a, b = curve[i], curve[i + 1]
        gap = math.dist(a.end_point, b.start_point)
        if gap > ptol:
            v.append({"kind": "continuity", "where": i, "gap": gap})
        dh = wrap_angle(b.heading_at(0.0) - a.heading_at(1.0))
        if abs(dh) > atol:
            v.append({"kind": "tangent", "where": i, "jump": dh})
    first, last = curve[0], curve[-1]
    gap = math.dist(last.end_point, first.start_point)
    if gap > ptol:
        v.append({"kind": "closure", "where": n - 1, "gap": gap})
    dh = wrap_angle(first.heading_at(0.0) - last.heading_at(1.0))
    if curve.curve_class == "K":
        if abs(dh) > atol:
            v.append({"kind": "tangent", "where": n - 1, "jump": dh})
    else:
        if abs(abs(dh) - math.pi) > atol:
            v.append({"kind": "cusp", "where": n - 1, "jump": dh})
        else:
            h = last.heading_at(1.0)
            probe = 1e-6 * curve.scale
            cusp = last.end_point
            out_pt = (cusp[0] + probe * math.cos(h), cusp[1] + probe * math.sin(h))
            if contains(curve, out_pt):
                v.append({"kind": "cusp_not_external", "where": n - 1})
    area = signed_area(curve)
    if area <= 0.0:
        v.append({"kind": "orientation", "area": area})
    if not v:
        ok, pair = is_simple(curve)
        if not ok:
            v.append({"kind": "simplicity", "pair": [pair[0], pair[1]], "point": list(pair[2])})
    return ValidationReport(not v, curve.curve_class, v)


# --------------------------------------------------------------------------
# sampling

def sample(curve: ArcSpline, n: int) -> np.ndarray:
    """``n`` points equally spaced in arc length (closed curve, no repeat)."""
    s = np.linspace(0.0, curve.length, n, endpoint=False)
    return sample_at(curve, s)


def sample_at(curve: ArcSpline, s: Sequence[float]) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    idx = np.clip(np.searchsorted(curve.cum, s, side="right") - 1, 0, len(curve) - 1)
    t = np.clip((s - curve.cum[idx]) / curve.lengths[idx], 0.0, 1.0)
    out = np.empty((len(s), 2))
    for i, prim in enumerate(curve.primitives):
        m = idx == i
        if not m.any():
            continue
        tt = t[m]
        if isinstance(prim, Segment):
            out[m, 0] = prim.start[0] + tt * (prim.end[0] - prim.start[0])
            out[m, 1] = prim.start[1] + tt * (prim.end[1] - prim.start[1])
        else:
            ang = prim.start_angle + tt * prim.sweep
            out[m, 0] = prim.center[0] + prim.radius * np.cos(ang)
            out[m, 1] = prim.center[1] + prim.radius * np.sin(ang)
    return out


def sample_curvature(curve: ArcSpline, s: Sequence[float]) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    idx = np.clip(np.searchsorted(curve.cum, s, side="right") - 1, 0, len(curve) - 1)
    k = np.array([p.curvature for p in curve.primitives])
    return k[idx]


def polygon_area(pts: np.ndarray) -> float:
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def polygon_length(pts: np.ndarray) -> float:
    return float(np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1).sum())
