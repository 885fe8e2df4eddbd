"""Line segments and circular arcs, the two building blocks of an arc-spline.

Both primitives are immutable and parametrized by ``t`` in ``[0, 1]``
proportionally to arc length.  Headings are tangent directions in radians.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi


def wrap_angle(a: float) -> float:
    """Map an angle to ``(-pi, pi]``."""
    a = math.fmod(a + math.pi, TWO_PI)
    if a <= 0.0:
        a += TWO_PI
    return a - math.pi


def unit(angle: float) -> tuple[float, float]:
    return (math.cos(angle), math.sin(angle))


def right_normal(heading: float) -> tuple[float, float]:
    """Unit vector pointing to the right of ``heading``."""
    return (math.sin(heading), -math.cos(heading))


@dataclass(frozen=True)
class Segment:
    start: tuple[float, float]
    end: tuple[float, float]

    kind = "segment"

    @property
    def length(self) -> float:
        return math.hypot(self.end[0] - self.start[0], self.end[1] - self.start[1])

    @property
    def curvature(self) -> float:
        return 0.0

    @property
    def turning(self) -> float:
        return 0.0

    @property
    def sign(self) -> int:
        return 0

    @property
    def energy(self) -> float:
        return 0.0

    @property
    def heading(self) -> float:
        return math.atan2(self.end[1] - self.start[1], self.end[0] - self.start[0])

    def heading_at(self, t: float) -> float:
        return self.heading

    @property
    def start_point(self) -> tuple[float, float]:
        return self.start

    @property
    def end_point(self) -> tuple[float, float]:
        return self.end

    def point(self, t: float) -> tuple[float, float]:
        return (self.start[0] + t * (self.end[0] - self.start[0]),
                self.start[1] + t * (self.end[1] - self.start[1]))

    def area_term(self) -> float:
        # half of the integral of x dy - y dx
        (x0, y0), (x1, y1) = self.start, self.end
        return 0.5 * (x0 * y1 - x1 * y0)

    def sub(self, t0: float, t1: float) -> "Segment":
        return Segment(self.point(t0), self.point(t1))

    def translated(self, v: tuple[float, float]) -> "Segment":
        return Segment((self.start[0] + v[0], self.start[1] + v[1]),
                       (self.end[0] + v[0], self.end[1] + v[1]))

    def reflected(self, m: tuple[float, float]) -> "Segment":
        """Point reflection through ``m`` (rotation by pi); orientation kept."""
        return Segment((2 * m[0] - self.start[0], 2 * m[1] - self.start[1]),
                       (2 * m[0] - self.end[0], 2 * m[1] - self.end[1]))

    def bbox(self) -> tuple[float, float, float, float]:
        return (min(self.start[0], self.end[0]), min(self.start[1], self.end[1]),
                max(self.start[0], self.end[0]), max(self.start[1], self.end[1]))

    def scaled(self, lam: float) -> "Segment":
        return Segment((lam * self.start[0], lam * self.start[1]),
                       (lam * self.end[0], lam * self.end[1]))

    def rotated(self, angle: float) -> "Segment":
        c, s = math.cos(angle), math.sin(angle)
        rot = lambda p: (c * p[0] - s * p[1], s * p[0] + c * p[1])  # noqa: E731
        return Segment(rot(self.start), rot(self.end))

    def to_dict(self) -> dict:
        return {"type": "segment", "from": list(self.start), "to": list(self.end)}


@dataclass(frozen=True)
class Arc:
    """Circular arc from ``start_angle`` to ``end_angle`` (polar angles about
    ``center``).  ``sweep = end_angle - start_angle`` is positive for
    counterclockwise arcs and negative for clockwise ones."""

    center: tuple[float, float]
    radius: float
    start_angle: float
    end_angle: float

    kind = "arc"

    @classmethod
    def from_sweep(cls, center, radius, start_angle, sweep) -> "Arc":
        return cls((float(center[0]), float(center[1])), float(radius),
                   float(start_angle), float(start_angle + sweep))

    @property
    def sweep(self) -> float:
        return self.end_angle - self.start_angle

    @property
    def ccw(self) -> bool:
        return self.sweep > 0.0

    @property
    def sign(self) -> int:
        return 1 if self.sweep > 0.0 else -1

    @property
    def length(self) -> float:
        return self.radius * abs(self.sweep)

    @property
    def curvature(self) -> float:
        return self.sign / self.radius

    @property
    def turning(self) -> float:
        return self.sweep

    @property
    def energy(self) -> float:
        return abs(self.sweep) / (2.0 * self.radius)

    def angle_at(self, t: float) -> float:
        return self.start_angle + t * self.sweep

    def point(self, t: float) -> tuple[float, float]:
        a = self.start_angle + t * (self.end_angle - self.start_angle)
        return (self.center[0] + self.radius * math.cos(a),
                self.center[1] + self.radius * math.sin(a))

    def heading_at(self, t: float) -> float:
        return self.angle_at(t) + self.sign * HALF_PI

    @property
    def start_point(self) -> tuple[float, float]:
        return self.point(0.0)

    @property
    def end_point(self) -> tuple[float, float]:
        return self.point(1.0)

    def param_of_angle(self, alpha: float, tol: float = 1e-12) -> float | None:
        """Parameter of the point at polar angle ``alpha``, or None if outside."""
        sweep = self.end_angle - self.start_angle
        span = abs(sweep)
        d = math.fmod(alpha - self.start_angle if sweep > 0.0 else self.start_angle - alpha, TWO_PI)
        if d < 0.0:
            d += TWO_PI
        if d <= span + tol:
            return min(max(d / span, 0.0), 1.0) if span > 0.0 else 0.0
        if d - TWO_PI >= -tol:
            return 0.0
        return None

    def param_of_heading(self, heading: float) -> float:
        """Unclamped parameter at which the tangent heading equals ``heading``
        (headings are taken in the unwrapped frame of ``heading_at``)."""
        return (heading - self.heading_at(0.0)) / self.sweep

    def area_term(self) -> float:
        cx, cy = self.center
        r = self.radius
        a0, a1 = self.start_angle, self.end_angle
        return 0.5 * (r * (cx * (math.sin(a1) - math.sin(a0))
                           - cy * (math.cos(a1) - math.cos(a0)))
                      + r * r * (a1 - a0))

    def sub(self, t0: float, t1: float) -> "Arc":
        return Arc(self.center, self.radius, self.angle_at(t0), self.angle_at(t1))

    def translated(self, v: tuple[float, float]) -> "Arc":
        return Arc((self.center[0] + v[0], self.center[1] + v[1]), self.radius,
                   self.start_angle, self.end_angle)

    def reflected(self, m: tuple[float, float]) -> "Arc":
        return Arc((2 * m[0] - self.center[0], 2 * m[1] - self.center[1]), self.radius,
                   self.start_angle + math.pi, self.end_angle + math.pi)

    def scaled(self, lam: float) -> "Arc":
        return Arc((lam * self.center[0], lam * self.center[1]), lam * self.radius,
                   self.start_angle, self.end_angle)

    def rotated(self, angle: float) -> "Arc":
        c, s = math.cos(angle), math.sin(angle)
        cx, cy = self.center
        return Arc((c * cx - s * cy, s * cx + c * cy), self.radius,
                   self.start_angle + angle, self.end_angle + angle)

    def bbox(self) -> tuple[float, float, float, float]:
        pts = [self.start_point, self.end_point]
        cx, cy = self.center
        r = self.radius
        for k, (dx, dy) in enumerate(((1, 0), (0, 1), (-1, 0), (0, -1))):
            if self.param_of_angle(k * HALF_PI, tol=0.0) is not None:
                pts.append((cx + r * dx, cy + r * dy))
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return (min(xs), min(ys), max(xs), max(ys))

    def to_dict(self) -> dict:
        return {"type": "arc", "center": list(self.center), "radius": self.radius,
                "start_angle": self.start_angle, "end_angle": self.end_angle,
                "ccw": self.ccw}


Primitive = Segment | Arc


def primitive_from_dict(d: dict) -> Primitive:
    kind = d.get("type")
    if kind == "segment":
        return Segment(tuple(map(float, d["from"])), tuple(map(float, d["to"])))
    if kind == "arc":
        a0 = float(d["start_angle"])
        a1 = float(d["end_angle"])
        ccw = bool(d.get("ccw", a1 > a0))
        sweep = math.fmod(a1 - a0, TWO_PI) if ccw else -math.fmod(a0 - a1, TWO_PI)
        if ccw and sweep <= 0.0:
            sweep += TWO_PI
        if not ccw and sweep >= 0.0:
            sweep -= TWO_PI
        return Arc.from_sweep(tuple(map(float, d["center"])), float(d["radius"]), a0, sweep)
    raise ValueError(f"unknown primitive type {kind!r}")


def tidy(prims, min_length: float) -> list:
    """Drop pieces shorter than ``min_length`` and merge collinear segment
    runs.  Dropped pieces leave a gap of at most ``min_length``, which the
    neighbours absorb: a segment is re-anchored, an arc is kept as is."""
    kept = [p for p in prims if p.length > min_length] or list(prims)
    out: list = []
    for p in kept:
        if out and isinstance(p, Segment) and isinstance(out[-1], Segment):
            a = out[-1]
            d0 = (a.end[0] - a.start[0], a.end[1] - a.start[1])
            d1 = (p.end[0] - p.start[0], p.end[1] - p.start[1])
            cross = d0[0] * d1[1] - d0[1] * d1[0]
            dot = d0[0] * d1[0] + d0[1] * d1[1]
            if dot > 0 and abs(cross) <= 1e-12 * math.hypot(*d0) * math.hypot(*d1):
                out[-1] = Segment(a.start, p.end)
                continue
        if out and isinstance(p, Segment) and math.dist(out[-1].end_point, p.start) > 0.0:
            p = Segment(out[-1].end_point, p.end)
        out.append(p)
    return out
