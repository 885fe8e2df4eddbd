"""SVG output: exact arc-spline paths with optional certificate overlays."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .curve import ArcSpline
from .primitives import Arc, Segment

COLORS = ["#1f4e79", "#8c2d04", "#2b7a0b", "#6a3d9a", "#b15928", "#01665e"]


def _f(v: float) -> str:
    s = f"{v:.9f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _arc_cmds(p: Arc) -> list[str]:
    # split near-full arcs so start and end never coincide
    pieces = [p] if abs(p.sweep) < 1.5 * math.pi else [p.sub(0.0, 0.5), p.sub(0.5, 1.0)]
    out = []
    for q in pieces:
        x, y = q.end_point
        large = 1 if abs(q.sweep) > math.pi else 0
        sweep = 1 if q.sweep > 0 else 0
        out.append(f"A {_f(q.radius)} {_f(q.radius)} 0 {large} {sweep} {_f(x)} {_f(y)}")
    return out


def path_data(prims, closed: bool = True) -> str:
    prims = list(prims)
    if not prims:
        return ""
    x0, y0 = prims[0].start_point
    cmds = [f"M {_f(x0)} {_f(y0)}"]
    for p in prims:
        if isinstance(p, Segment):
            x, y = p.end
            cmds.append(f"L {_f(x)} {_f(y)}")
        else:
            cmds.extend(_arc_cmds(p))
    if closed:
        cmds.append("Z")
    return " ".join(cmds)


def _bbox(curves, pad):
    xs0, ys0, xs1, ys1 = [], [], [], []
    for c in curves:
        for p in c.primitives:
            b = p.bbox()
            xs0.append(b[0])
            ys0.append(b[1])
            xs1.append(b[2])
            ys1.append(b[3])
    x0, y0, x1, y1 = min(xs0), min(ys0), max(xs1), max(ys1)
    w, h = x1 - x0, y1 - y0
    m = pad * max(w, h, 1e-9)
    return x0 - m, y0 - m, w + 2 * m, h + 2 * m


def render(curves, held=None, chords=None, title: str | None = None, width: int = 480,
           pad: float = 0.05) -> str:
    """SVG document for one or more curves.

    ``held`` is a list of ``(curve, certificate)`` pairs whose held arcs are
    drawn highlighted; ``chords`` a list of point pairs drawn dashed.
    """
    if isinstance(curves, ArcSpline):
        curves = [curves]
    curves = list(curves)
    x, y, w, h = _bbox(curves, pad)
    height = max(int(round(width * h / w)), 1)
    stroke = _f(max(w, h) / 300.0)
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
             f'viewBox="{_f(x)} {_f(-(y + h))} {_f(w)} {_f(h)}">']
    if title:
        parts.append(f"<title>{escape(title)}</title>")
    parts.append('<g transform="scale(1,-1)">')
    for i, c in enumerate(curves):
        parts.append(f'<path d="{path_data(c.primitives, closed=True)}" fill="none" '
                     f'stroke="{COLORS[i % len(COLORS)]}" stroke-width="{stroke}"/>')
    for c, cert in held or []:
        pcs = cert.pieces(c)
        parts.append(f'<path class="held" d="{path_data(pcs, closed=False)}" fill="none" '
                     f'stroke="#e31a1c" stroke-width="{_f(3 * float(stroke))}"/>')
        (ax, ay), (bx, by) = pcs[0].start_point, pcs[-1].end_point
        chords = list(chords or []) + [((ax, ay), (bx, by))]
    for (ax, ay), (bx, by) in chords or []:
        parts.append(f'<line class="chord" x1="{_f(ax)}" y1="{_f(ay)}" x2="{_f(bx)}" y2="{_f(by)}" '
                     f'stroke="#e31a1c" stroke-dasharray="{stroke} {stroke}" stroke-width="{stroke}"/>')
    parts.append("</g></svg>")
    return "\n".join(parts) + "\n"


def write(path, curves, **kw) -> None:
    with open(path, "w") as fh:
        fh.write(render(curves, **kw))
