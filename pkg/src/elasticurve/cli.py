"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 algorithm
diagnostic failure.  ``ELASTICURVE_TOL`` overrides the default position
tolerance used when reading curves.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import generators as gen
from .arcs import SearchError, classify, decompose_maximal_arcs, find_two_disjoint_held_arcs
from .certify import CertificateError, certify_final
from .curve import POS_TOL, ArcSpline, dumps, elastic_energy, metrics, signed_area, validate
from .flows import FlowError, csf_run
from .hull import convex_hull, diameter
from .inequalities import all_checks, compute_radii, reports_to_csv
from .procedures import ProcedureError
from .reduction import DEFAULT_BUDGET, ReductionBudgetError, reduce
from . import svg

log = logging.getLogger("elasticurve")

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_DIAGNOSTIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def default_tol() -> float:
    raw = os.environ.get("ELASTICURVE_TOL")
    if raw is None:
        return POS_TOL
    try:
        v = float(raw)
    except ValueError:
        raise UsageError(f"ELASTICURVE_TOL must be a number, got {raw!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise UsageError("ELASTICURVE_TOL must be positive")
    return v


def load_curve(path, tol: float | None = None) -> ArcSpline:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}") from None
    try:
        return ArcSpline.from_dict(data, tol if tol is not None else default_tol())
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{path} is not a curve: {e}") from None


def _write(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)


# --------------------------------------------------------------------------
# analyze

def analysis_report(curve: ArcSpline, curve_id: str = "curve") -> dict:
    rep = validate(curve)
    out = {"curve_id": curve_id, "validation": rep.to_dict()}
    if not rep.valid:
        return out
    out["metrics"] = metrics(curve).to_dict()
    out["maximal_arcs"] = [a.to_dict() for a in decompose_maximal_arcs(curve)]
    tag = classify(curve)
    out["class_tag"] = tag.tag
    if curve.curve_class == "K":
        radii = compute_radii(curve)
        out["radii"] = radii.to_dict()
        out["checks"] = [r.to_dict() for r in all_checks(curve, radii)]
    return out


def cmd_analyze(args) -> int:
    curve = load_curve(args.input, args.tol)
    rep = analysis_report(curve, Path(args.input).stem)
    _write(args.report, dumps(rep, indent=2) + "\n")
    return EXIT_OK if rep["validation"]["valid"] else EXIT_INVALID


# --------------------------------------------------------------------------
# reduce

def cmd_reduce(args) -> int:
    curve = load_curve(args.input, args.tol)
    rep = validate(curve)
    if not rep.valid or curve.curve_class != "K":
        _write(args.certificate, dumps({"validation": rep.to_dict(),
                                        "error": "reduce needs a valid class K curve"}, indent=2) + "\n")
        return EXIT_INVALID
    try:
        finals, trace = reduce(curve, budget=args.budget)
    except ReductionBudgetError as e:
        _write(args.trace, e.trace.to_jsonl())
        print(f"diagnostic: {e}", file=sys.stderr)
        return EXIT_DIAGNOSTIC
    except (ProcedureError, SearchError) as e:
        print(f"diagnostic: {e}", file=sys.stderr)
        return EXIT_DIAGNOSTIC
    _write(args.trace, trace.to_jsonl())
    if args.svg_dir:
        d = Path(args.svg_dir)
        d.mkdir(parents=True, exist_ok=True)
        svg.write(d / "step_0000.svg", [curve], title="input")
        for st in trace.steps:
            svg.write(d / f"step_{st.step:04d}.svg", st.curves_after,
                      title=f"step {st.step} branch {st.branch} event {st.event}")
    try:
        cert = certify_final(finals, signed_area(curve), elastic_energy(curve))
    except (CertificateError, SearchError) as e:
        _write(args.certificate, dumps({"valid": False, "error": str(e)}, indent=2) + "\n")
        return EXIT_DIAGNOSTIC
    if args.svg_dir:
        held = list(zip(finals if len(finals) == 2 else finals * 2, cert.held))
        svg.write(Path(args.svg_dir) / "certificate.svg", finals, held=held, title="certificate")
    out = cert.to_dict()
    out["steps"] = len(trace)
    out["finals"] = trace.finals
    out["monotone"] = trace.monotone
    _write(args.certificate, dumps(out, indent=2) + "\n")
    return EXIT_OK if cert.valid else EXIT_DIAGNOSTIC


# --------------------------------------------------------------------------
# verify

def _family_curves(family: str, count: int, seed: int):
    if count <= 0:
        return []
    if family == "random":
        return [(f"random_{seed + i}", gen.make_random_simple(seed + i)) for i in range(count)]
    if family == "figure1":
        return [(f"figure1_{n:02d}", gen.make_figure1_family(n)) for n in range(1, count + 1)]
    if family == "nonconvex":
        return gen.nonconvex_corpus(count, seed)
    if family == "convex":
        return gen.convex_suite()[:count]
    raise UsageError(f"unknown family {family!r}")


def _verify_one(item):
    cid, c = item
    return {"curve_id": cid, "checks": [r.to_dict() for r in all_checks(c)]}


def figure1_constancy(curves) -> list[dict]:
    """Extra rows for the Figure-1 family: constant E and A, growing diameter
    and hull product, Gage failure onset."""
    if not curves:
        return []
    cs = [c for _, c in curves]
    E = [elastic_energy(c) for c in cs]
    A = [signed_area(c) for c in cs]
    D = [diameter(c) for c in cs]
    H = []
    for c in cs:
        h = convex_hull(c)
        H.append(signed_area(h) * elastic_energy(h) ** 2)
    gage = [2 * e < math.pi * c.length / a for c, e, a in zip(cs, E, A)]
    n_star = next((i + 1 for i, g in enumerate(gage) if g), None)
    rows = [("energy_constant", max(E) - min(E) <= 1e-12, max(E) - min(E)),
            ("area_constant", max(A) - min(A) <= 1e-9, max(A) - min(A)),
            ("diameter_increasing", all(b > a for a, b in zip(D, D[1:])), min((b - a for a, b in zip(D, D[1:])), default=0.0)),
            ("hull_product_increasing", all(b > a for a, b in zip(H, H[1:])), min((b - a for a, b in zip(H, H[1:])), default=0.0))]
    out = [{"curve_id": "figure1_family", "checks": [
        {"name": n, "lhs": v, "rhs": 0.0, "slack": v, "satisfied": ok, "status": "pass" if ok else "fail"}
        for n, ok, v in rows]}]
    out[0]["checks"].append({"name": "gage_first_violation_n", "lhs": float(n_star or 0), "rhs": 0.0,
                             "slack": 0.0, "satisfied": True, "status": "informational"})
    return out


def cmd_verify(args) -> int:
    curves = _family_curves(args.family, args.count, args.seed)
    if args.jobs > 1 and len(curves) > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            reports = list(ex.map(_verify_one, curves, chunksize=max(1, len(curves) // (4 * args.jobs))))
    else:
        reports = [_verify_one(x) for x in curves]
    reports.sort(key=lambda r: r["curve_id"])
    if args.family == "figure1":
        reports += figure1_constancy(curves)
    _write(args.out, reports_to_csv(reports))
    hard = sum(1 for r in reports for c in r["checks"] if c["status"] == "fail")
    print(f"{len(curves)} curves, {hard} hard violations", file=sys.stderr)
    return EXIT_OK if hard == 0 else EXIT_DIAGNOSTIC


# --------------------------------------------------------------------------
# generate / flow / render

def _generate(args) -> ArcSpline:
    f = args.family
    if f == "circle":
        return gen.make_circle(args.radius if args.radius is not None else 1.0)
    if f == "stadium":
        return gen.make_stadium(args.r if args.r is not None else 1.0, args.d if args.d is not None else 1.0)
    if f == "rounded_square":
        return gen.make_rounded_polygon(gen.square(args.side or 2.0), args.radius if args.radius is not None else 0.5)
    if f == "rounded_polygon":
        return gen.make_rounded_polygon(gen.regular_polygon(args.n or 6, args.circumradius or 2.0),
                                        args.radius if args.radius is not None else 0.3)
    if f == "ellipse":
        return gen.make_ellipse(args.a or 2.0, args.b or 1.0, args.tol_fit)
    if f == "figure1":
        return gen.make_figure1_family(args.n or 1)
    if f == "random":
        return gen.make_random_simple(args.seed, args.complexity)
    if f == "dumbbell":
        return gen.make_necked_dumbbell()
    if f == "bulb_dumbbell":
        return gen.make_dumbbell()
    if f == "h_dumbbell":
        return gen.make_h_dumbbell()
    if f == "dented_oval":
        return gen.make_dented_oval()
    if f == "flower":
        return gen.make_flower(lobes=args.n or 4)
    if f == "drop":
        return gen.make_cusp_drop()
    raise UsageError(f"unknown family {f!r}")


GENERATE_FAMILIES = ["circle", "stadium", "rounded_square", "rounded_polygon", "ellipse", "figure1", "random",
                     "dumbbell", "bulb_dumbbell", "h_dumbbell", "dented_oval", "flower", "drop"]


def cmd_generate(args) -> int:
    try:
        c = _generate(args)
    except gen.GeneratorError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _write(args.out, dumps(c.to_dict(), indent=2) + "\n")
    return EXIT_OK if validate(c).valid else EXIT_INVALID


def cmd_flow(args) -> int:
    curve = load_curve(args.input, args.tol)
    if not validate(curve).valid or curve.curve_class != "K":
        print("error: flow needs a valid class K curve", file=sys.stderr)
        return EXIT_INVALID
    try:
        res = csf_run(curve, dt=args.dt, steps=args.steps, n=args.n, record_every=args.record_every)
    except FlowError as e:
        print(f"diagnostic: {e}", file=sys.stderr)
        return EXIT_DIAGNOSTIC
    _write(args.out, res.to_csv())
    summary = {"length_rate": res.report.to_dict(), "area_rate": res.area_rate.to_dict(),
               "extinction_time": res.extinction_time, "records": len(res.records)}
    print(dumps(summary, indent=2), file=sys.stderr)
    ok = res.report.status != "fail" and res.area_rate.status != "fail"
    return EXIT_OK if ok else EXIT_DIAGNOSTIC


def cmd_render(args) -> int:
    curve = load_curve(args.input, args.tol)
    held = []
    if args.certificate and curve.curve_class == "K":
        try:
            held = [(curve, h) for h in find_two_disjoint_held_arcs(curve)]
        except SearchError as e:
            print(f"note: no certificate drawn ({e})", file=sys.stderr)
    _write(args.out, svg.render([curve], held=held, title=Path(args.input).stem))
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="elasticurve", description="Elastic energy tools for planar arc-spline curves.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_tol(sp):
        sp.add_argument("--tol", type=float, default=None, help="position tolerance (default: $ELASTICURVE_TOL or 1e-9)")
        return sp

    a = with_tol(sub.add_parser("analyze", help="metrics, arc structure, class tag and inequality report"))
    a.add_argument("input")
    a.add_argument("-o", "--report", default="-")
    a.set_defaults(func=cmd_analyze)

    r = with_tol(sub.add_parser("reduce", help="run the reduction and certificate"))
    r.add_argument("input")
    r.add_argument("--trace", required=True)
    r.add_argument("--certificate", default="-")
    r.add_argument("--svg-dir", default=None)
    r.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="batch inequality verification")
    v.add_argument("--family", choices=["random", "figure1", "nonconvex", "convex"], default="random")
    v.add_argument("--count", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", default="-")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("generate", help="write a generated curve as JSON")
    g.add_argument("family", choices=GENERATE_FAMILIES)
    g.add_argument("--radius", type=float)
    g.add_argument("--r", type=float)
    g.add_argument("--d", type=float)
    g.add_argument("--side", type=float)
    g.add_argument("--circumradius", type=float)
    g.add_argument("--a", type=float)
    g.add_argument("--b", type=float)
    g.add_argument("--n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--complexity", type=int, default=4)
    g.add_argument("--tol-fit", type=float, default=1e-5)
    g.add_argument("-o", "--out", default="-")
    g.set_defaults(func=cmd_generate)

    f = with_tol(sub.add_parser("flow", help="curve shortening flow with the length-rate check"))
    f.add_argument("input")
    f.add_argument("--out", default="-")
    f.add_argument("--n", type=int, default=512)
    f.add_argument("--dt", type=float, default=None)
    f.add_argument("--steps", type=int, default=None)
    f.add_argument("--record-every", type=int, default=20)
    f.set_defaults(func=cmd_flow)

    s = with_tol(sub.add_parser("render", help="SVG rendering"))
    s.add_argument("input")
    s.add_argument("-o", "--out", default="-")
    s.add_argument("--certificate", action="store_true", help="draw held arcs and chords")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
