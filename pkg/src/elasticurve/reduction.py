"""Driver that reduces a class K curve to K_pi / C_pi terminal curves."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from .arcs import classify
from .curve import ArcSpline, dumps, elastic_energy, signed_area
from .procedures import (ProcedureError, find_procedure1_sites, find_procedure2_sites,
                         procedure1_run, procedure2_run, split)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000


class ReductionBudgetError(RuntimeError):
    def __init__(self, msg, trace):
        super().__init__(msg)
        self.trace = trace


@dataclass
class TraceStep:
    step: int
    branch: str
    procedure: int
    site: dict
    eps_bar: float
    event: str
    area_before: float
    area_after: float
    energy_before: float
    energy_after: float
    curves_after: list
    events: list = field(default_factory=list)
    children: list = field(default_factory=list)
    pinch: dict | None = None

    @property
    def monotone(self) -> bool:
        return (self.area_after < self.area_before - 1e-12 * abs(self.area_before)
                and self.energy_after <= self.energy_before + 1e-12 * abs(self.energy_before))

    def to_dict(self, with_curves: bool = True) -> dict:
        d = {"step": self.step, "branch": self.branch, "procedure": self.procedure, "site": self.site,
             "eps_bar": self.eps_bar, "event": self.event, "events": self.events,
             "area_before": self.area_before, "area_after": self.area_after,
             "energy_before": self.energy_before, "energy_after": self.energy_after,
             "monotone": self.monotone, "children": self.children, "pinch": self.pinch}
        if with_curves:
            cs = [c.to_dict() for c in self.curves_after]
            d["curve_after"] = cs[0] if len(cs) == 1 else cs
        return d


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)
    finals: dict = field(default_factory=dict)       # branch id -> class tag

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def monotone(self) -> bool:
        return all(s.monotone for s in self.steps)

    def to_jsonl(self, with_curves: bool = True) -> str:
        return "".join(dumps(s.to_dict(with_curves)) + "\n" for s in self.steps)

    def write(self, path, with_curves: bool = True) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_jsonl(with_curves))

    @staticmethod
    def read(path) -> list[dict]:
        with open(path) as fh:
            return [json.loads(line) for line in fh if line.strip()]


def _step_once(curve: ArcSpline):
    """One procedure application: ``(procedure, site, result curves, eps_bar,
    event, events, pinch)`` or None if the curve is terminal."""
    sites = find_procedure1_sites(curve)
    if sites:
        site = sites[0]
        res = procedure1_run(curve, site)
        if res.event == "F4":
            pieces, ev = split(res.curve, res.contacts)
            return 1, site, pieces, res.eps_bar, "F4", res.events, ev.to_dict()
        return 1, site, [res.curve], res.eps_bar, res.event, res.events, None
    sites = find_procedure2_sites(curve)
    if sites:
        site = sites[0]
        res = procedure2_run(curve, site)
        pieces, ev = split(res.curve, res.event.contacts)
        return 2, site, pieces, res.eps_bar, "pinch", ["pinch"], ev.to_dict()
    return None


def reduce(curve: ArcSpline, budget: int = DEFAULT_BUDGET) -> tuple[list[ArcSpline], ReductionTrace]:
    """Apply Procedures 1 and 2 until every remaining curve is terminal."""
    if curve.is_cusped:
        raise ProcedureError("reduce expects a class K curve")
    trace = ReductionTrace()
    live = [("0", curve)]
    finals: list[tuple[str, ArcSpline]] = []
    step = 0
    while live:
        branch, c = live.pop(0)
        while True:
            if step >= budget:
                raise ReductionBudgetError(f"step budget {budget} exhausted", trace)
            out = _step_once(c)
            if out is None:
                finals.append((branch, c))
                trace.finals[branch] = classify(c).tag
                break
            proc, site, pieces, eps_bar, event, events, pinch = out
            step += 1
            children = [branch] if len(pieces) == 1 else [f"{branch}.{k + 1}" for k in range(len(pieces))]
            st = TraceStep(step, branch, proc, site.to_dict(), eps_bar, event,
                           signed_area(c), sum(signed_area(p) for p in pieces),
                           elastic_energy(c), sum(elastic_energy(p) for p in pieces),
                           pieces, events, children, pinch)
            trace.steps.append(st)
            if not st.monotone:
                log.warning("non-monotone step %d on branch %s", step, branch)
            if len(pieces) == 1:
                c = pieces[0]
                continue
            live = [(b, p) for b, p in zip(children, pieces)] + live
            break
    finals.sort(key=lambda bc: bc[0])
    return [c for _, c in finals], trace
