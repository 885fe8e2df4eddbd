"""scikit-learn style wrappers.

Curves go in as ``ArcSpline`` objects, dicts in the JSON curve format, JSON
strings or paths; :func:`check_curve` normalizes and validates them the way
``check_array`` does for numeric input.
"""
from __future__ import annotations

import json
import math
import os

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .arcs import classify
from .certify import CertificateError, certify_final
from .curve import ArcSpline, elastic_energy, metrics, signed_area, validate
from .flows import csf_run
from .inequalities import all_checks, deficits
from .reduction import DEFAULT_BUDGET, reduce


class CurveValidationError(ValueError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


def check_curve(X, require_class: str | None = None, validate_curve: bool = True) -> ArcSpline:
    """Coerce ``X`` to a validated ``ArcSpline``."""
    if isinstance(X, ArcSpline):
        c = X
    elif isinstance(X, dict):
        c = ArcSpline.from_dict(X)
    elif isinstance(X, (str, os.PathLike)):
        text = str(X)
        if not text.lstrip().startswith("{"):
            with open(text) as fh:
                text = fh.read()
        c = ArcSpline.from_dict(json.loads(text))
    else:
        raise TypeError(f"cannot interpret {type(X).__name__} as a curve")
    if require_class is not None and c.curve_class != require_class:
        raise CurveValidationError(f"expected a class {require_class} curve, got {c.curve_class}")
    if validate_curve:
        rep = validate(c)
        if not rep.valid:
            raise CurveValidationError(f"invalid curve: {', '.join(rep.kinds())}", rep)
    return c


def check_curves(X, **kw) -> list[ArcSpline]:
    if isinstance(X, (ArcSpline, dict, str, os.PathLike)):
        X = [X]
    return [check_curve(x, **kw) for x in X]


FEATURES = ["length", "area", "energy", "area_energy2", "length_energy", "delta_L", "delta_E", "oscillation"]


class CurveFeatures(TransformerMixin, BaseEstimator):
    """Scale-aware shape features, one row per curve."""

    def __init__(self, features=None):
        self.features = features

    def fit(self, X, y=None):
        check_curves(X)
        self.feature_names_out_ = np.array(self.features or FEATURES)
        return self

    def transform(self, X):
        check_is_fitted(self, "feature_names_out_")
        rows = []
        for c in check_curves(X):
            m = metrics(c)
            dl, de, _ = deficits(c)
            full = {"length": m.length, "area": m.area, "energy": m.energy,
                    "area_energy2": m.area * m.energy ** 2, "length_energy": m.length * m.energy,
                    "delta_L": dl, "delta_E": de, "oscillation": float(m.oscillation)}
            rows.append([full[k] for k in self.feature_names_out_])
        return np.asarray(rows, dtype=float).reshape(-1, len(self.feature_names_out_))

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "feature_names_out_")
        return self.feature_names_out_


class ClassTagger(BaseEstimator):
    """Predicts the terminal class tag ('Kpi', 'Cpi' or 'neither')."""

    def __init__(self, band: float = 1e-9):
        self.band = band

    def fit(self, X, y=None):
        check_curves(X, validate_curve=False)
        self.classes_ = np.array(["Cpi", "Kpi", "neither"])
        return self

    def predict(self, X):
        check_is_fitted(self, "classes_")
        return np.array([classify(c, band=self.band).tag for c in check_curves(X)])


class Reducer(TransformerMixin, BaseEstimator, auto_wrap_output_keys=None):
    """Runs the reduction and certificate on each curve.

    ``transform`` returns the terminal curves per input; ``predict`` returns
    whether the certificate chain validated.
    """

    def __init__(self, budget: int = DEFAULT_BUDGET, grid: int = 64):
        self.budget = budget
        self.grid = grid

    def fit(self, X, y=None):
        self.traces_, self.finals_, self.certificates_ = [], [], []
        for c in check_curves(X, require_class="K"):
            finals, trace = reduce(c, budget=self.budget)
            try:
                cert = certify_final(finals, signed_area(c), elastic_energy(c), grid=self.grid)
            except CertificateError:
                cert = None
            self.traces_.append(trace)
            self.finals_.append(finals)
            self.certificates_.append(cert)
        return self

    def transform(self, X=None):
        check_is_fitted(self, "finals_")
        if X is not None:
            self.fit(X)
        return self.finals_

    def predict(self, X=None):
        if X is not None:
            self.fit(X)
        check_is_fitted(self, "certificates_")
        return np.array([c is not None and c.valid for c in self.certificates_])


class InequalityVerifier(BaseEstimator):
    """Checks every inequality; ``predict`` flags curves with no hard
    violation (informational and inconclusive results are not violations)."""

    def __init__(self, rtol: float = 1e-9):
        self.rtol = rtol

    def fit(self, X, y=None):
        self.reports_ = [all_checks(c, rtol=self.rtol) for c in check_curves(X, require_class="K")]
        return self

    def predict(self, X=None):
        if X is not None:
            self.fit(X)
        check_is_fitted(self, "reports_")
        return np.array([all(r.status != "fail" for r in reps) for reps in self.reports_])

    def score(self, X, y=None):
        return float(np.mean(self.predict(X)))


class ShorteningFlow(TransformerMixin, BaseEstimator, auto_wrap_output_keys=None):
    """Curve shortening flow; ``transform`` returns one FlowResult per curve."""

    def __init__(self, n: int = 512, dt: float | None = None, record_every: int = 20,
                 stop_fraction: float = 0.9, rtol: float = 1e-2):
        self.n = n
        self.dt = dt
        self.record_every = record_every
        self.stop_fraction = stop_fraction
        self.rtol = rtol

    def fit(self, X=None, y=None):
        if not (self.n >= 16 and 0 < self.stop_fraction < 1 and self.rtol > 0):
            raise ValueError("invalid flow parameters")
        if self.dt is not None and not (self.dt > 0 and math.isfinite(self.dt)):
            raise ValueError("dt must be positive")
        self.fitted_ = True
        return self

    def transform(self, X):
        check_is_fitted(self, "fitted_")
        return [csf_run(c, dt=self.dt, n=self.n, record_every=self.record_every,
                        stop_fraction=self.stop_fraction, rtol=self.rtol)
                for c in check_curves(X, require_class="K")]
