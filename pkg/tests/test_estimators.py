"""scikit-learn style wrappers."""
import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from elasticurve import (ClassTagger, CurveFeatures, InequalityVerifier, Reducer, ShorteningFlow, check_curve,
                         check_curves)
from elasticurve.estimators import FEATURES, CurveValidationError
from elasticurve.generators import make_circle, make_necked_dumbbell, make_stadium

from conftest import figure_eight


def test_check_curve_accepts_many_inputs(tmp_path, stadium):
    path = tmp_path / "s.json"
    path.write_text(stadium.to_json())
    for x in (stadium, stadium.to_dict(), stadium.to_json(), str(path), path):
        assert check_curve(x).to_json() == stadium.to_json()
    assert len(check_curves(stadium)) == 1
    assert len(check_curves([stadium, stadium])) == 2


def test_check_curve_rejects():
    with pytest.raises(TypeError):
        check_curve(3.0)
    with pytest.raises(CurveValidationError) as e:
        check_curve(figure_eight())
    assert e.value.report.kinds() == ["simplicity"]
    with pytest.raises(CurveValidationError):
        check_curve(make_circle(), require_class="C")


def test_features(circle, stadium):
    X = CurveFeatures().fit_transform([circle, stadium])
    assert X.shape == (2, len(FEATURES))
    i = FEATURES.index("area_energy2")
    assert X[0, i] == pytest.approx(np.pi ** 3)
    sel = CurveFeatures(features=["energy", "delta_E"]).fit([circle])
    assert list(sel.get_feature_names_out()) == ["energy", "delta_E"]
    assert sel.transform([stadium])[0] == pytest.approx([np.pi, 1 / np.pi])


def test_features_in_pipeline(circle, stadium, dented):
    pipe = make_pipeline(CurveFeatures(), StandardScaler())
    Z = pipe.fit_transform([circle, stadium, dented])
    assert Z.shape == (3, len(FEATURES))


def test_get_params_and_clone():
    r = Reducer(budget=50, grid=32)
    assert r.get_params() == {"budget": 50, "grid": 32}
    r2 = clone(r)
    assert r2.get_params() == r.get_params() and r2 is not r
    f = ShorteningFlow(n=256).set_params(rtol=0.05)
    assert clone(f).rtol == 0.05


def test_class_tagger(circle, drop, figure1):
    tags = ClassTagger().fit([circle]).predict([circle, drop, figure1])
    assert list(tags) == ["Kpi", "Cpi", "neither"]


def test_not_fitted(circle):
    from sklearn.exceptions import NotFittedError
    with pytest.raises(NotFittedError):
        ClassTagger().predict([circle])


def test_reducer():
    red = Reducer().fit([make_necked_dumbbell(), make_circle()])
    assert list(red.predict()) == [True, True]
    finals = red.transform()
    assert [len(f) for f in finals] == [2, 1]
    assert red.traces_[0].monotone


def test_inequality_verifier(circle, stadium):
    v = InequalityVerifier()
    assert list(v.fit([circle, stadium]).predict()) == [True, True]
    assert v.score([make_stadium(1.0, 3.0)]) == 1.0


def test_shortening_flow_validates_parameters(circle):
    with pytest.raises(ValueError):
        ShorteningFlow(n=4).fit()
    with pytest.raises(ValueError):
        ShorteningFlow(dt=-1.0).fit()
    res = ShorteningFlow(n=128).fit().transform([circle])
    assert res[0].report.status == "pass"
