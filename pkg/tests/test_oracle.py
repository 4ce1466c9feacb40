import json
import warnings

import pytest

from secantlab.arith import PrimeField
from secantlab.curves import CurveModel, embed, rational_normal_curve
from secantlab.oracle import (HypothesisViolated, PredictionRecord,
                              hypothesis_holds, predicted_canonical_h0,
                              predicted_degree, predicted_multiplicity,
                              predicted_regularity, predictions, verify)
from secantlab.poly import PolyRing

F = PrimeField(32003)


def test_degree_spot_values():
    assert predicted_degree(0, 3, 1) == 1
    assert predicted_degree(0, 4, 1) == 3
    assert predicted_degree(1, 5, 1) == 5
    assert predicted_degree(1, 6, 1) == 9
    assert predicted_degree(2, 7, 1) == 13


def test_multiplicity_spot_values():
    assert predicted_multiplicity(1, 5, 1, 0) == 3
    assert predicted_multiplicity(0, 4, 1, 0) == 2
    assert predicted_multiplicity(2, 7, 1, 1) == 1


def test_regularity_pairs():
    assert predicted_regularity(0, 0) == (1, 2)
    assert predicted_regularity(0, 2) == (3, 4)
    assert predicted_regularity(1, 1) == (4, 5)
    assert predicted_regularity(2, 1) == (4, 5)


def test_canonical_h0():
    assert predicted_canonical_h0(0, 3) == 0
    assert predicted_canonical_h0(1, 1) == 1
    assert predicted_canonical_h0(2, 1) == 3


def test_hypothesis_window_and_warning():
    assert hypothesis_holds(1, 5, 1)
    assert not hypothesis_holds(1, 4, 1)
    with warnings.catch_warnings(record=True) as wlist:
        warnings.simplefilter("always")
        predicted_degree(1, 4, 1)
    assert any(issubclass(w.category, HypothesisViolated) for w in wlist)


def test_prediction_record_fields():
    rec = predictions(1, 5, 1)
    assert isinstance(rec, PredictionRecord)
    assert rec.r == 4 and rec.hypothesis_ok
    assert rec.predicted_dim == 3
    assert rec.predicted_degree == 5
    assert rec.predicted_reg_embedded == 5
    assert rec.predicted_ndp_window == 0
    assert rec.predicted_acm
    assert rec.predicted_canonical_h0 == 1
    rec6 = predictions(1, 6, 1)
    assert rec6.predicted_ndp_window == 1
    assert rec6.predicted_min_gen_degree == 3


def test_min_gen_prediction_absent_outside_window():
    rec = predictions(1, 5, 1)  # p_max = 0, no positive-step window
    assert rec.predicted_min_gen_degree is None


def test_verify_elliptic_quintic_matches():
    R2 = PolyRing(["x", "y"], F)
    m1 = CurveModel(1, F, R2.parse("y^2 - x^3 - 4*x - 1"))
    rep = verify(embed(m1, 5), 1)
    assert not rep.mismatches and not rep.resource_skips
    verdicts = {r["name"]: r["verdict"] for r in rep.rows}
    assert verdicts["degree"] == "match"
    assert verdicts["reg_embedded"] == "match"
    assert verdicts["corner"] == "match"
    assert verdicts["min_gen_degree"].startswith("skipped")


def test_verify_genus0_rows():
    rep = verify(rational_normal_curve(5, F), 1)
    assert not rep.mismatches
    rows = {r["name"]: r for r in rep.rows}
    assert rows["ndp_window"]["computed"] == 2
    assert rows["corner"]["verdict"] == "skipped(corner vanishes for genus 0)"
    assert rows["acm"]["computed"] is True


def test_verify_degenerate_secant_skips_all():
    rep = verify(rational_normal_curve(3, F), 1)
    assert all(r["verdict"] == "skipped(fills ambient)" for r in rep.rows)


def test_report_json_shape():
    rep = verify(rational_normal_curve(4, F), 1, include_timings=False)
    doc = rep.to_json_dict()
    json.dumps(doc)  # serializable
    assert doc["instance"]["genus"] == 0 and doc["instance"]["k"] == 1
    assert doc["seed"] == 0 and doc["prime"] == 32003
    assert len(doc["rows"]) == 9


def test_invalid_inputs_rejected():
    with pytest.raises(ValueError):
        predicted_degree(3, 10, 1)
    with pytest.raises(ValueError):
        predicted_multiplicity(1, 10, 1, 2)
