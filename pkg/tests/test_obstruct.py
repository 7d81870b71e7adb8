"""The obstruction aggregation engine: rules, verdicts, consistency."""

import json

import pytest

from slicegate.bounds import GenusBounds, Interval
from slicegate.knotdb import KnotRecord, seed_table, whitehead_double_record
from slicegate.laurent import LaurentPoly
from slicegate.obstruct import (InconsistentBoundsError, aggregate, band_move_bound,
                                yasuhara)
from slicegate.whitehead import CompanionInvariants, WhiteheadParams, gamma4_whitehead
from slicegate import obstruct as obstruct_mod


def test_yasuhara_examples():
    assert yasuhara(0, 1)
    assert not yasuhara(0, 0)
    assert yasuhara(-4, 0)


def test_yasuhara_validates_input():
    with pytest.raises(ValueError):
        yasuhara(3, 0)
    with pytest.raises(ValueError):
        yasuhara(0, 2)


def test_yasuhara_mod8_invariance():
    for sigma in range(-16, 17, 2):
        for a in (0, 1):
            assert yasuhara(sigma, a) == yasuhara(sigma + 8, a) == yasuhara(sigma - 8, a)


def test_band_move_bound():
    start = GenusBounds(gamma4=Interval(1, None))
    assert band_move_bound(start, 0).gamma4 == Interval(1, 1)  # slice source
    assert band_move_bound(start, 1).gamma4 == Interval(1, 2)
    assert band_move_bound(start, 3).gamma4 == Interval(1, 4)
    tight = GenusBounds(gamma4=Interval(2, 2))
    with pytest.raises(InconsistentBoundsError):
        band_move_bound(tight, 0)


def test_aggregate_figure_eight():
    report = aggregate(seed_table().lookup("4_1"))
    assert report.verdict.topologically_slice == "no"
    assert report.verdict.smoothly_slice == "no"
    assert report.bounds.g4 == Interval(1, 1)
    rules = {r.rule for r in report.applied_rules}
    assert "fox-milnor" in rules and "yasuhara" in rules


def test_aggregate_untwisted_double_of_figure_eight():
    store = seed_table()
    params = WhiteheadParams("+", 0, 0, "4_1")
    record = whitehead_double_record(params, store.lookup("4_1"))
    report = aggregate(record)
    assert report.verdict.topologically_slice == "yes"
    assert report.verdict.smoothly_slice == "unknown"
    assert report.bounds.gamma4 == Interval(1, 2)
    assert {r.rule for r in report.applied_rules} >= {"freedman"}


def test_aggregate_odd_twisted_double_of_unknot():
    store = seed_table()
    record = whitehead_double_record(WhiteheadParams("+", 3, 0, "unknot"),
                                     store.lookup("unknot"))
    report = aggregate(record)
    assert report.bounds.gamma4 == Interval(2, 2)
    assert report.verdict.nonorientably_slice == "no"
    assert "yasuhara" in {r.rule for r in report.applied_rules}


def test_aggregate_requires_some_data():
    with pytest.raises(ValueError):
        aggregate(KnotRecord(name="empty"))


def test_aggregate_inconsistent_inputs_raise():
    record = KnotRecord(
        name="bogus",
        alexander=LaurentPoly({1: -1, 0: 3, -1: -1}),  # Fox-Milnor fails
        invariants=CompanionInvariants(g4=Interval(0, 0)),  # claimed slice
    )
    with pytest.raises(InconsistentBoundsError) as err:
        aggregate(record)
    msg = str(err.value)
    assert "fox-milnor" in msg and "stored-bounds" in msg


def test_aggregate_monotone_under_added_information():
    base = KnotRecord(name="k", alexander=LaurentPoly({1: -1, 0: 3, -1: -1}))
    richer = KnotRecord(name="k", alexander=LaurentPoly({1: -1, 0: 3, -1: -1}),
                        invariants=CompanionInvariants(tau=1, g4=Interval(1, 2)))
    b0 = aggregate(base).bounds
    b1 = aggregate(richer).bounds
    assert b1.g4.lo >= b0.g4.lo
    assert b0.g4.hi is None or b1.g4.hi <= b0.g4.hi


def test_aggregate_rule_order_independent(monkeypatch):
    store = seed_table()
    names = store.names()
    baseline = [json.dumps(aggregate(store.lookup(n)).to_json()) for n in names]
    monkeypatch.setattr(obstruct_mod, "_RULES", tuple(reversed(obstruct_mod._RULES)))
    shuffled = [json.dumps(aggregate(store.lookup(n)).to_json()) for n in names]
    assert shuffled == baseline


def test_aggregate_rederives_whitehead_gamma4_theorem():
    # the generic engine must agree with the specialized formula on the whole
    # (clasp, twist, framing) grid, re-deriving the lower bound from
    # (sigma, Arf) alone since records only store the upper bound
    store = seed_table()
    unknot = store.lookup("unknot")
    for clasp in "+-":
        for t in range(-10, 11):
            for lam in range(-2, 3):
                params = WhiteheadParams(clasp, t, lam, "unknot")
                if params.half_twist_regime:
                    continue
                record = whitehead_double_record(params, unknot)
                report = aggregate(record)
                assert report.bounds.gamma4 == gamma4_whitehead(params).gamma4, params
                if report.bounds.gamma4.lo >= 2:
                    assert report.verdict.nonorientably_slice == "no"


def test_report_json_shape():
    report = aggregate(seed_table().lookup("3_1"))
    doc = report.to_json()
    assert list(doc) == ["name", "bounds", "verdict", "applied_rules", "notes"]
    assert list(doc["verdict"]) == ["topologically_slice", "smoothly_slice",
                                    "nonorientably_slice"]
    for rule in doc["applied_rules"]:
        assert list(rule) == ["rule", "anchor", "contribution"]


def test_trefoil_report():
    report = aggregate(seed_table().lookup("3_1"))
    assert report.verdict.smoothly_slice == "no"
    assert report.bounds.g4 == Interval(1, 1)
    assert report.bounds.gamma4 == Interval(1, 1)  # bounds a Moebius band
    assert report.verdict.nonorientably_slice == "yes"


def test_oss_plus_convention_contradicts_trefoil_table():
    # with the "plus" sign the upsilon/sigma bound would force gamma4(3_1) >= 2,
    # contradicting the stored Moebius band; the engine must say so loudly
    with pytest.raises(InconsistentBoundsError) as err:
        aggregate(seed_table().lookup("3_1"), oss_convention="plus")
    assert "oss" in str(err.value)


def test_slice_seed_has_moebius_band_verdict():
    report = aggregate(seed_table().lookup("6_1"))
    assert report.verdict.smoothly_slice == "yes"
    assert report.verdict.topologically_slice == "yes"
    assert report.bounds.gamma4 == Interval(1, 1)
    assert report.verdict.nonorientably_slice == "yes"
