"""Smoke test for the Python bindings. Run with pytest or as a script."""

import json
from fractions import Fraction

import pytest

import hodge_stringy as hs


def test_stable_locus_is_symmetric_polynomial():
    e = hs.e_ms(2)
    assert e.is_symmetric()
    assert e.is_polynomial()
    assert isinstance(e.limit_at_one(), Fraction)


def test_stratum_reports_match_dimensions():
    for tag in hs.stratum_tags(3):
        report = hs.stratum_report(3, tag)
        assert report.dim_check, tag
        assert report.to_dict()["stratum"] == tag


def test_stringy_report_values():
    r = hs.stringy_e(3)
    assert r.euler == Fraction(560)
    assert r.euler_formula == Fraction(128)
    assert r.euler == r.euler_ms + r.euler_correction
    assert r.e_st.rat_eq(r.e_ms + r.correction)
    assert r.e_st.uv_degree() == 12
    assert len(r.to_dict()["breakdown"]) == 7


def test_json_round_trip():
    e = hs.stringy_correction(4)
    back = hs.RationalFunction.from_json(e.to_json())
    assert back == e
    assert json.loads(e.to_json())["num"]


def test_inclusion_exclusion_for_single_divisor():
    closed = hs.e_divisor_closed(3, [1])
    opens = [hs.e_divisor_open(3, m) for m in ([1], [1, 2], [1, 3], [1, 2, 3])]
    total = opens[0]
    for e in opens[1:]:
        total = total + e
    assert closed == total


def test_errors_become_value_errors():
    with pytest.raises(ValueError):
        hs.stringy_e(2)
    with pytest.raises(ValueError):
        hs.stratum_report(3, "type9")
    with pytest.raises(ValueError):
        hs.e_divisor_closed(3, [2])


def test_verify_returns_dicts():
    outcomes = hs.verify(2, 2)
    by_name = {o["check_name"]: o for o in outcomes}
    assert by_name["residue-sum"]["status"] == "pass"
    assert by_name["stringy-euler"]["status"] == "skip"


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
