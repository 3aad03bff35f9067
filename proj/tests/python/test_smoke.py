import pytest

import edd


def test_circle_report():
    r = edd.report("x^2 + y^2 - 1")
    assert r["ed_degree"] == 2
    assert sorted(c["equation"] for c in r["components"]) == ["u1 + i*u2 = 0", "u1 - i*u2 = 0"]
    assert all(c["m_generic"] == 2 for c in r["components"])
    assert r["classification"]["is_circle_type"]


def test_isotropic_mode():
    r = edd.report("z1^2*z2 - z1 - 1", coords="isotropic")
    assert r["ed_degree"] == 3
    assert len(r["components"]) == 2


def test_ed_degree_and_lines():
    assert edd.ed_degree("y^2 - x^3") == 4
    assert edd.ed_degree("x + i*y - 1") == 0
    assert edd.ed_degree("3*x - y + 2") == 1


def test_report_text_round_trips_and_is_deterministic():
    a = edd.report_text("y^2 - x^3", seed=7)
    assert a == edd.report_text("y^2 - x^3", seed=7)
    assert edd.round_trip(a) == a


def test_parse_errors_carry_position():
    with pytest.raises(edd.ParseError) as info:
        edd.report("x^2 +\n  y^2 - 1.5")
    message, line, column = info.value.args
    assert (line, column) == (2, 10)
    assert "floating" in message
    assert isinstance(info.value, ValueError)


def test_bad_options():
    with pytest.raises(ValueError):
        edd.report("x", coords="polar")
    with pytest.raises(ValueError):
        edd.report("x", trials=0)


def test_cusp_cross_validation():
    checks = edd.cross_validate("y^2 - x^3")
    assert len(checks) == 2
    assert all(c["agrees"] for c in checks)


def test_circle_path():
    p = edd.track_path("x^2 + y^2 - 1", "3,1 -> 1,i")
    assert len(p["points"]) == 2
    assert p["tallies"][0]["fate"] == "infinity"


def test_svg():
    svg = edd.render_svg("y^2 - x^3", window="-2,-2,2,2")
    assert svg.startswith("<svg")
    assert "sing: u1 = 0" in svg
