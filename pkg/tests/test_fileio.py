import json
from fractions import Fraction

import pytest

from terracini import (
    Divisor,
    HyperPoint,
    Hyperelliptic,
    ParamValue,
    ParametricRational,
    PlanePoint,
    ProjectivePoint,
    SpacePoint,
    defect_report,
    HyperplaneSystem,
)
from terracini.errors import InputError
from terracini.fileio import (
    curve_to_json,
    divisor_to_json,
    load_curve,
    load_divisor,
    parse_point,
    parse_points_option,
    render_document,
    report_to_json,
)
from terracini.witness import standard_g3, witness_quartic


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_curve_file_round_trip(tmp_path, quartic_witness):
    data = curve_to_json(quartic_witness.curve, curve_id="wq")
    path = write(tmp_path, "wq.curve", data)
    curve, curve_id = load_curve(path)
    assert curve_id == "wq"
    assert isinstance(curve, ParametricRational)
    assert curve.coords == quartic_witness.curve.coords


def test_hyperelliptic_round_trip(tmp_path, g3_curve):
    path = write(tmp_path, "g3.curve", curve_to_json(g3_curve))
    curve, _ = load_curve(path)
    assert isinstance(curve, Hyperelliptic)
    assert curve.f == g3_curve.f


def test_space_and_union_round_trip(tmp_path):
    from terracini.witness import tangent_nodal_union

    union = tangent_nodal_union().curve
    path = write(tmp_path, "union.curve", curve_to_json(union))
    curve, _ = load_curve(path)
    assert curve.ambient_dim == 3 and len(curve.components) == 2


def test_float_literals_rejected(tmp_path):
    path = tmp_path / "bad.curve"
    path.write_text('{"type": "parametric", "r": 3, "coords": ["1", "t", "t^2", 0.5]}')
    with pytest.raises(InputError):
        load_curve(str(path))


def test_json_error_cites_position(tmp_path):
    path = tmp_path / "broken.curve"
    path.write_text('{"type": "parametric",\n  "coords": [}')
    with pytest.raises(InputError, match="line 2"):
        load_curve(str(path))


def test_point_literals():
    assert parse_point({"t": "1/2"}) == ParamValue(Fraction(1, 2))
    assert parse_point({"t": "inf"}) == ParamValue(None)
    assert parse_point({"x": "1", "y": "0"}) == HyperPoint(1, 0)
    plane = parse_point({"coords": ["0", "0", "1"]})
    assert isinstance(plane, PlanePoint)
    space = parse_point({"coords": ["1", "0", "1", "0"], "component": 1})
    assert isinstance(space, SpacePoint) and space.component == 1
    with pytest.raises(InputError):
        parse_point({"weird": "1"})


def test_divisor_file(tmp_path):
    path = write(tmp_path, "z.divisor", {
        "entries": [
            {"point": {"t": "0"}, "multiplicity": 2},
            {"point": {"t": "1"}},
        ]
    })
    divisor = load_divisor(path)
    assert divisor.degree == 3
    assert divisor.entries[0][1] == 2


def test_points_option_by_curve_type(quartic_witness, g3_curve):
    params = parse_points_option("0,1", quartic_witness.curve)
    assert params == [ParamValue(Fraction(0)), ParamValue(Fraction(1))]
    hyper = parse_points_option("1,0;2,0", g3_curve)
    assert hyper == [HyperPoint(1, 0), HyperPoint(2, 0)]


def test_render_document_is_deterministic(quartic_witness, s01):
    report = defect_report(quartic_witness.curve, HyperplaneSystem(), s01)
    payload = {
        "report": report_to_json(report),
        "divisor": divisor_to_json(s01),
    }
    a = render_document(payload, ("x",))
    b = render_document(payload, ("x",))
    assert a == b
    assert a.endswith("\n")
    parsed = json.loads(a)
    assert parsed["report"]["member"] is True
    assert parsed["tool"]["name"] == "terracini"


def test_rationals_serialize_as_strings():
    divisor = Divisor.reduced([HyperPoint(Fraction(1, 2), Fraction(3, 4))])
    data = divisor_to_json(divisor)
    assert data[0]["point"] == {"x": "1/2", "y": "3/4"}
