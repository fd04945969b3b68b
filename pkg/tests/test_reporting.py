import json
import math

import pytest

import reference_values as ref
from elcal import __version__
from elcal.calibration import build_table, table_from_values
from elcal.curves import curve_scaled_deviation, curve_vs_alpha, curve_vs_n
from elcal.distributions import DistributionSpec, Family
from elcal.el import el_statistic
from elcal.reporting import (
    CURVE_COLUMNS,
    DataFileError,
    curve_to_csv,
    curve_to_json,
    curve_to_text,
    elr_to_dict,
    format_float,
    parse_curve_csv,
    parse_table_csv,
    read_data_file,
    table_to_csv,
    table_to_json,
    table_to_text,
    to_json,
)

EXP = DistributionSpec(Family.EXPONENTIAL, (1,))
GAMMA = DistributionSpec(Family.GAMMA, (0.5, 2.5))


@pytest.fixture(scope="module")
def table():
    return build_table(EXP, (10, 20), (0.8, 0.95, 0.99), B=4000, seed=8)


@pytest.fixture(scope="module")
def alpha_curve():
    return curve_vs_alpha(GAMMA, 12, (0.01, 0.05, 0.1, 0.3), B=3000, seed=2)


def test_format_float():
    assert format_float(0.1) == "0.1"
    assert format_float(None) == ""
    assert format_float(math.inf) == "inf"
    assert float(format_float(1 / 3)) == 1 / 3


def test_curve_csv_round_trip(alpha_curve):
    text = curve_to_csv(alpha_curve)
    assert parse_curve_csv(text) == alpha_curve
    header = [ln for ln in text.splitlines() if not ln.startswith("#")][0]
    assert tuple(header.split(",")) == CURVE_COLUMNS
    assert f"# elcal={__version__}" in text and "# seed=2" in text and "# B=3000" in text


def test_curve_csv_round_trip_vs_n():
    curve = curve_vs_n(EXP, 0.05, (5, 8), B=500, seed=1)
    assert parse_curve_csv(curve_to_csv(curve)) == curve
    scaled = curve_scaled_deviation(curve)
    assert parse_curve_csv(curve_to_csv(scaled)) == scaled


def test_curve_json_and_text(alpha_curve):
    doc = json.loads(curve_to_json(alpha_curve))
    assert doc["metadata"]["spec"] == "gamma(0.5,2.5)"
    p = doc["points"][1]
    assert p["abscissa"] == 0.05 and p["nominal_coverage"] == 0.95
    assert p["realized_coverage"] == 1 - p["alpha_hat"]
    text = curve_to_text(alpha_curve)
    assert "alpha_hat" in text and len(text.splitlines()) == 4 + 1 + len([k for k in text.splitlines() if k.startswith("#")])


def test_table_csv_round_trip(table):
    text = table_to_csv(table)
    back = parse_table_csv(text)
    assert back.values() == table.values()
    assert [[c.is_na for c in r] for r in back.cells] == [[c.is_na for c in r] for r in table.cells]
    assert (back.spec, back.n_list, back.coverage_list, back.B, back.seed) == (
        table.spec, table.n_list, table.coverage_list, table.B, table.seed)
    assert text.splitlines()[0] == "n,0.8,0.95,0.99"
    assert "NA" in text and "nan" not in text.lower()
    for key in ("# spec=exponential(1)", "# B=4000", "# seed=8", "# skewness=2.0", "# kurtosis=9.0"):
        assert key in text


def test_table_json_is_strict(table):
    text = table_to_json(table)
    doc = json.loads(text, parse_constant=lambda c: pytest.fail(f"non-standard constant {c}"))
    cells = doc["cells"]
    assert len(cells) == 6
    for c in cells:
        assert (c["critical_value"] is None) == (c["na_reason"] != "None")


def test_table_text_layout():
    t = table_from_values(EXP, ref.N_ROWS, ref.COVERAGES, ref.EXPONENTIAL)
    text = table_to_text(t)
    lines = text.splitlines()
    assert lines[0].startswith("n \\ 1-alpha")
    assert lines[0].split("|")[1].split() == ["0.7", "0.8", "0.85", "0.9", "0.95", "0.96", "0.97", "0.98", "0.99"]
    assert lines[2].split("|")[1].split() == ["1.584", "2.580", "3.442", "4.976", "9.019", "NA", "NA", "NA", "NA"]


def test_deterministic_bytes(table):
    again = build_table(EXP, (10, 20), (0.8, 0.95, 0.99), B=4000, seed=8, workers=2)
    for f in (table_to_csv, table_to_json, table_to_text):
        assert f(again) == f(table)


def test_to_json_rejects_nan():
    assert json.loads(to_json({"x": math.inf})) == {"x": "inf"}
    with pytest.raises(ValueError):
        to_json({"x": math.nan})


def test_read_data_file(tmp_path):
    p = tmp_path / "d.txt"
    p.write_text("# header\n1\n\n 2.5 \n# note\n-3e1\n", encoding="utf-8")
    assert read_data_file(p) == [1.0, 2.5, -30.0]
    p.write_text("1\n2\nabc\n")
    with pytest.raises(DataFileError) as info:
        read_data_file(p)
    assert info.value.lineno == 3 and ":3:" in str(info.value)
    p.write_text("1\ninf\n")
    with pytest.raises(DataFileError):
        read_data_file(p)
    p.write_text("# nothing\n")
    with pytest.raises(DataFileError):
        read_data_file(p)


def test_elr_dict():
    d = elr_to_dict(el_statistic([1, 2, 3], 2.0), 3, 2.0)
    assert d["statistic"] == 0.0 and d["p_value"] == 1.0 and d["status"] == "Interior"
    d = elr_to_dict(el_statistic([1, 2, 3], 5.0), 3, 5.0)
    assert d["status"] == "HullViolation" and d["p_value"] == 0.0 and d["lambda"] is None
