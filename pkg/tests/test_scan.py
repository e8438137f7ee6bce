import pytest

from wand_gibbs.model import ModelParams
from wand_gibbs.scan import (
    CLASS_EXTREMAL_MSW,
    CLASS_NONEXTREMAL_KS,
    CLASS_UNDETERMINED,
    CSV_COLUMNS,
    classify,
    format_value,
    scan_row,
    theta_grid,
)


def test_classify_regions():
    assert classify(1.5, 0.5) == CLASS_NONEXTREMAL_KS
    assert classify(0.8, 0.9) == CLASS_EXTREMAL_MSW
    assert classify(0.9, 1.2) == CLASS_UNDETERMINED
    # strictness at both boundaries
    assert classify(1.0, 1.0) == CLASS_UNDETERMINED
    assert classify(1.0, 0.5) == CLASS_EXTREMAL_MSW


def test_grid_exact_endpoints():
    g = theta_grid(0.1, 3.0, 7, "linear")
    assert g[0] == 0.1 and g[-1] == 3.0 and len(g) == 7
    g = theta_grid(0.1, 3.0, 7, "log")
    assert g[0] == 0.1 and g[-1] == 3.0
    assert all(a < b for a, b in zip(g, g[1:]))


@pytest.mark.parametrize("args", [(0.0, 1.0, 5, "linear"), (2.0, 1.0, 5, "linear"),
                                  (1.0, 1.0, 5, "linear"), (0.1, 1.0, 1, "linear"),
                                  (0.1, 1.0, 5, "cubic")])
def test_grid_rejects_bad_ranges(args):
    with pytest.raises(ValueError):
        theta_grid(*args)


def test_scan_row_below_critical():
    row = scan_row(ModelParams(3, 0.5))
    assert row.tisgm_count == 3
    assert row.z_asym_1 is not None and row.z_asym_1 > row.z_asym_2
    assert row.classification == CLASS_NONEXTREMAL_KS
    assert row.ks_value > 1.0


def test_scan_row_above_critical():
    row = scan_row(ModelParams(3, 2.0))
    assert row.tisgm_count == 1
    assert row.z_asym_1 is None and row.z_asym_2 is None
    assert row.classification == CLASS_NONEXTREMAL_KS


def test_scan_row_extremal_window():
    row = scan_row(ModelParams(3, 1.0))
    assert row.classification == CLASS_EXTREMAL_MSW
    assert row.product == 0.75
    assert row.as_dict()["theta"] == 1.0
    assert tuple(row.as_dict()) == CSV_COLUMNS


def test_scan_row_k4_unit_activity_undetermined():
    row = scan_row(ModelParams(4, 1.0))
    assert row.ks_value == 1.0
    assert row.classification == CLASS_UNDETERMINED


def test_format_value():
    assert format_value(None) == ""
    assert format_value(3) == "3"
    assert format_value("x") == "x"
    assert format_value(0.1) == "0.10000000000000001"
    assert float(format_value(1.0 / 3.0)) == 1.0 / 3.0
