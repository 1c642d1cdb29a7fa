import io

import numpy as np
import pandas as pd
import pytest

from robust_did import (
    Command,
    DegenerateCellError,
    EmptyAfterFilterError,
    MissingColumnError,
    MissingValueError,
    NonBinaryError,
    NonNumericError,
    PanelDataError,
    PanelDataset,
    RoleError,
    VariableRoles,
    load_panel,
    split_cells,
)


def test_from_frame_keeps_role_columns(toy_panel):
    assert toy_panel.n_obs == 12
    assert set(toy_panel.columns) == {"y", "d", "post", "t", "id"}
    assert toy_panel.n_dropped == 0
    assert toy_panel.columns["y"].dtype == np.float64


def test_columns_are_read_only(toy_panel):
    with pytest.raises(ValueError):
        toy_panel.outcome[0] = 99.0


def test_missing_column(toy_frame):
    roles = VariableRoles(outcome="y", treat="d", post="post", info="income")
    with pytest.raises(MissingColumnError) as excinfo:
        PanelDataset.from_frame(toy_frame, roles)
    assert excinfo.value.column == "income"


def test_non_binary_treatment(toy_frame, toy_roles):
    toy_frame.loc[4, "d"] = 2.0
    with pytest.raises(NonBinaryError) as excinfo:
        PanelDataset.from_frame(toy_frame, toy_roles)
    assert excinfo.value.column == "d"


def test_non_numeric_value_reports_row(toy_frame, toy_roles):
    frame = toy_frame.astype({"y": object})
    frame.loc[2, "y"] = "abc"
    with pytest.raises(NonNumericError) as excinfo:
        PanelDataset.from_frame(frame, toy_roles)
    assert excinfo.value.column == "y"
    assert excinfo.value.row == 3


def test_infinite_value_is_non_numeric(toy_frame, toy_roles):
    toy_frame.loc[0, "y"] = np.inf
    with pytest.raises(NonNumericError):
        PanelDataset.from_frame(toy_frame, toy_roles)


def test_missing_value_rejected_without_drop(toy_frame, toy_roles):
    toy_frame.loc[1, "y"] = np.nan
    with pytest.raises(MissingValueError) as excinfo:
        PanelDataset.from_frame(toy_frame, toy_roles)
    assert excinfo.value.row == 2
    assert excinfo.value.column == "y"


def test_missing_value_dropped(toy_frame, toy_roles):
    toy_frame.loc[1, "y"] = np.nan
    ds = PanelDataset.from_frame(toy_frame, toy_roles, drop_missing=True)
    assert ds.n_obs == 11
    assert ds.n_dropped == 1


def test_missing_in_unused_column_is_ignored(toy_frame, toy_roles):
    toy_frame["notes"] = np.nan
    ds = PanelDataset.from_frame(toy_frame, toy_roles)
    assert ds.n_obs == 12
    assert "notes" not in ds.columns


def test_empty_after_filter(toy_frame, toy_roles):
    toy_frame["y"] = np.nan
    with pytest.raises(EmptyAfterFilterError):
        PanelDataset.from_frame(toy_frame, toy_roles, drop_missing=True)


def test_duplicate_roles_rejected():
    with pytest.raises(RoleError):
        VariableRoles(outcome="y", treat="y")


def test_info_may_equal_time():
    roles = VariableRoles(outcome="y", treat="d", post="post", info="t", time="t")
    assert roles.columns() == ["y", "d", "post", "t"]


def test_require_enforces_command_roles():
    roles = VariableRoles(outcome="y", treat="d", post="post")
    with pytest.raises(RoleError):
        roles.require(Command.RDID)

    with_time = VariableRoles(outcome="y", treat="d", post="post", info="t", time="t")
    with pytest.raises(RoleError):
        with_time.require(Command.RDID)
    assert with_time.for_command(Command.RDID).time is None
    assert with_time.require(Command.RDID_DY) is with_time


def test_staggered_roles():
    roles = VariableRoles(outcome="y", time="t", cohort="g")
    assert roles.require(Command.RDIDSTAG) is roles
    with pytest.raises(RoleError):
        VariableRoles(outcome="y", treat="d", time="t", cohort="g").require(Command.RDIDSTAG)


def test_unassigned_role_access(toy_panel):
    with pytest.raises(RoleError):
        _ = toy_panel.time


def test_split_cells(toy_panel):
    cells = split_cells(toy_panel)
    assert [cell.info_level for cell in cells] == [-1.0, 0.0]
    for cell in cells:
        assert len(cell.treated_rows) == 2
        assert len(cell.control_rows) == 2
        assert cell.size == 4
        assert np.all(toy_panel.post[cell.treated_rows] == 0.0)


def test_split_cells_degenerate_level(toy_frame, toy_roles):
    frame = toy_frame[~((toy_frame["t"] == -1.0) & (toy_frame["d"] == 0.0))]
    ds = PanelDataset.from_frame(frame, toy_roles)
    with pytest.raises(DegenerateCellError) as excinfo:
        split_cells(ds)
    assert excinfo.value.level == -1.0


def test_split_cells_requested_levels(toy_panel):
    cells = split_cells(toy_panel, levels=[0.0])
    assert [cell.info_level for cell in cells] == [0.0]
    with pytest.raises(DegenerateCellError):
        split_cells(toy_panel, levels=[0.0, 5.0])


def test_take_repeats_rows(toy_panel):
    taken = toy_panel.take(np.array([0, 0, 3]))
    assert taken.n_obs == 3
    assert taken.outcome.tolist() == [2.0, 2.0, 4.0]
    assert taken.roles == toy_panel.roles


def test_cluster_codes(toy_panel):
    assert toy_panel.cluster_codes.tolist() == [0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3]
    unclustered = toy_panel.with_roles(VariableRoles(outcome="y", treat="d", post="post", info="t"))
    assert unclustered.cluster_codes.tolist() == list(range(12))


def test_load_panel_blank_field_is_missing():
    source = io.StringIO("y,d,post,t\n1.5,1,0,0\n,0,0,0\n2,1,1,1\n")
    roles = VariableRoles(outcome="y", treat="d", post="post", info="t")
    with pytest.raises(MissingValueError) as excinfo:
        load_panel(source, roles)
    assert excinfo.value.row == 2


def test_load_panel_strips_header_whitespace():
    source = io.StringIO(" y , d ,post,t\n1,1,0,0\n2,0,0,0\n3,1,1,1\n4,0,1,1\n")
    ds = load_panel(source, VariableRoles(outcome="y", treat="d", post="post", info="t"))
    assert ds.outcome.tolist() == [1.0, 2.0, 3.0, 4.0]


def test_load_panel_rejects_empty_input():
    with pytest.raises(PanelDataError):
        load_panel(io.StringIO(""), VariableRoles(outcome="y"))


def test_csv_round_trip_is_bit_exact(dip_panel):
    buffer = io.StringIO()
    dip_panel.to_frame().to_csv(buffer, index=False)
    buffer.seek(0)
    reloaded = load_panel(buffer, dip_panel.roles)
    for name, values in dip_panel.columns.items():
        assert np.array_equal(reloaded.columns[name], values)


def test_to_frame_column_order(toy_panel):
    assert list(toy_panel.to_frame().columns) == ["y", "d", "post", "t", "id"]
    assert isinstance(toy_panel.to_frame(), pd.DataFrame)
