import json

import pandas as pd
import pytest

from robust_did import BootstrapPlan, DgpKind, RobustDID
from robust_did.cli import build_parser, run_command
from robust_did.simulation import DgpSpec, generate


DIP_ROLE_FLAGS = ["--outcome", "y", "--treat", "d", "--post", "post", "--info", "t", "--cluster", "id"]


@pytest.fixture
def dip_csv(tmp_path):
    path = tmp_path / "dip.csv"
    assert run_command(["simulate", "--kind", "ashenfelter", "--n", "300", "--seed", "5", "--export", str(path)]) == 0
    return path


def test_simulate_prints_identified_set(tmp_path, capsys):
    out = tmp_path / "truth.json"
    assert run_command(["simulate", "--kind", "covariate", "--theta", "2", "--json", str(out)]) == 0
    assert "Identified set" in capsys.readouterr().out
    payload = json.loads(out.read_text())
    assert payload["command"] == "simulate"
    assert payload["results"]["THETA_UB_1"] == pytest.approx(1.4532, abs=1e-4)


def test_simulate_cross_section_export(tmp_path):
    path = tmp_path / "rows.csv"
    assert run_command(["simulate", "--kind", "covariate", "--n", "101", "--cross-section", "--export", str(path)]) == 0
    frame = pd.read_csv(path)
    assert len(frame) == 101
    assert frame["id"].is_unique
    assert run_command(["simulate", "--kind", "staggered", "--cross-section"]) == 2


def test_export_then_rdid_matches_in_process(dip_csv, tmp_path, capsys):
    out = tmp_path / "rdid.json"
    argv = ["rdid", str(dip_csv), *DIP_ROLE_FLAGS, "--brep", "40", "--seed", "3", "--n-jobs", "1", "--json", str(out)]
    assert run_command(argv) == 0
    assert "CI_3" in capsys.readouterr().out

    ds = generate(DgpSpec(DgpKind.ASHENFELTER_DIP, n=300, seed=5))
    expected = RobustDID(ds, plan=BootstrapPlan(replicates=40, seed=3, n_jobs=1)).estimate().stored_results()
    payload = json.loads(out.read_text())
    assert payload["results"] == expected
    assert payload["meta"]["n_obs"] == 1200
    assert payload["options"]["roles"]["info"] == "t"
    assert payload["table"]["rows"][0]["label"] == "RDID"


def test_rdid_policy_rows(dip_csv, capsys):
    assert run_command(["rdid", str(dip_csv), *DIP_ROLE_FLAGS, "--rdidtype", "1", "--brep", "30", "--n-jobs", "1"]) == 0
    labels = [line.split("|")[0].strip() for line in capsys.readouterr().out.splitlines() if "|" in line]
    assert labels == ["Y: y", "L1", "L2", "Linf"]


def test_rdid_figure_and_csv(dip_csv, tmp_path):
    stem = tmp_path / "profile"
    table_path = tmp_path / "table.csv"
    argv = ["rdid", str(dip_csv), *DIP_ROLE_FLAGS, "--brep", "30", "--n-jobs", "1", "--figure", str(stem), "--csv", str(table_path)]
    assert run_command(argv) == 0
    assert (tmp_path / "profile.svg").exists()
    assert pd.read_csv(table_path)["label"].tolist() == ["RDID", "CI_1", "CI_2", "CI_3"]


def test_rdid_dy_band_figure(tmp_path, capsys):
    data = tmp_path / "dip2.csv"
    assert run_command(["simulate", "--kind", "ashenfelter", "--n", "300", "--post-periods", "2", "--export", str(data)]) == 0
    capsys.readouterr()
    stem = tmp_path / "dynamic"
    argv = ["rdid-dy", str(data), *DIP_ROLE_FLAGS, "--tname", "t", "--citype", "2", "--brep", "30", "--n-jobs", "1", "--figure", str(stem)]
    assert run_command(argv) == 0
    out = capsys.readouterr().out
    assert "T: t" in out
    assert "for the ATT" in out
    assert (tmp_path / "dynamic.svg").read_text(encoding="utf-8").count('id="xtick_') == 2


def test_rdidstag_writes_cohort_figures(tmp_path, capsys):
    data = tmp_path / "stag.csv"
    assert run_command(["simulate", "--kind", "staggered", "--n", "400", "--horizon", "2", "--seed", "9", "--export", str(data)]) == 0
    stem = tmp_path / "cohort"
    argv = ["rdidstag", str(data), "--outcome", "y", "--tname", "t", "--gname", "g", "--cluster", "id", "--brep", "20", "--n-jobs", "1", "--figure", str(stem)]
    assert run_command(argv) == 0
    assert "ATT(2/2)" in capsys.readouterr().out
    assert (tmp_path / "cohort_g1.svg").exists()
    assert (tmp_path / "cohort_g2.svg").exists()


def test_simulate_coverage_table(capsys):
    argv = ["simulate", "--kind", "ashenfelter", "--n", "200", "--sims", "2", "--brep", "20", "--n-jobs", "1"]
    assert run_command(argv) == 0
    out = capsys.readouterr().out
    assert "CP_inf" in out
    assert "ashenfelter, N=200" in out


def test_usage_errors(dip_csv):
    # Missing required flag
    assert run_command(["rdid", str(dip_csv), "--treat", "d"]) == 2
    # Missing information role
    assert run_command(["rdid", str(dip_csv), "--outcome", "y", "--treat", "d", "--post", "post"]) == 2
    # Invalid confidence level
    assert run_command(["rdid", str(dip_csv), *DIP_ROLE_FLAGS, "--level", "150"]) == 2
    assert run_command(["rdid-dy", str(dip_csv), *DIP_ROLE_FLAGS, "--tname", "t", "--losstype", "L3"]) == 2


def test_data_error(dip_csv):
    argv = ["rdid", str(dip_csv), "--outcome", "d", "--treat", "y", "--post", "post", "--info", "t"]
    assert run_command(argv) == 3


def test_estimation_error(tmp_path, toy_frame):
    path = tmp_path / "one_level.csv"
    toy_frame[toy_frame["t"] >= 0.0].to_csv(path, index=False)
    argv = ["rdid", str(path), "--outcome", "y", "--treat", "d", "--post", "post", "--info", "t", "--rdidtype", "2", "--brep", "20"]
    assert run_command(argv) == 4


def test_output_error(dip_csv, tmp_path):
    target = tmp_path / "missing" / "out.json"
    argv = ["rdid", str(dip_csv), *DIP_ROLE_FLAGS, "--brep", "20", "--n-jobs", "1", "--json", str(target)]
    assert run_command(argv) == 5


def test_parser_defaults():
    args = build_parser().parse_args(["rdid", "data.csv", "--outcome", "y"])
    assert args.rdidtype == 0
    assert args.brep is None
    assert args.level is None
    assert args.covars == []
