import json

import pytest

from ltswan.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_filtration_json(capsys):
    code, out, _ = run(capsys, "filtration", "--ring", "2:1:2:mixed")
    data = json.loads(out)
    assert code == 0
    assert [(j["flat"], j["sharp"], j["order"]) for j in data["jumps"]] == [
        ("0", 3, 8), ("1/2", -9, 4), ("1", -9, 2)]


def test_upper_csv(capsys):
    code, out, _ = run(capsys, "upper", "--ring", "3:1:1:mixed", "--format", "csv")
    assert code == 0
    assert "upper[0].flat,3/2" in out.splitlines()


def test_chartable_targets(capsys):
    code, out, _ = run(capsys, "chartable", "--ring", "2:1:1:mixed")
    assert code == 0 and json.loads(out)
    code, _, err = run(capsys, "chartable", "--ring", "2:1:1:mixed", "--target", "nope")
    assert code == 2 and "chartable" in err


def test_conductor_reports(capsys):
    code, out, _ = run(capsys, "conductor", "--ring", "2:1:2:mixed", "--rep", "type:ramified")
    rep = json.loads(out)["reports"][0]
    assert code == 0
    assert rep["end1"]["sw"] == rep["end2"]["sw"] == -3
    code, out, _ = run(capsys, "conductor", "--ring", "3:1:1:mixed", "--rep", "u:eps=1")
    assert json.loads(out)["reports"][0]["conductor"]["sw"] == -4


def test_verify_exit_codes(capsys, tmp_path):
    dest = tmp_path / "v.json"
    code, out, _ = run(capsys, "verify", "--ring", "2:1:1:mixed", "--target", "all",
                       "--out", str(dest))
    assert code == 0 and out == ""
    data = json.loads(dest.read_text())
    assert data["passed"] and len(data["checks"]) >= 10
    code, _, _ = run(capsys, "verify", "--ring", "2:1:2:mixed", "--target", "ramified")
    assert code == 1


def test_profile_command(capsys):
    code, out, _ = run(capsys, "profile", "--ring", "2:1:1:mixed", "--rep", "type:unramified",
                       "--s-max", "1")
    prof = json.loads(out)["profiles"][0]
    assert code == 0
    assert prof["first_break"] == "1/3"
    assert prof["profile"]["deaths"] == ["2/3"]


def test_newton_command(capsys):
    code, out, _ = run(capsys, "newton", "--ring", "3:1:2:mixed", "--check", "stability",
                       "--seed", "3")
    assert code == 0 and json.loads(out)["items"][0]["seed"] == 3


@pytest.mark.parametrize("argv", [
    ["filtration", "--ring", "4:1:1:mixed"],
    ["filtration", "--ring", "2:1"],
    ["profile", "--ring", "2:1:1:mixed", "--rep", "irr:99"],
    ["profile", "--ring", "2:1:1:mixed", "--rep", "bogus"],
    ["profile", "--ring", "2:1:1:mixed", "--rep", "type:unramified", "--s-max", "-1"],
    ["conductor", "--ring", "2:1:1:mixed", "--rep", "type:ramified"],
    ["verify", "--ring", "2:1:1:mixed"],
    ["filtration", "--ring", "3:1:2:mixed", "--cap", "50"],
    ["newton", "--ring", "2:1:1:mixed"],
    ["frobnicate"],
])
def test_bad_input_exits_with_two(capsys, argv):
    assert main(argv) == 2
