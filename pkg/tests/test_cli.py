import io
import json
import subprocess
import sys

import pytest

from leftorders import cli
from leftorders.cli import main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


# spec examples


def test_enumerate_z():
    assert run("enumerate", "--group", "Z", "--radius", "3") == (0, "radius 3: 2 cones\n")


def test_enumerate_c2():
    assert run("enumerate", "--group", "C2", "--radius", "1") == (0, "radius 1: 0 cones\n")


def test_enumerate_z2_json():
    code, out = run("enumerate", "--group", "Z^2", "--radius", "1", "--format", "json")
    assert code == 0
    cones = json.loads(out)
    assert len(cones) == 4
    assert all(c["schema_version"] == 1 for c in cones)


def test_enumerate_all_levels_and_oracle():
    code, out = run("enumerate", "--group", "KB", "--radius", "2", "--all-levels", "--oracle", "--show-cones")
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["radius 0: 1 cone", "radius 1: 4 cones", "radius 2: 4 cones"]
    assert lines[-1] == "oracle: match"
    assert sum(line.startswith("  2:") for line in lines) == 4


def test_dichotomy_kb():
    code, out = run("dichotomy", "--group", "KB", "--radius", "4", "--horizon", "8")
    assert code == 0
    assert out.splitlines()[-1] == "FINITE_EVIDENCE(4) (evidence at horizon 8)"


def test_dichotomy_f2():
    code, out = run("dichotomy", "--group", "F2", "--radius", "3", "--horizon", "5")
    assert code == 0
    assert "PERFECT_KERNEL_EVIDENCE" in out.splitlines()[-1]


def test_dichotomy_trivial():
    code, out = run("dichotomy", "--group", "1", "--radius", "2", "--horizon", "4")
    assert code == 0
    assert out.splitlines()[-1].startswith("FINITE_EVIDENCE(1)")


def test_dichotomy_json():
    code, out = run("dichotomy", "--group", "Z", "--radius", "3", "--horizon", "6", "--format", "json")
    assert code == 0
    assert json.loads(out)["label"] == "FINITE_EVIDENCE(2)"


def test_orbits_kb():
    code, out = run("orbits", "--group", "KB", "--level", "5")
    assert code == 0
    data = json.loads(out)
    assert sorted(len(o) for o in data["orbits"].values()) == [2, 2]
    assert data["mode"] == "lifted"


def test_restrict_z2():
    code, out = run("restrict", "--group", "Z^2", "--subgroup", "e1", "--radius", "4", "--subradius", "2")
    assert code == 0
    nodes = json.loads(out)["nodes"]
    assert len(nodes) == 24
    for node in nodes:
        signs = node["signs"]
        assert signs["e1"] == signs["e1^2"]
        assert signs["e1^-1"] == signs["e1^-2"] != signs["e1"]


def test_export_z_dot():
    code, out = run("export", "--group", "Z", "--radius", "3", "--format", "dot")
    assert code == 0
    assert out.startswith('digraph "Z" {')
    assert out.count("->") == 6
    assert '"3:0"' in out and '"3:1"' in out and '"3:2"' not in out


def test_export_json():
    code, out = run("export", "--group", "Z", "--radius", "2")
    data = json.loads(out)
    assert code == 0 and data["schema_version"] == 1
    assert [len(level["nodes"]) for level in data["levels"]] == [1, 2, 2]


def test_check_passes():
    code, out = run("check", "--group", "Z^2", "--radius", "4", "--samples", "50")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "SKIP oracle equivalence (cap exceeded)"
    assert lines[1:] == [f"PASS {name} (50/50 sampled)" for name in ("action admissible", "cocycle", "inverse action")]


def test_check_with_oracle():
    code, out = run("check", "--group", "KB", "--radius", "3", "--samples", "20")
    assert code == 0
    assert out.startswith("PASS oracle equivalence (4 cones)")


# exit codes


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "--group", "Q8", "--radius", "1"],
        ["enumerate", "--group", "Z", "--radius", "-1"],
        ["dichotomy", "--group", "Z", "--radius", "4", "--horizon", "2"],
        ["enumerate", "--group", "Z", "--radius", "1", "--node-limit", "0"],
        ["enumerate", "--group", "Z", "--radius", "1", "--jobs", "0"],
        ["restrict", "--group", "Z", "--subgroup", "q", "--radius", "2", "--subradius", "1"],
        ["orbits", "--group", "Z", "--level", "-1"],
    ],
)
def test_exit_usage(argv):
    assert run(*argv)[0] == cli.EXIT_USAGE


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "--group", "Z"],
        ["enumerate", "--group", "Z", "--radius", "x"],
        ["frobnicate", "--group", "Z"],
        [],
    ],
)
def test_exit_usage_from_parser(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == cli.EXIT_USAGE


def test_exit_budget():
    assert run("enumerate", "--group", "F2", "--radius", "3", "--node-limit", "100")[0] == cli.EXIT_BUDGET


def test_exit_oracle_cap():
    code, _ = run("enumerate", "--group", "Z^2", "--radius", "2", "--oracle", "--oracle-cap", "8")
    assert code == cli.EXIT_BUDGET


def test_exit_inconclusive():
    code, out = run("dichotomy", "--group", "Z", "--radius", "1", "--horizon", "2")
    assert code == cli.EXIT_INCONCLUSIVE
    assert out.splitlines()[-1] == "INCONCLUSIVE (evidence at horizon 2)"


def test_exit_inconclusive_on_budget():
    code, out = run("dichotomy", "--group", "F2", "--radius", "3", "--horizon", "5", "--node-limit", "100")
    assert code == cli.EXIT_INCONCLUSIVE
    assert "budget" in out


def test_exit_radius():
    code, _ = run("restrict", "--group", "Z^2", "--subgroup", "e1", "--radius", "2", "--subradius", "3")
    assert code == cli.EXIT_RADIUS


def test_exit_check_failed(monkeypatch):
    monkeypatch.setattr(cli, "oracle_enumerate", lambda *a, **k: [])
    assert run("enumerate", "--group", "Z", "--radius", "2", "--oracle")[0] == cli.EXIT_CHECK_FAILED
    code, out = run("check", "--group", "Z", "--radius", "2", "--samples", "5")
    assert code == cli.EXIT_CHECK_FAILED
    assert out.startswith("FAIL oracle equivalence")


def test_help_shows_defaults_and_exit_codes(capsys):
    for cmd in ("dichotomy", "enumerate", "check"):
        with pytest.raises(SystemExit) as exc:
            main([cmd, "--help"])
        assert exc.value.code == 0
    out = capsys.readouterr().out
    assert "(default: 8)" in out and "(default: 10000000)" in out and "(default: 200)" in out
    with pytest.raises(SystemExit):
        main(["--help"])
    assert "exit codes" in capsys.readouterr().out


# determinism

COMMANDS = [
    ["enumerate", "--group", "F2", "--radius", "3", "--format", "json"],
    ["enumerate", "--group", "H3", "--radius", "3", "--all-levels", "--show-cones"],
    ["dichotomy", "--group", "KB", "--radius", "4", "--horizon", "8", "--format", "json"],
    ["dichotomy", "--group", "F2", "--radius", "2", "--horizon", "4"],
    ["orbits", "--group", "Z^2", "--level", "2"],
    ["restrict", "--group", "F2", "--subgroup", "ab", "--radius", "4", "--subradius", "2"],
    ["export", "--group", "Z^2", "--radius", "4", "--format", "dot"],
    ["export", "--group", "H3", "--radius", "3"],
    ["check", "--group", "Z^2", "--radius", "4", "--samples", "40", "--seed", "7"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0] + "-" + a[2])
def test_jobs_do_not_change_output(argv):
    one = run(*argv, "--jobs", "1")
    again = run(*argv, "--jobs", "1")
    many = run(*argv, "--jobs", "3")
    assert one == again == many


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "leftorders", "enumerate", "--group", "Z", "--radius", "3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "radius 3: 2 cones\n"
