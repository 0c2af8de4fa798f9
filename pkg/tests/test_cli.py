"""The dispensim command: flags, exit codes, output routing."""

import json
import subprocess
import sys

import pytest

import dispensim.cli as cli
from dispensim.simulation import FirmwarePinFault

ONE_LITER = "@1000 press 1\n@1500 press A\n"


def write_scenario(tmp_path, text, name="scenario.txt"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def run_cli(args):
    return cli.main(args)


def test_run_prints_text_transcript(tmp_path, capsysbinary):
    path = write_scenario(tmp_path, ONE_LITER)
    code = run_cli(["run", "--scenario", str(path), "--until-ms", "30000"])
    assert code == 0
    out = capsysbinary.readouterr().out
    assert out.startswith(b"@00000000 LCD |Enter Amount")
    assert out.endswith(b"FINAL dispensed_uL=1000000 tank_uL=9000000\n")


def test_run_writes_to_out_file(tmp_path, capsysbinary):
    path = write_scenario(tmp_path, ONE_LITER)
    out_path = tmp_path / "transcript.txt"
    code = run_cli(
        ["run", "--scenario", str(path), "--until-ms", "30000", "--out", str(out_path)]
    )
    assert code == 0
    assert capsysbinary.readouterr().out == b""
    assert out_path.read_bytes().endswith(b"FINAL dispensed_uL=1000000 tank_uL=9000000\n")


def test_run_structured_format(tmp_path, capsysbinary):
    path = write_scenario(tmp_path, ONE_LITER)
    code = run_cli(
        ["run", "--scenario", str(path), "--until-ms", "30000", "--format", "structured"]
    )
    assert code == 0
    doc = json.loads(capsysbinary.readouterr().out)
    assert doc["format"] == "dispensim-transcript"
    assert doc["entries"][-1]["dispensed_ul"] == 1_000_000


def test_repeated_runs_are_byte_identical(tmp_path):
    path = write_scenario(tmp_path, ONE_LITER)
    outputs = set()
    for i in range(3):
        out_path = tmp_path / f"out{i}.txt"
        assert run_cli(["run", "--scenario", str(path), "--out", str(out_path)]) == 0
        outputs.add(out_path.read_bytes())
    assert len(outputs) == 1


def test_parse_error_exits_one(tmp_path, capsys):
    path = write_scenario(tmp_path, "@100 press Q\n")
    assert run_cli(["run", "--scenario", str(path)]) == 1
    assert "unknown key label" in capsys.readouterr().err


def test_missing_scenario_file_exits_one(tmp_path, capsys):
    assert run_cli(["run", "--scenario", str(tmp_path / "absent.txt")]) == 1
    assert "cannot read" in capsys.readouterr().err


@pytest.mark.parametrize(
    "flags",
    [
        ["--tick-ms", "0"],
        ["--flow-k", "0"],
        ["--tank-l", "zero"],
        ["--tank-l", "0"],
        ["--until-ms", "-5"],
    ],
)
def test_bad_flag_values_exit_one(tmp_path, capsys, flags):
    path = write_scenario(tmp_path, ONE_LITER)
    assert run_cli(["run", "--scenario", str(path)] + flags) == 1
    assert capsys.readouterr().err


def test_invariant_violation_exits_two(tmp_path, capsys, monkeypatch):
    path = write_scenario(tmp_path, ONE_LITER)

    def explode(scenario, config):
        raise FirmwarePinFault("firmware emitted REVERSE")

    monkeypatch.setattr(cli, "run_scenario", explode)
    assert run_cli(["run", "--scenario", str(path)]) == 2
    assert "invariant violation" in capsys.readouterr().err


def test_flow_k_flag_shortens_the_run(tmp_path, capsysbinary):
    path = write_scenario(tmp_path, "@100 press 1\n@300 press A\n")
    assert run_cli(["run", "--scenario", str(path), "--flow-k", "13000"]) == 0
    lines = capsysbinary.readouterr().out.decode().splitlines()
    forward = next(int(l[1:9]) for l in lines if l.endswith("MOTOR FORWARD"))
    stop = next(int(l[1:9]) for l in lines if l.endswith("MOTOR STOP"))
    assert stop - forward == 13_000


def test_tank_l_flag_accepts_decimals(tmp_path, capsysbinary):
    path = write_scenario(tmp_path, "@100 press 1\n@300 press A\n")
    assert run_cli(["run", "--scenario", str(path), "--tank-l", "0.25"]) == 0
    out = capsysbinary.readouterr().out
    assert out.endswith(b"FINAL dispensed_uL=250000 tank_uL=0\n")


def test_tick_ms_flag_drives_the_scan_clock(tmp_path, capsysbinary):
    # With a 20 ms scan, a 50 ms hold still covers two scans and the
    # event lands on a 20 ms boundary.
    path = write_scenario(tmp_path, "@100 press 5\n")
    assert run_cli(["run", "--scenario", str(path), "--tick-ms", "20"]) == 0
    out = capsysbinary.readouterr().out.decode()
    assert "@00000120 KEY 5" in out


def test_console_script_smoke(tmp_path):
    path = write_scenario(tmp_path, ONE_LITER)
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "dispensim.cli",
            "run",
            "--scenario",
            str(path),
            "--until-ms",
            "30000",
        ],
        capture_output=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.endswith(b"FINAL dispensed_uL=1000000 tank_uL=9000000\n")
