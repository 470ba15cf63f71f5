import csv
import io
import math
import subprocess
import sys
from pathlib import Path

import pytest

from relaysec import cli

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"
FIXTURES = HERE / "fixtures"

RUNS = {
    "model1-region": ["--a", "2", "--b", "1", "--gamma", "1", "--p", "1", "--grid", "16"],
    "model1-capacity": ["--a", "0.5", "--b", "1", "--gamma", "1", "--p", "1", "--grid", "32"],
    "model2-rates": ["--a", "1.2", "--b", "0.8", "--p", "1", "--p_r", "1", "--grid", "256"],
    "model2-power-sweep": ["--a", "1", "--b", "1", "--p", "1", "--p_r", "1", "--grid", "8"],
    "model2-b-sweep": ["--a", "1", "--p", "1", "--p_r", "1", "--b", "0.1,1,10", "--grid", "64"],
    "coverkim-curve": ["--alpha", "0:2:0.5", "--p", "1", "--r0", "0.5"],
    "discrete-eval": ["--channel", str(FIXTURES / "bsc.chan"), "--yhat_size", "2", "--grid", "4"],
    "af-sim": ["--a", "1", "--b", "1", "--p", "1", "--p_r", "1", "--n_samples", "20000",
               "--seed", "11"],
}


def invoke(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    lines = text.splitlines()
    assert lines[0].startswith("# relaysec ")
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


@pytest.mark.parametrize("command", sorted(RUNS))
def test_every_command_runs_and_is_deterministic(command, capsys):
    code, first, _ = invoke([command] + RUNS[command], capsys)
    assert code == 0 and rows(first)
    code, second, _ = invoke([command] + RUNS[command], capsys)
    assert code == 0 and second == first


def test_header_records_parameters(capsys):
    _, out, _ = invoke(["coverkim-curve", "--alpha", "1", "--p", "2", "--r0=0.25"], capsys)
    assert out.splitlines()[0] == ("# relaysec 0.1.0 command=coverkim-curve grid=1024 "
                                  "seed=none alpha=1 p=2 r0=0.25")


def test_model2_rates_values(capsys):
    _, out, _ = invoke(["model2-rates"] + RUNS["model2-rates"][:-2], capsys)
    (row,) = rows(out)
    assert float(row["cf_p_star"]) == 171 / 1024
    assert float(row["cf_re"]) == pytest.approx(0.005728487087587997, abs=1e-11)
    assert float(row["af_p_star"]) == 137 / 1024


def test_discrete_eval_reports_bsc_optimum(capsys):
    _, out, _ = invoke(["discrete-eval"] + RUNS["discrete-eval"], capsys)
    h = -(0.1 * math.log2(0.1) + 0.9 * math.log2(0.9))
    assert max(float(r["re"]) for r in rows(out)) == pytest.approx(h, abs=1e-11)
    assert all(r["feasible"] == "1" for r in rows(out))


def test_af_sim_columns(capsys):
    _, out, _ = invoke(["af-sim"] + RUNS["af-sim"], capsys)
    (row,) = rows(out)
    assert row["seed"] == "11" and row["n_samples"] == "20000"
    assert float(row["xi_formula"]) == pytest.approx(1 / 3)


def test_config_file_and_flag_override(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# Cover-Kim\nalpha = 0.5\np = 1\nr0 = 0.1\n")
    _, from_file, _ = invoke(["coverkim-curve", "--config", str(conf)], capsys)
    assert float(rows(from_file)[0]["achievable"]) == pytest.approx(0.1 + 0.5 - 0.5 * math.log2(1.25))
    _, overridden, _ = invoke(["coverkim-curve", "--config", str(conf), "--r0", "0"], capsys)
    assert float(rows(overridden)[0]["achievable"]) == pytest.approx(0.5 - 0.5 * math.log2(1.25))


def test_out_file(tmp_path, capsys):
    target = tmp_path / "c.csv"
    code, out, _ = invoke(["coverkim-curve", "--alpha", "1", "--p", "1", "--r0", "0",
                           "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[1] == "alpha,achievable,upper"


@pytest.mark.parametrize("argv, message", [
    (["coverkim-curve", "--p", "1", "--r0", "0"], "missing key: alpha"),
    (["coverkim-curve", "--alpha", "1", "--p", "1", "--r0", "0", "--beta", "2"], "unknown key: beta"),
    (["coverkim-curve", "--alpha", "x", "--p", "1", "--r0", "0"], "invalid value for alpha"),
    (["model2-rates", "--a", "1", "--b", "1", "--p", "1", "--p_r", "1", "--grid", "1"], "grid"),
    (["no-such-command"], ""),
])
def test_configuration_errors_exit_1(argv, message, capsys):
    code, out, err = invoke(argv, capsys)
    assert code == 1 and out == ""
    assert message in err


def test_domain_error_exit_2(capsys):
    code, _, err = invoke(["model2-power-sweep", "--a", "1", "--b", "0", "--p", "1",
                           "--p_r", "1"], capsys)
    assert code == 2 and "relay link" in err
    code, _, _ = invoke(["coverkim-curve", "--alpha", "1", "--p", "-1", "--r0", "0"], capsys)
    assert code == 2


def test_search_space_exit_3(capsys):
    code, _, err = invoke(["discrete-eval", "--channel", str(FIXTURES / "bsc.chan"),
                           "--grid", "16"], capsys)
    assert code == 3 and "limit" in err


def _channel_file(tmp_path, text):
    path = tmp_path / "w.chan"
    path.write_text(text)
    return path


def test_channel_file_bad_row_reports_line(tmp_path, capsys):
    path = _channel_file(tmp_path, "# c\nsizes 2 1 2 1\n0.5 0.5\n0.5 0.4\n")
    code, _, err = invoke(["discrete-eval", "--channel", str(path)], capsys)
    assert code == 1 and f"{path}:4" in err and "0.9" in err


@pytest.mark.parametrize("text, fragment", [
    ("", "empty"),
    ("# only a comment\n", "empty"),
    ("size 2 2 2 2\n", "expected 'sizes"),
    ("sizes 2 1 2 1\n1 0\n", "expected 2 probability lines"),
    ("sizes 1 1 2 1\n1\n", "expected 2 entries"),
    ("sizes 1 1 2 1\n1 x\n", "non-numeric"),
    ("sizes 1 1 2 1\n1.5 -0.5\n", ">= 0"),
])
def test_channel_file_errors(tmp_path, text, fragment):
    with pytest.raises(cli.ChannelFileError, match=fragment):
        cli.load_discrete_channel(_channel_file(tmp_path, text))


def test_missing_channel_file(tmp_path, capsys):
    code, _, err = invoke(["discrete-eval", "--channel", str(tmp_path / "nope.chan")], capsys)
    assert code == 1 and "cannot read" in err


def test_channel_round_trip(tmp_path):
    w = cli.load_discrete_channel(FIXTURES / "xor_pad.chan")
    again = cli.load_discrete_channel(_channel_file(tmp_path, cli.dump_discrete_channel(w)))
    assert (again.transition == w.transition).all()


def test_parse_values():
    assert cli.parse_values("0:1:0.25") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert cli.parse_values("0:3:0.05")[-1] == 3.0
    assert cli.parse_values("1, 2,5") == [1.0, 2.0, 5.0]
    for bad in ("1:0:1", "0:1:0", "", "a,b"):
        with pytest.raises(ValueError):
            cli.parse_values(bad)


GOLDEN_RUNS = {
    "coverkim_curve.csv": ["coverkim-curve", "--alpha", "0:3:0.05", "--p", "1", "--r0", "0.5"],
    "model2_b_sweep.csv": ["model2-b-sweep", "--a", "1", "--p", "1", "--p_r", "1"],
    "model2_power_sweep.csv": ["model2-power-sweep", "--a", "1.2", "--b", "0.8", "--p", "1",
                               "--p_r", "1", "--grid", "64"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden_files(name, capsys):
    code, out, _ = invoke(GOLDEN_RUNS[name], capsys)
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_golden_coverkim_values():
    C = lambda x: 0.5 * math.log2(1 + x)
    for r in rows((GOLDEN / "coverkim_curve.csv").read_text()):
        alpha = float(r["alpha"])
        assert float(r["upper"]) == pytest.approx(0.5 + max(C(1) - C(alpha ** 2), 0), abs=1e-11)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "relaysec", "coverkim-curve", "--alpha", "1",
                           "--p", "1", "--r0", "0.5"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "1,0.5,0.5"
