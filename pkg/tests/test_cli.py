import math

import pytest

from framebc import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- analyze -----------------------------------------------------------------

def test_analyze_lattice_lenient_binding(capsys):
    code, out, _ = run_cli(
        capsys, "analyze", "--protocol", "lattice", "--d", "3", "--L", "8",
        "--predicate", "lenient",
    )
    assert code == 0
    assert "binding_flip_lenient.exact = 1/3" in out
    assert "binding_flip_strict.exact = 1/6" in out
    assert "soundness.exact = 1" in out
    assert "concealing_exact.exact = 1/4" in out


def test_analyze_four_symbol(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--protocol", "four-symbol")
    assert code == 0
    assert "concealing_exact.exact = 0" in out
    assert "binding_flip.exact = 1/2" in out


def test_analyze_continuous_alpha_half(capsys):
    code, out, _ = run_cli(
        capsys, "analyze", "--protocol", "continuous", "--alpha", "0.5"
    )
    assert code == 0
    assert "accept_reveal0 = 0.75" in out
    assert "accept_reveal1 = 0.75" in out


def test_analyze_echoes_resolved_config(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--protocol", "lattice",
                           "--d", "2", "--L", "4")
    assert code == 0
    assert "d = 2" in out and "L = 4" in out
    assert "eps_meas = " in out and "predicate = lenient" in out


# --- simulate ----------------------------------------------------------------

def test_simulate_lattice_soundness(capsys):
    code, out, _ = run_cli(
        capsys, "simulate", "--protocol", "lattice", "--d", "2", "--L", "4",
        "--trials", "2000", "--seed", "42",
    )
    assert code == 0
    assert "soundness_mc = 1.0" in out
    assert "2000/2000 seed=42" in out


def test_simulate_byte_identical_reruns(tmp_path, capsys):
    paths = [tmp_path / "a.txt", tmp_path / "b.txt"]
    for path in paths:
        code = cli.main([
            "simulate", "--protocol", "continuous", "--alpha", "0.3",
            "--trials", "3000", "--seed", "7", "--out", str(path),
        ])
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_simulate_continuous_tracks_closed_form(capsys):
    code, out, _ = run_cli(
        capsys, "simulate", "--protocol", "continuous", "--alpha", "0.5",
        "--trials", "10000", "--seed", "42",
    )
    assert code == 0
    rate = float(
        next(l for l in out.splitlines() if l.startswith("accept_reveal0_mc = "))
        .split(" = ")[1]
    )
    sigma = math.sqrt(0.75 * 0.25 / 10_000)
    assert abs(rate - 0.75) <= 3 * sigma


# --- twirl-check ----------------------------------------------------------------

def test_twirl_check_z4(capsys):
    code, out, _ = run_cli(capsys, "twirl-check", "--group", "z4")
    assert code == 0
    assert "transcript_distributions_equal = true" in out
    assert "verdict = pass" in out


def test_twirl_check_haar(capsys):
    code, out, _ = run_cli(
        capsys, "twirl-check", "--group", "haar", "--samples", "100000",
        "--seed", "42",
    )
    assert code == 0
    assert "verdict = pass" in out


def test_twirl_check_rejects_mixture(capsys):
    code, _, err = run_cli(capsys, "twirl-check", "--group", "twopoint:0.2,0.5")
    assert code == 1
    assert "not a uniform group distribution" in err


def test_twirl_check_bad_group_spec(capsys):
    code, _, err = run_cli(capsys, "twirl-check", "--group", "su2")
    assert code == 1
    assert "unrecognized group" in err


# --- mingap ----------------------------------------------------------------------

def test_mingap_d1_l2_closed_form(capsys):
    code, out, _ = run_cli(capsys, "mingap", "--d", "1", "--L", "2")
    assert code == 0
    gap = float(next(l for l in out.splitlines() if l.startswith("min_gap = "))
                .split(" = ")[1])
    assert abs(gap - math.pi / 6) <= 1e-12


def test_mingap_accepts_safe_eps(capsys):
    code, out, _ = run_cli(capsys, "mingap", "--d", "3", "--L", "8",
                           "--eps", "1e-5")
    assert code == 0
    assert "eps_certified = true" in out


def test_mingap_rejects_unsafe_eps(capsys):
    code, out, _ = run_cli(capsys, "mingap", "--d", "3", "--L", "8",
                           "--eps", "0.001")
    assert code == 3
    assert "verdict = fail" in out


def test_mingap_budget_exceeded(capsys):
    code, _, err = run_cli(capsys, "mingap", "--d", "8", "--L", "30",
                           "--budget", "1000000")
    assert code == 2
    assert "budget exceeded" in err


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv(cli.BUDGET_ENV, "10")
    code, _, err = run_cli(capsys, "mingap", "--d", "2", "--L", "4")
    assert code == 2
    monkeypatch.setenv(cli.BUDGET_ENV, "100000")
    code, out, _ = run_cli(capsys, "mingap", "--d", "2", "--L", "4")
    assert code == 0


# --- sweep ------------------------------------------------------------------------

def test_sweep_lattice_table(tmp_path):
    out_path = tmp_path / "sweep.tsv"
    code = cli.main([
        "sweep", "--protocol", "lattice", "--d-values", "1,2",
        "--L-values", "4,8", "--out", str(out_path),
    ])
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0].startswith("# framebc sweep protocol=lattice")
    assert lines[1].startswith("d\tL\t")
    assert len(lines) == 6
    row = dict(zip(lines[1].split("\t"), lines[2].split("\t")))
    assert row["soundness"] == "1.0"
    assert row["concealing_exact"] == "0.5"


def test_sweep_continuous_with_mc(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--protocol", "continuous", "--alphas", "0,0.5,1",
        "--trials", "2000", "--seed", "11",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# framebc sweep protocol=continuous")
    assert lines[1].split("\t")[:3] == ["alpha", "accept_reveal0", "accept_reveal1"]
    assert len(lines) == 5
    half = lines[3].split("\t")
    assert half[1] == "0.75" and half[2] == "0.75"


def test_sweep_deterministic(capsys):
    args = ["sweep", "--protocol", "continuous", "--alphas", "0,1",
            "--trials", "500", "--seed", "3"]
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


# --- config validation ---------------------------------------------------------------

def test_unknown_protocol_exits_one(capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["analyze", "--protocol", "telepathy"])
    assert excinfo.value.code == 1


def test_bad_lattice_parameters_exit_one(capsys):
    code, _, err = run_cli(capsys, "analyze", "--protocol", "lattice",
                           "--d", "0", "--L", "4")
    assert code == 1
    assert "invalid configuration" in err


def test_coarse_eps_exits_one(capsys):
    code, _, err = run_cli(capsys, "analyze", "--protocol", "lattice",
                           "--d", "2", "--L", "4", "--eps", "0.5")
    assert code == 1
    assert "separation" in err
