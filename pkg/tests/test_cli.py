"""Command-line behavior: schemas, precedence, exit codes, determinism."""
import math

import pytest

from dephasing_discord.cli import (
    RunSpec,
    _build_runspec,
    _make_parser,
    _parse_config_file,
    main,
    run_critical_time,
    run_curve,
    run_figure,
)

HEADER = "t,d_a,d_b,mutual_info,classical,discord,regime"


def parse_args(argv):
    return _make_parser().parse_args(argv)


def spec_for(argv):
    return _build_runspec(parse_args(argv))


def rows(csv_text):
    lines = csv_text.strip().split("\n")
    return lines[0], [line.split(",") for line in lines[1:]]


def test_curve_schema_and_grid(capsys):
    assert main(["curve", "--points", "7", "--t-max", "3"]) == 0
    header, data = rows(capsys.readouterr().out)
    assert header == HEADER
    assert len(data) == 7
    assert data[0][0] == "0" and data[-1][0] == "3"
    for row in data:
        assert len(row) == 7
        assert row[6] in ("DFE", "DECAY")
        float(row[3]), float(row[4]), float(row[5])


def test_values_carry_full_double_precision(capsys):
    main(["curve", "--points", "2", "--t-max", "1"])
    header, data = rows(capsys.readouterr().out)
    assert data[0][3] == "1.1187091007693073"
    assert data[0][5] == "0.1187091007693073"


def test_output_file_has_lf_endings(tmp_path):
    out = tmp_path / "curve.csv"
    assert main(["curve", "--points", "3", "--t-max", "1", "--out", str(out)]) == 0
    raw = out.read_bytes()
    assert b"\r" not in raw
    assert raw.endswith(b"\n")
    assert raw.decode().split("\n")[0] == HEADER


def test_runs_are_deterministic():
    spec = spec_for(["curve", "--points", "50", "--t-max", "20"])
    assert run_curve(spec) == run_curve(spec)
    assert run_figure("fig3") == run_figure("fig3")


def test_defaults_match_documented_values():
    spec = spec_for(["curve"])
    assert spec.config.bath_a.eta == 0.6
    assert spec.config.bath_b.beta == 5.0
    state = spec.config.state
    assert (state.c1, state.c2, state.c3) == (1.0, 0.4, -0.4)
    assert spec.t_max == 30.0 and spec.points == 300
    assert spec.method.value == "closed"


def test_config_file_overrides_defaults_and_flags_override_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("eta_a = 0.3  # inline comment\n\nbeta_a = 2\n")
    spec = spec_for(["curve", "--config", str(cfg)])
    assert spec.config.bath_a.eta == 0.3
    assert spec.config.bath_a.beta == 2.0
    spec = spec_for(["curve", "--config", str(cfg), "--eta-a", "0.9"])
    assert spec.config.bath_a.eta == 0.9
    assert spec.config.bath_a.beta == 2.0


def test_kappa_flag_equals_explicit_beta_b():
    via_kappa = spec_for(["curve", "--beta-a", "5", "--kappa", "2"])
    via_beta = spec_for(["curve", "--beta-a", "5", "--beta-b", "10"])
    assert via_kappa.config.bath_b.beta == via_beta.config.bath_b.beta == 10.0


def test_kappa_and_beta_b_are_one_logical_setting(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("kappa = 3\nbeta_a = 4\n")
    # flag beta_b supersedes the file's kappa
    spec = spec_for(["curve", "--config", str(cfg), "--beta-b", "7"])
    assert spec.config.bath_b.beta == 7.0
    # file kappa applies when no flag interferes
    spec = spec_for(["curve", "--config", str(cfg)])
    assert spec.config.bath_b.beta == 12.0
    cfg.write_text("beta_b = 7\n")
    spec = spec_for(["curve", "--config", str(cfg), "--kappa", "2"])
    assert spec.config.bath_b.beta == 10.0  # kappa * default beta_a = 2 * 5


def test_conflicting_temperature_settings_exit_2(tmp_path, capsys):
    assert main(["curve", "--beta-b", "3", "--kappa", "2"]) == 2
    cfg = tmp_path / "run.cfg"
    cfg.write_text("beta_b = 3\nkappa = 2\n")
    assert main(["curve", "--config", str(cfg)]) == 2
    cfg.write_text("nonsense = 3\n")
    assert main(["curve", "--config", str(cfg)]) == 2
    cfg.write_text("eta_a = 1\neta_a = 2\n")
    assert main(["curve", "--config", str(cfg)]) == 2
    cfg.write_text("eta_a\n")
    assert main(["curve", "--config", str(cfg)]) == 2
    assert main(["curve", "--config", str(tmp_path / "missing.cfg")]) == 2
    capsys.readouterr()


def test_invalid_physics_exits_2(capsys):
    assert main(["curve", "--t-max", "-1"]) == 2
    assert main(["curve", "--points", "1"]) == 2
    assert main(["curve", "--c1", "1", "--c2", "1", "--c3", "1"]) == 2
    assert main(["curve", "--eta-a", "-0.5"]) == 2
    capsys.readouterr()


def test_argparse_rejects_unknown_choices():
    with pytest.raises(SystemExit) as exc:
        main(["curve", "--method", "nope"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["figure", "fig9"])
    assert exc.value.code == 2


def test_critical_time_subcommand(capsys):
    argv = ["critical-time", "--eta-a", "0.2", "--eta-b", "0.2",
            "--beta-a", "inf", "--beta-b", "inf"]
    assert main(argv) == 0
    out = capsys.readouterr().out.strip().split("\n")
    assert out[0] == "t_p,method,t_lo,t_hi,residual"
    fields = out[1].split(",")
    assert float(fields[0]) == pytest.approx(9.831391051117842, rel=1e-9)
    assert fields[1] == "bisection"


def test_critical_time_without_crossing_emits_empty_row(capsys):
    assert main(["critical-time", "--c1", "0.5", "--c2", "0.5", "--c3", "0"]) == 0
    out = capsys.readouterr().out.strip().split("\n")
    assert out[1] == ",none,,,"


def test_crossing_beyond_bracket_cap_exits_3(capsys):
    argv = ["critical-time", "--eta-a", "0.05", "--eta-b", "0.05",
            "--beta-a", "inf", "--beta-b", "inf",
            "--c1", "1", "--c2", "0.05", "--c3", "-0.05"]
    assert main(argv) == 3
    capsys.readouterr()


def test_surface_sweep_prepends_parameter_column(capsys):
    argv = ["surface", "--sweep-param", "eta", "--sweep-start", "0.2",
            "--sweep-stop", "0.4", "--sweep-count", "2",
            "--points", "3", "--t-max", "2"]
    assert main(argv) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "eta," + HEADER
    assert len(lines) == 1 + 2 * 3
    assert {float(line.split(",")[0]) for line in lines[1:]} == {0.2, 0.4}


def test_surface_rejects_bad_sweep(capsys):
    assert main(["surface", "--sweep-count", "1"]) == 2
    assert main(["surface", "--sweep-start", "-1"]) == 2
    capsys.readouterr()


def test_figure_presets_row_counts():
    for name, expected in (("fig2", 1 + 50 * 300), ("fig3", 1 + 3 * 300),
                           ("fig4", 1 + 3 * 300), ("fig5", 1 + 3 * 50 * 300)):
        text = run_figure(name)
        assert text.count("\n") == expected
    header = run_figure("fig4").split("\n", 1)[0]
    assert header == "c3," + HEADER
    assert run_figure("fig5").split("\n", 1)[0] == "kappa,beta_a," + HEADER


def test_quadrature_method_agrees_with_closed_on_the_grid():
    closed = run_curve(spec_for(["curve", "--points", "4", "--t-max", "3"]))
    quad = run_curve(spec_for(
        ["curve", "--points", "4", "--t-max", "3", "--method", "quadrature"]))
    for row_c, row_q in zip(closed.split("\n")[1:], quad.split("\n")[1:]):
        if not row_c:
            continue
        for a, b in zip(row_c.split(",")[:6], row_q.split(",")[:6]):
            assert float(a) == pytest.approx(float(b), abs=1e-9)


def test_verify_report_passes_and_flags_injected_error(capsys):
    assert main(["verify"]) == 0
    report = capsys.readouterr().out
    assert "overall: pass" in report
    assert report.count("pass") == 5
    assert main(["verify", "--debug-prefactor-8"]) == 1
    report = capsys.readouterr().out
    assert "overall: FAIL" in report
    assert "ratio" in report
