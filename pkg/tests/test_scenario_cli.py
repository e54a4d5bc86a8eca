import json
from dataclasses import replace

import numpy as np
import pytest

from matterwave.cli import compute_columns, format_csv, main, run
from matterwave.scenario import ConfigError, Scenario, parse_config, presets, to_config_text

FIG3_TEXT = """\
# two-slit double diffraction
sigma0_um = 5
n_slits = 2
d_nm = 100
b_nm = 18
L_m = 0.1
l_m = 1.25
v_mps = 200
"""


def test_parse_minimal_document():
    s = parse_config(FIG3_TEXT)
    assert s.sigma0_um == (5.0,)
    assert s.grating().d == pytest.approx(1e-7)
    assert s.beamline().T == pytest.approx(5e-4)
    assert s.outputs == ("quantum",)


def test_preset_expansion():
    s = parse_config("scenario = fig3-twoslit\n")
    assert s == presets()["fig3-twoslit"]
    assert s.grating().b == pytest.approx(1.8e-8)
    assert s.beamline().tau == pytest.approx(6.25e-3)


def test_preset_with_override():
    s = parse_config("scenario = fig3-twoslit\nn_slits = 7\n")
    assert s.n_slits == 7 and s.sigma0_um == (5.0,)


@pytest.mark.parametrize(
    "text, message",
    [
        ("", "missing required keys"),
        (FIG3_TEXT.replace("sigma0_um = 5", "sigma0_um = -1"), "sigma0 must be positive"),
        (FIG3_TEXT + "colour = red\n", "line 9: unknown key"),
        (FIG3_TEXT + "n_slits = 3\n", "line 9: duplicate key"),
        (FIG3_TEXT + "just words\n", "line 9"),
        (FIG3_TEXT.replace("d_nm = 100", "d_nm = wide"), "line 4: cannot parse"),
        (FIG3_TEXT.replace("b_nm = 18", "b_nm = 150"), "smaller"),
        ("scenario = nowhere\n", "unknown scenario preset"),
        (FIG3_TEXT + "outputs = quantum, sideways\n", "unknown output"),
        (FIG3_TEXT + "mode = fixed-pregrating-width\n", "pregrating_width_um"),
    ],
)
def test_config_errors(text, message):
    with pytest.raises(ConfigError, match=message):
        parse_config(text)


@pytest.mark.parametrize("name", sorted(presets()))
def test_round_trip(name):
    s = presets()[name]
    assert parse_config(to_config_text(s)) == s


def test_preset_contents():
    p = presets()
    assert p["fig9-N30"].n_slits == 30
    assert p["fig10-N100"].n_slits == 100
    assert p["fig5-sweep"].sigma0_um == (6.0, 0.02, 0.0175, 0.013)
    assert p["fig6-N2"].fraunhofer_velocity == 220.0
    assert p["fig3-twoslit"].fraunhofer_velocity == 200.0


def small(name, **kw):
    return replace(presets()[name], grid_points=201, **kw)


def test_run_two_slit_preset(tmp_path):
    report = run(small("fig3-twoslit"), tmp_path)
    lines = (tmp_path / "fig3-twoslit.csv").read_text().splitlines()
    assert lines[0] == "x_um,I_quantum"
    assert len(lines) == 202
    values = np.array([float(l.split(",")[1]) for l in lines[1:]])
    assert values.max() == 1.0
    data = json.loads((tmp_path / "fig3-twoslit.report.json").read_text())
    assert data["columns"] == ["x_um", "I_quantum"]
    assert report.report_path.endswith(".json")


def test_run_hundred_slit_columns(tmp_path):
    run(small("fig10-N100", n_velocity_samples=5), tmp_path)
    header = (tmp_path / "fig10-N100.csv").read_text().splitlines()[0]
    assert header == "x_um,I_quantum,I_velocity_avg,I_fraunhofer"


def test_run_sigma0_sweep_columns(tmp_path):
    run(small("fig5-sweep"), tmp_path)
    header = (tmp_path / "fig5-sweep.csv").read_text().splitlines()[0].split(",")
    assert header[1:] == [f"I_quantum[sigma0_um={v}]" for v in ("6", "0.02", "0.0175", "0.013")]


def test_velocity_averaging_refused_in_fixed_mode(tmp_path):
    s = replace(small("fig5-sweep"), outputs=("quantum", "velocity-averaged"))
    with pytest.raises(ConfigError, match="geometric-T"):
        run(s, tmp_path)


def test_report_reflects_computation(tmp_path):
    s = small("fig3-twoslit")
    d = run(s, tmp_path).derived[0]
    packet = s.packets()[0]
    assert d["tau0_s"] == pytest.approx(packet.tau0, rel=1e-12)
    assert d["T_s"] == pytest.approx(s.L_m / s.v_mps, rel=1e-12)
    assert d["tau_s"] == pytest.approx(s.l_m / s.v_mps, rel=1e-12)
    assert d["T_over_tau0"] == pytest.approx(d["T_s"] / d["tau0_s"], rel=1e-12)
    assert d["covariance_at_grating"]["det_over_bound"] == pytest.approx(1.0, rel=1e-12)


def test_text_report(tmp_path):
    report = run(small("fig3-twoslit"), tmp_path, report_format="text")
    text = (tmp_path / "fig3-twoslit.report.txt").read_text()
    assert text == report.to_text()
    assert "tau0_s" in text


def test_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    s = small("fig6-N2", n_velocity_samples=7)
    run(s, a)
    run(s, b)
    assert (a / "fig6-N2.csv").read_bytes() == (b / "fig6-N2.csv").read_bytes()


def test_csv_format():
    text = format_csv(np.array([-1e-6, 1e-6]), {"I": np.array([0.5, 1.0])})
    assert text == "x_um,I\n-1,0.5\n1,1\n"


def test_unit_area_sweep_ranks_central_intensity(tmp_path):
    # with unit-area curves the centre of the broad sigma0 = 6 um pattern is the
    # highest and the central value falls monotonically along the sweep
    s = replace(presets()["fig5-sweep"], normalization="unit-area")
    xs, cols = compute_columns(s)
    centre = [col[len(xs) // 2] for col in cols.values()]
    assert all(a > b for a, b in zip(centre, centre[1:]))


def test_main_exit_codes(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(FIG3_TEXT + "grid_points = 101\n")
    assert main(["run", str(cfg), "--out", str(tmp_path / "out")]) == 0
    assert (tmp_path / "out" / "custom.csv").exists()

    assert main(["run", "--preset", "fig3-twoslit", "--out", str(tmp_path / "p"), "--report", "text"]) == 0
    assert "scenario: fig3-twoslit" in capsys.readouterr().out

    empty = tmp_path / "empty.cfg"
    empty.write_text("")
    assert main(["run", str(empty), "--out", str(tmp_path)]) == 2

    assert main(["run", str(tmp_path / "absent.cfg")]) == 4

    blocked = tmp_path / "file"
    blocked.write_text("x")
    assert main(["run", str(cfg), "--out", str(blocked / "sub")]) == 4



def test_main_computation_error(tmp_path, monkeypatch):
    import matterwave.cli as cli

    def fail(*_):
        raise FloatingPointError("overflow in screen amplitude")

    monkeypatch.setattr(cli, "compute_columns", fail)
    assert main(["run", "--preset", "fig3-twoslit", "--out", str(tmp_path)]) == 3


def test_presets_command(capsys):
    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    assert all(name in out for name in presets())
