import math
import subprocess
import sys

import numpy as np
import pytest

from microcurve import HorganMurphy, MooneyRivlin, NeoHookean, PolytropicGas
from microcurve.cli import (BUCKLING_HEADER, CURVE_HEADER, STUDIES, format_value, gnuplot_script,
                            main, read_csv, run_buckling, run_curve, run_study)
from microcurve.config import KEYS, config_from_text, parse_config
from microcurve.errors import ConfigError

FAST = "buckling.samples = 256\npressure.points = 9\n"


def write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_defaults_are_reference(tmp_path):
    cfg = parse_config(write(tmp_path, "# nothing set\n\n"))
    s = cfg.spec
    assert s.volume_fraction == 0.05
    assert (s.distribution.shape, s.distribution.mean) == (8.0, 0.01)
    assert s.matrix_model == MooneyRivlin(1 / 18)
    assert s.matrix_material.shear_modulus == 1.2e6 and s.shell_material.bulk_modulus == 2.1e9
    assert cfg.pressure_ratios().size == 200


def test_all_keys_parse():
    text = """
    shell.kappa_pa = 2.1e9
    shell.mu_pa = 1.26e9
    matrix.kappa_pa = 4e9
    matrix.mu_pa = 1.2e6
    composite.volume_fraction = 0.1
    distribution.shape = inf
    distribution.mean = 0.02
    model.name = horgan-murphy  # trailing comment
    model.gamma = 0.1
    model.epsilon = 1e-3
    model.c1_pressure = net
    gas.law = polytropic
    gas.eta = 1.3
    gas.p_atm_pa = 1e5
    buckling.n_min = 13
    buckling.n_max = 1000
    buckling.samples = 128
    pressure.max_ratio = 1.0
    pressure.points = 11
    pressure.extend_to = 25
    pressure.extra_points = 5
    output.dir = results
    """
    cfg = config_from_text(text)
    assert cfg.spec.matrix_model == HorganMurphy(0.1, 1e-3, "net")
    assert cfg.spec.gas_law == PolytropicGas(1.3, 1e5)
    assert math.isinf(cfg.spec.distribution.shape)
    assert cfg.pressure_ratios().size == 16
    assert str(cfg.output_dir) == "results"
    assert len(KEYS) == 22


@pytest.mark.parametrize("text, fragment", [
    ("composite.volume_fraction = 1.5", "composite.volume_fraction"),
    ("model.gamma = 0.7", "model.gamma"),
    ("colour = blue", "unknown key 'colour'"),
    ("pressure.points = 10\npressure.points = 11", "repeated"),
    ("model.gamma =", "has no value"),
    ("just words", "expected 'key = value'"),
    ("matrix.mu_pa = -3", "matrix.mu_pa"),
    ("model.name = ogden", "model.name"),
    ("buckling.n_min = 1000\nbuckling.n_max = 13", "n_min"),
    ("model.name = linear\ngas.law = polytropic", "gas.law"),
    ("model.name = neo-hookean\nmodel.gamma = 0.2", "model.gamma"),
])
def test_config_errors_name_key_and_line(text, fragment):
    with pytest.raises(ConfigError) as err:
        config_from_text(text, "x.cfg")
    msg = str(err.value)
    assert fragment in msg
    assert msg.startswith("x.cfg:")


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        parse_config(tmp_path / "absent.cfg")


def test_model_overrides():
    cfg = config_from_text("")
    assert cfg.with_model("neo-hookean").spec.matrix_model == NeoHookean()
    assert cfg.with_model("mooney-rivlin", 0.5).spec.matrix_model == MooneyRivlin(0.5)
    assert cfg.with_model(None, 0.2).spec.matrix_model == MooneyRivlin(0.2)
    assert cfg.with_model("neo-hookean").with_model("mooney-rivlin").spec.matrix_model == MooneyRivlin(1 / 18)
    with pytest.raises(ConfigError):
        cfg.with_model("neo-hookean", 0.2)
    with pytest.raises(ConfigError):
        config_from_text("gas.law = polytropic").with_model("linear")


def test_format_value():
    assert format_value(0.0) == "0"
    assert format_value(-0.0) == "0"
    assert format_value(0.5) == "5.00000000000e-01"
    assert len(format_value(math.pi).split("e")[0].replace(".", "")) == 12
    with pytest.raises(ValueError):
        format_value(math.nan)


def test_run_buckling_round_trip(tmp_path):
    cfg = config_from_text("buckling.n_min = 13\nbuckling.n_max = 1000\nbuckling.samples = 200")
    path = run_buckling(cfg, tmp_path / "b.csv")
    header, data = read_csv(path)
    assert tuple(header) == BUCKLING_HEADER
    assert data.shape == (200, 3)
    assert np.all(np.diff(data[:, 1]) < 0) and np.all(np.diff(data[:, 2]) < 0)
    assert data[:, 1].max() <= 0.03 and data[:, 2].max() <= 3.0


def test_run_curve_round_trip(tmp_path):
    path = run_curve(config_from_text(FAST), tmp_path / "c.csv", workers=1)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(CURVE_HEADER)
    assert lines[1] == "0,0,0"
    _, data = read_csv(path)
    assert data.shape == (9, 3) and np.all(np.diff(data[:, 1]) > 0)


def test_model_reduction_through_cli(tmp_path):
    cfg = write(tmp_path, FAST)
    assert main(["curve", "--config", str(cfg), "--model", "neo-hookean", "--out", str(tmp_path / "nh")]) == 0
    assert main(["curve", "--config", str(cfg), "--model", "mooney-rivlin", "--gamma", "0.5",
                 "--out", str(tmp_path / "mr")]) == 0
    a = read_csv(tmp_path / "nh" / "curve.csv")[1]
    b = read_csv(tmp_path / "mr" / "curve.csv")[1]
    np.testing.assert_allclose(a[:, 1], b[:, 1], rtol=1e-12, atol=1e-15)
    np.testing.assert_array_equal(a[:, [0, 2]], b[:, [0, 2]])


def test_exit_status(tmp_path, capsys):
    assert main(["curve", "--config", str(write(tmp_path, "model.gamma = 0.7"))]) == 2
    assert "model.gamma" in capsys.readouterr().err
    blocker = tmp_path / "occupied"
    blocker.write_text("")
    assert main(["buckling", "--config", str(write(tmp_path, FAST)), "--out", str(blocker / "sub")]) == 1
    assert "error" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        main(["study", "fig99", "--config", str(write(tmp_path, ""))])
    with pytest.raises(SystemExit):
        main(["curve"])


def test_env_thread_cap(tmp_path, monkeypatch):
    monkeypatch.setenv("MICROCURVE_THREADS", "lots")
    assert main(["curve", "--config", str(write(tmp_path, FAST))]) == 2


def test_study_catalogue():
    cfg = config_from_text("")
    assert set(STUDIES) == {"fig6", "fig7", "fig8", "fig9", "fig10"}
    runs = {name: STUDIES[name][0](cfg) for name in STUDIES}
    assert [label for label, _ in runs["fig6"]] == ["neo-hookean", "mooney-rivlin", "horgan-murphy", "linear"]
    assert all(c.extend_to == 25.0 for _, c in runs["fig7"])
    fig8 = dict(runs["fig8"])
    assert fig8["volume_fraction_0.1"].spec.volume_fraction == 0.1
    assert isinstance(fig8["polytropic_gas"].spec.gas_law, PolytropicGas)
    assert fig8["soft_shell"].spec.shell_material.shear_modulus == 0.126e9
    assert fig8["soft_matrix"].spec.matrix_material.bulk_modulus == 0.4e9
    means = sorted(c.spec.distribution.mean for label, c in runs["fig9"] if label.startswith("mean"))
    shapes = sorted(c.spec.distribution.shape for label, c in runs["fig9"] if label.startswith("shape"))
    assert means == [0.005, 0.01, 0.02] and shapes == [8.0, 15.0, 30.0]
    assert [c.spec.distribution.shape for _, c in runs["fig10"]] == [8.0, 50.0, math.inf]


def test_run_study_outputs(tmp_path):
    paths = run_study(config_from_text(FAST), "fig10", tmp_path, workers=2)
    assert [p.name for p in paths] == ["shape_8.csv", "shape_50.csv", "single_ratio.csv", "fig10.gp"]
    script = paths[-1].read_text()
    for p in paths[:-1]:
        assert f"'{p.name}'" in script
        assert read_csv(p)[1].shape == (9, 3)
    with pytest.raises(ConfigError):
        run_study(config_from_text(FAST), "fig11", tmp_path)
    assert "set logscale x" in gnuplot_script("fig7", ["a"], logscale=True)


def test_console_entry_point(tmp_path):
    cfg = write(tmp_path, FAST)
    out = subprocess.run([sys.executable, "-m", "microcurve.cli", "buckling", "--config", str(cfg),
                          "--out", str(tmp_path)], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip().endswith("buckling.csv")
