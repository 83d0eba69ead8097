import json

import pytest

from risfso.cli import evaluate_point, load_preset, main, preset_names
from risfso.cli import validation
from risfso.errors import ConfigError

SWEEP = """
[sweep]
metric = "op"
axis = "mu_d_db"
values = [10, 20, 30]
label = "moderate"
"""

CURVE_COUNTS = {
    "fig2": 3,
    "fig3": 6,
    "fig4": 6,
    "fig5": 4,
    "fig6": 4,
    "fig7": 4,
    "fig8": 6,
}


@pytest.fixture
def sweep_file(tmp_path):
    path = tmp_path / "sweep.toml"
    path.write_text(SWEEP)
    return path


@pytest.fixture
def meijer_only(monkeypatch):
    monkeypatch.setattr(
        validation,
        "CHECKS",
        [("meijer", validation.check_meijer_identities)],
    )


def _data_lines(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


@pytest.mark.parametrize("name", sorted(CURVE_COUNTS))
def test_every_preset_parses(name):
    specs = load_preset(name)

    assert len(specs) == CURVE_COUNTS[name]
    assert len({spec.label for spec in specs}) == len(specs)


def test_unknown_preset():
    with pytest.raises(ConfigError, match="unknown preset 'fig9'"):
        load_preset("fig9")


@pytest.mark.parametrize("name", ["fig3", "fig6", "fig8"])
def test_preset_curves_evaluate_without_errors(name):
    for spec in load_preset(name):
        row = evaluate_point(spec, spec.label, 20.0)

        assert row.error is None, row.error
        assert row.closed_form is not None or row.quadrature is not None


def test_outage_preset_improves_with_more_elements():
    specs = load_preset("fig2")

    for mu_db in (10.0, 30.0):
        values = [evaluate_point(s, s.label, mu_db).closed_form for s in specs]

        assert values[0] > values[1] > values[2]


def test_capacity_preset_favours_heterodyne_at_high_snr():
    specs = {s.label: s for s in load_preset("fig5")}

    for zeta in ("1", "2"):
        hd = specs[f"HD zeta_rd={zeta}"]
        im_dd = specs[f"IM/DD zeta_rd={zeta}"]
        for mu_db in (40.0, 60.0):
            assert evaluate_point(hd, "hd", mu_db).closed_form > (
                evaluate_point(im_dd, "im-dd", mu_db).closed_form
            )


def test_presets_list(capsys):
    assert main(["presets", "list"]) == 0

    assert capsys.readouterr().out.split() == preset_names()


def test_presets_show(capsys):
    assert main(["presets", "show", "fig2"]) == 0

    out = capsys.readouterr().out
    assert "[[curve]]" in out
    assert '"op"' in out


def test_presets_show_unknown_is_a_config_error():
    assert main(["presets", "show", "fig9"]) == 2


def test_sweep_writes_csv(sweep_file, tmp_path):
    out = tmp_path / "op.csv"

    code = main(["sweep", str(sweep_file), "--out", str(out), "--threads", "2"])

    assert code == 0
    lines = _data_lines(out.read_text())
    assert lines[0].startswith("curve,metric,axis,value,closed_form")
    assert [line.split(",")[3] for line in lines[1:]] == [
        "10.0",
        "20.0",
        "30.0",
    ]


def test_sweep_json_echoes_config(sweep_file, capsys):
    assert main(["sweep", str(sweep_file), "--format", "json"]) == 0

    document = json.loads(capsys.readouterr().out)
    assert document["kind"] == "sweep"
    assert document["config"][0]["sweep"]["values"] == [10.0, 20.0, 30.0]
    assert [row["curve"] for row in document["rows"]] == ["moderate"] * 3


def test_seeded_sweeps_are_reproducible(sweep_file, capsys):
    argv = ["sweep", str(sweep_file), "--samples", "3000", "--seed", "11"]

    assert main(argv + ["--threads", "1"]) == 0
    first = capsys.readouterr().out
    assert main(argv + ["--threads", "3"]) == 0
    second = capsys.readouterr().out

    assert first == second
    assert "seed=11" in first
    assert _data_lines(first)[1].split(",")[7] != ""


def test_failing_points_are_marked_not_fatal(tmp_path, capsys):
    path = tmp_path / "strong.toml"
    path.write_text(
        SWEEP + '\n[link_d]\nhop_s = { preset = "strong" }\n'
        'hop_r = { preset = "strong" }\n'
    )

    assert main(["sweep", str(path)]) == 0

    rows = _data_lines(capsys.readouterr().out)[1:]
    assert len(rows) == 3
    assert all("MomentMatchingError" in row for row in rows)


def test_empty_sweep_values_exit_with_config_error(tmp_path, caplog):
    path = tmp_path / "empty.toml"
    path.write_text('[sweep]\nmetric = "op"\nvalues = []\n')

    assert main(["sweep", str(path)]) == 2
    assert "sweep.values" in caplog.text


@pytest.mark.parametrize(
    "source, path",
    [
        ("sweep = 3\n", "sweep: expected a table"),
        ("output = 'x'\n[sweep]\nvalues = [1]\n", "output: expected a table"),
        (
            "[sweep]\naxis = 'alpha_beta_preset'\nvalues = [[1]]\n",
            "sweep.values[0]: unknown preset [1]",
        ),
        (
            "[sweep]\nvalues = [1]\nmetric = ['op']\n",
            "sweep.metric: unknown metric ['op']",
        ),
        (
            "[sweep]\nvalues = [1]\n[link_d.hop_s]\npreset = {a = 1}\n",
            "link_d.hop_s.preset: unknown preset",
        ),
    ],
)
def test_wrongly_typed_values_exit_with_config_error(
    tmp_path, caplog, source, path
):
    config = tmp_path / "typed.toml"
    config.write_text(source)

    assert main(["sweep", str(config)]) == 2
    assert path in caplog.text


def test_unknown_sweep_target_exit_with_config_error(caplog):
    assert main(["sweep", "no-such-file.toml"]) == 2
    assert "neither a config file nor a preset" in caplog.text


def test_validate_passes(meijer_only, capsys):
    assert main(["validate", "--seed", "3"]) == 0

    out = capsys.readouterr().out
    assert out.startswith("# risfso-report v1\n# kind=validation")
    assert ",false," not in out


def test_tampered_tolerance_fails_validation(meijer_only, capsys):
    assert main(["validate", "--tolerance-scale", "0"]) == 1

    assert ",false," in capsys.readouterr().out


def test_unknown_validation_level_is_rejected():
    with pytest.raises(SystemExit):
        main(["validate", "--level", "huge"])
