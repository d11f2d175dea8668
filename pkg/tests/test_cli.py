"""Tests for the qlab command line."""

import pytest
from typer.testing import CliRunner

from qlab.cli import app
from qlab.io import build, load_model

runner = CliRunner()


@pytest.mark.parametrize(
    "args,code",
    [
        (["validate", "pair2", "--kind", "groupoid"], 0),
        (["validate", "pairS", "--kind", "quantale"], 0),
        (["validate", "bad-inverse"], 1),
        (["validate", "trivial-z2", "--kind", "q-locale"], 1),
        (["validate", "no-such-model.json"], 2),
        (["validate", "m3", "--kind", "groupoid"], 2),
    ],
)
def test_validate_exit_codes(args, code):
    result = runner.invoke(app, args)
    assert result.exit_code == code, result.output


def test_validate_json():
    result = runner.invoke(app, ["validate", "z2", "--json"])
    assert result.exit_code == 0
    assert '"subject"' in result.stdout


def test_invalid_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"schema_version": 1, "model": {"kind": "lattice", "ground": 1, "sets": [8]}}')
    result = runner.invoke(app, ["validate", str(path)])
    assert result.exit_code == 2


def test_quantalize_then_groupoidify(tmp_path):
    quantale = tmp_path / "pairS.quantale.json"
    result = runner.invoke(app, ["quantalize", "pairS", "-o", str(quantale)])
    assert result.exit_code == 0, result.output
    assert len(build(load_model(quantale)).lattice) == 6

    groupoid = tmp_path / "pairS.groupoid.json"
    result = runner.invoke(app, ["groupoidify", str(quantale), "-o", str(groupoid)])
    assert result.exit_code == 0, result.output
    G = build(load_model(groupoid))
    assert len(G.arrows) == 4


def test_quantalize_needs_a_groupoid():
    result = runner.invoke(app, ["quantalize", "pair2.quantale.json"])
    assert result.exit_code == 2


@pytest.mark.parametrize("source,code", [("pairS-point", 0), ("pairS-point.q-locale.json", 0), ("trivial-z2", 1)])
def test_roundtrip(source, code):
    result = runner.invoke(app, ["roundtrip", source])
    assert result.exit_code == code, result.output


def test_roundtrip_writes_the_converted_model(tmp_path):
    out = tmp_path / "pair2-point.q-locale.json"
    result = runner.invoke(app, ["roundtrip", "pair2-point", "-o", str(out)])
    assert result.exit_code == 0, result.output
    assert load_model(out).kind == "q-locale"


def test_compose(tmp_path):
    out = tmp_path / "composite.bibundle.json"
    result = runner.invoke(app, ["compose", "unit-pair2", "unit-pair2", "-o", str(out)])
    assert result.exit_code == 0, result.output
    assert load_model(out).kind == "bibundle"


def test_compose_needs_two():
    assert runner.invoke(app, ["compose", "unit-pair2"]).exit_code == 2


def test_search(tmp_path):
    result = runner.invoke(app, ["search", "groupoid", "-p", "open-not-etale", "-n", "4", "-o", str(tmp_path)])
    assert result.exit_code == 0, result.output
    written = sorted(tmp_path.glob("*.groupoid.json"))
    assert written
    assert all(load_model(p).kind == "groupoid" for p in written)


def test_search_errors():
    assert runner.invoke(app, ["search", "groupoid", "-p", "compact"]).exit_code == 2
    assert runner.invoke(app, ["search", "groupoid", "-p", "etale", "-n", "4", "--bound", "2"]).exit_code == 3


def test_export():
    result = runner.invoke(app, ["export", "pair2", "--kind", "groupoid", "--dot"])
    assert result.exit_code == 0
    assert result.stdout.startswith("digraph")
    assert runner.invoke(app, ["export", "pair2"]).exit_code == 2


def test_export_json(tmp_path):
    out = tmp_path / "m3.json"
    result = runner.invoke(app, ["export", "m3", "--kind", "lattice", "--json", "-o", str(out)])
    assert result.exit_code == 0
    assert load_model(out).kind == "lattice"


def test_catalog():
    result = runner.invoke(app, ["catalog"])
    assert result.exit_code == 0
    assert "pair2" in result.stdout


@pytest.mark.slow
def test_catalog_validate():
    assert runner.invoke(app, ["catalog", "--validate"]).exit_code == 0
