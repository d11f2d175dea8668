"""Tests for model files: parsing, canonical JSON and building."""

import json

import pytest

from qlab.catalog import list_catalog
from qlab.errors import LawViolation, SchemaError
from qlab.groupoid import FiniteOpenGroupoid
from qlab.io import (
    build,
    canonical_json,
    dump_model,
    groupoid_model,
    lattice_model,
    load_model,
    model_file,
    parse_model,
    quantale_model,
)
from qlab.order import FiniteFrame, chain

CATALOG = list_catalog()


@pytest.mark.parametrize("entry", CATALOG, ids=[e.path.name for e in CATALOG])
def test_canonical_json_is_stable(entry):
    text = canonical_json(entry.model)
    assert canonical_json(parse_model(text)) == text


def test_canonical_json_sorts_keys():
    text = canonical_json(model_file(lattice_model(chain(2)), name="c2"))
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert text.endswith("\n")
    assert data["model"]["kind"] == "frame"


class TestParse:
    def test_invalid_json(self):
        with pytest.raises(SchemaError) as exc:
            parse_model("{", source="broken.json")
        assert exc.value.location.startswith("broken.json:1:")

    def test_unknown_kind(self):
        text = json.dumps({"schema_version": 1, "model": {"kind": "sheaf"}})
        with pytest.raises(SchemaError) as exc:
            parse_model(text)
        assert exc.value.location.startswith("<string>:model")

    def test_unsupported_version(self):
        text = json.dumps({"schema_version": 2, "model": {"kind": "lattice", "ground": 0, "sets": [0]}})
        with pytest.raises(SchemaError) as exc:
            parse_model(text)
        assert exc.value.location == "<string>:schema_version"

    def test_unknown_key(self):
        text = json.dumps({"schema_version": 1, "model": {"kind": "lattice", "ground": 0, "sets": [0], "extra": 1}})
        with pytest.raises(SchemaError):
            parse_model(text)

    @pytest.mark.parametrize(
        "model",
        [
            {"kind": "lattice", "ground": 1, "sets": [0, 4]},
            {"kind": "lattice", "ground": 1, "sets": []},
            {"kind": "lattice", "ground": 1, "sets": [0, 0, 1]},
            {"kind": "groupoid", "name": "empty"},
            {"kind": "groupoid", "construction": {"type": "cech", "space": {"labels": ["a"]}}},
            {"kind": "quantale", "name": "no tables"},
            {"kind": "locale-map", "source": {"labels": ["a"]}, "target": {"labels": ["b"]}, "values": [1]},
            {"kind": "bundle", "glocale": {"groupoid": {"construction": {"type": "cyclic", "n": 2}}, "construction": "trivial"}},
        ],
        ids=["mask", "empty", "duplicate", "groupoid", "cech-cover", "quantale", "values", "glocale"],
    )
    def test_schema_errors(self, model):
        with pytest.raises(SchemaError):
            parse_model(json.dumps({"schema_version": 1, "model": model}))

    def test_expectation_must_be_consistent(self):
        text = json.dumps(
            {
                "schema_version": 1,
                "model": {"kind": "lattice", "ground": 0, "sets": [0]},
                "expect": {"passes": True, "fails": "lattice.top"},
            }
        )
        with pytest.raises(SchemaError) as exc:
            parse_model(text)
        assert "expect" in exc.value.location

    def test_missing_file(self, tmp_path):
        with pytest.raises(SchemaError):
            load_model(tmp_path / "missing.json")


class TestBuild:
    def test_pair_groupoid(self, catalog_model):
        G = catalog_model("pair2", kind="groupoid")
        assert isinstance(G, FiniteOpenGroupoid)
        assert len(G.arrows) == 4
        assert G.name == "Pair(2)"

    def test_groupoid_tables_survive_a_file(self, pair_s, tmp_path):
        path = dump_model(model_file(groupoid_model(pair_s)), tmp_path / "out" / "pairS.groupoid.json")
        G = build(load_model(path))
        assert (G.d, G.r, G.u, G.i) == (pair_s.d, pair_s.r, pair_s.u, pair_s.i)
        assert G.m == pair_s.m
        assert G.arrows.up == pair_s.arrows.up

    def test_quantale_tables_survive_a_file(self, quantale_pair_s):
        Q = build(parse_model(canonical_json(model_file(quantale_model(quantale_pair_s)))))
        assert len(Q.lattice) == 6
        for x in Q.lattice.elements:
            assert Q.star(x) == quantale_pair_s.star(x)
            for y in Q.lattice.elements:
                assert Q.mul(x, y) == quantale_pair_s.mul(x, y)

    def test_frame_kind_builds_a_frame(self):
        assert isinstance(build(model_file(lattice_model(chain(3)))), FiniteFrame)

    def test_structural_errors_surface_as_law_violations(self, catalog_model):
        with pytest.raises(LawViolation) as exc:
            catalog_model("m3", kind="frame")
        assert exc.value.law == "frame.distributive"
