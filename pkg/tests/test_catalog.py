"""Every catalog model must behave as its file says."""

import shutil

import pytest

from qlab.catalog import catalog_dir, check_entry, get_entry, list_catalog

CATALOG = list_catalog()
NEGATIVE = [e for e in CATALOG if e.negative]


def _params(entries):
    return [pytest.param(e, id=e.path.name, marks=[pytest.mark.slow] if e.expect.slow else []) for e in entries]


@pytest.mark.parametrize("entry", _params(CATALOG))
def test_entry_behaves_as_expected(entry):
    report = check_entry(entry)
    assert report.notes["as expected"], str(report)
    assert report.subject == entry.name


@pytest.mark.parametrize("entry", _params(NEGATIVE))
def test_negative_controls_fail_the_named_statement(entry):
    report = check_entry(entry)
    assert not report.passed
    assert report.first_failure.statement == entry.expect.fails
    assert report.exit_code == 1


def test_catalog_has_negative_controls():
    assert {e.expect.fails for e in NEGATIVE} >= {"groupoid.i_involution", "frame.distributive", "qlocale.P3"}


def test_get_entry():
    assert get_entry("m3", kind="lattice").kind == "lattice"
    assert get_entry("m3", kind="frame").kind == "frame"
    assert get_entry("pair2.quantale.json").kind == "quantale"
    with pytest.raises(KeyError):
        get_entry("pair2", kind="module")


def test_other_directory(tmp_path):
    shutil.copy(catalog_dir() / "z2.groupoid.json", tmp_path)
    entries = list_catalog(tmp_path)
    assert [e.name for e in entries] == ["z2"]
    assert check_entry(entries[0]).passed
