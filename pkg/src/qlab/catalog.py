"""The shipped catalog of small models, including the negative controls.

Catalog files live in ``qlab/data/catalog`` and are named
``<name>.<kind>.json``. A file's ``expect`` section says whether it should
validate and, for a negative control, which statement should fail first.
"""

import logging
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import List, Optional

from qlab.io.codec import build, load_model
from qlab.io.schema import Expectation, ModelFile
from qlab.report import Report
from qlab.validate import validate_model

logger = logging.getLogger(__name__)


def catalog_dir() -> Path:
    return Path(str(resources.files("qlab") / "data" / "catalog"))


@dataclass
class CatalogEntry:
    name: str
    path: Path
    model: ModelFile

    @property
    def kind(self) -> str:
        return self.model.kind

    @property
    def expect(self) -> Expectation:
        return self.model.expect or Expectation()

    @property
    def negative(self) -> bool:
        return not self.expect.passes


def list_catalog(directory: Optional[Path] = None) -> List[CatalogEntry]:
    """Every catalog model, sorted by file name."""
    directory = Path(directory or catalog_dir())
    entries = []
    for path in sorted(directory.glob("*.json")):
        name = path.name.split(".")[0]
        entries.append(CatalogEntry(name=name, path=path, model=load_model(path)))
    logger.debug("catalog %s: %d models", directory, len(entries))
    return entries


def get_entry(name: str, kind: Optional[str] = None, directory: Optional[Path] = None) -> CatalogEntry:
    """The first catalog model called ``name`` (a bare name or a file name), of ``kind`` if given."""
    for entry in list_catalog(directory):
        if (entry.name == name or entry.path.name == name) and kind in (None, entry.kind):
            return entry
    suffix = f" of kind {kind}" if kind else ""
    raise KeyError(f"no catalog model named {name!r}{suffix}")


def load(name: str, kind: Optional[str] = None, directory: Optional[Path] = None):
    """Build the catalog model ``name``."""
    return build(get_entry(name, kind=kind, directory=directory).model)


def check_entry(entry: CatalogEntry, cross_check: bool = True) -> Report:
    """Validate ``entry`` and compare the outcome with its expectation.

    Structural failures while building count as the failure of the law they
    name.
    """
    report = validate_model(entry.model, cross_check=cross_check)
    report.subject = entry.name
    first = report.first_failure
    expect = entry.expect
    matched = report.passed if expect.passes else first is not None and first.statement == expect.fails
    report.note("as expected", matched)
    if not matched:
        logger.warning(
            "%s: expected %s, got %s", entry.name, expect.fails or "pass", first.statement if first else "pass"
        )
    return report
