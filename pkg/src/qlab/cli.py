"""Console script for qlab."""

import logging
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Iterator, List, Optional

import typer
from rich.console import Console
from rich.table import Table

from qlab import catalog as qcatalog
from qlab.bundle.bibundle import compose_bibundles
from qlab.bundle.bundle import GBundle, principal_bundle
from qlab.correspondence.principal import (
    PrincipalQLocale,
    g_bundle_to_principal_q_locale,
    principal_q_locale_to_g_bundle,
    roundtrip_check,
    roundtrip_check_q_locale,
)
from qlab.errors import CrossValidationError, EnumerationBoundError, HypothesisError, LawViolation, SchemaError
from qlab.groupoid.bilocale import Bilocale, with_groupoids
from qlab.groupoid.groupoid import FiniteOpenGroupoid
from qlab.io import (
    bibundle_model,
    build,
    bundle_model,
    canonical_json,
    dump_model,
    groupoid_model,
    load_model,
    model_file,
    q_locale_model,
    quantale_model,
    to_dot,
)
from qlab.io.schema import ModelFile
from qlab.log import LogFormat, LogLevel, configure_logging
from qlab.quantale.groupoid_quantale import check_quantale_roundtrip, groupoid_of_quantale, quantale_of_groupoid
from qlab.quantale.quantale import BasedQuantale
from qlab.report import Report
from qlab.search import PREDICATES
from qlab.search import search as run_search
from qlab.validate import validate_model

logger = logging.getLogger(__name__)

app = typer.Typer(help="Check and convert finite groupoids, quantales and their modules.")
console = Console()
err_console = Console(stderr=True)


class Kind(str, Enum):
    lattice = "lattice"
    frame = "frame"
    locale_map = "locale-map"
    groupoid = "groupoid"
    quantale = "quantale"
    module = "module"
    bundle = "bundle"
    bibundle = "bibundle"
    q_locale = "q-locale"


class SearchKind(str, Enum):
    groupoid = "groupoid"
    quantale = "quantale"
    module = "module"


@contextmanager
def _guard() -> Iterator[None]:
    """Map qlab errors to exit codes: 2 bad input, 3 bound exceeded, 1 law failure."""
    try:
        yield
    except SchemaError as exc:
        err_console.print(f"[red]✗[/red] Invalid model: {exc}")
        raise typer.Exit(2)
    except EnumerationBoundError as exc:
        err_console.print(f"[yellow]⏸[/yellow] {exc}")
        raise typer.Exit(3)
    except LawViolation as exc:
        err_console.print(f"[red]✗[/red] {exc.law}: {exc}")
        raise typer.Exit(1)
    except HypothesisError as exc:
        err_console.print(f"[red]✗[/red] {exc.hypothesis}: {exc}")
        raise typer.Exit(1)
    except CrossValidationError as exc:
        err_console.print(f"[red]✗[/red] Cross-validation failed: {exc}")
        raise typer.Exit(1)


def _resolve(source: str, kind: Optional[Kind] = None) -> ModelFile:
    """A model file path, or else the name of a catalog model."""
    path = Path(source)
    if path.exists():
        mf = load_model(path)
    else:
        try:
            mf = qcatalog.get_entry(source, kind=kind.value if kind else None).model
        except KeyError:
            raise SchemaError(source, "no such file or catalog model")
    if kind is not None and mf.kind != kind.value:
        raise SchemaError(source, f"expected a {kind.value} model, got {mf.kind}")
    return mf


def _require(obj, expected: type, source: str):
    if not isinstance(obj, expected):
        raise SchemaError(source, f"expected a {expected.__name__}, got {type(obj).__name__}")
    return obj


def _emit(mf: ModelFile, output: Optional[Path]) -> None:
    if output is None:
        typer.echo(canonical_json(mf), nl=False)
    else:
        dump_model(mf, output)
        err_console.print(f"[green]✓[/green] Wrote {mf.kind} model: {output}")


def _show(report: Report, as_json: bool = False) -> None:
    if as_json:
        typer.echo(report.to_json())
    else:
        err_console.print(str(report), markup=False, highlight=False)


@app.callback()
def main(
    log_level: LogLevel = typer.Option(LogLevel.WARNING, "--log-level", help="Logging level"),
    log_format: LogFormat = typer.Option(LogFormat.RICH, "--log-format", help="Log output format"),
):
    configure_logging(log_level, log_format)


@app.command("validate")
def validate_cmd(
    source: str = typer.Argument(..., help="Model file, or the name of a catalog model"),
    kind: Optional[Kind] = typer.Option(None, "--kind", "-k", help="Expected kind of model"),
    as_json: bool = typer.Option(False, "--json", help="Print the report as JSON"),
    cross_check: bool = typer.Option(True, "--cross-check/--no-cross-check", help="Recompute frame-side where feasible"),
):
    """Run every check for the model's kind."""
    with _guard():
        mf = _resolve(source, kind)
        report = validate_model(mf, cross_check=cross_check)
    _show(report, as_json)
    raise typer.Exit(report.exit_code)


@app.command()
def roundtrip(
    source: str = typer.Argument(..., help="A bundle or q-locale model"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the converted model here"),
    as_json: bool = typer.Option(False, "--json", help="Print the report as JSON"),
):
    """Convert a principal bundle to its Q-locale and back, or the other way round."""
    with _guard():
        mf = _resolve(source)
        obj = build(mf)
        if isinstance(obj, GBundle):
            principal = principal_bundle(obj)
            report = roundtrip_check(principal)
            if output is not None and report.passed:
                _emit(model_file(q_locale_model(g_bundle_to_principal_q_locale(principal))), output)
        elif isinstance(obj, PrincipalQLocale):
            report = roundtrip_check_q_locale(obj)
            if output is not None and report.passed:
                _emit(model_file(bundle_model(principal_q_locale_to_g_bundle(obj).bundle)), output)
        else:
            raise SchemaError(source, f"expected a bundle or q-locale model, got {mf.kind}")
    _show(report, as_json)
    raise typer.Exit(report.exit_code)


@app.command()
def quantalize(
    source: str = typer.Argument(..., help="A groupoid model"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the quantale here instead of stdout"),
):
    """Build the quantale of opens O(G) of a groupoid."""
    with _guard():
        G = _require(build(_resolve(source, Kind.groupoid)), FiniteOpenGroupoid, source)
        Q = quantale_of_groupoid(G)
    err_console.print(f"[blue]→[/blue] {Q.name}: {len(Q.lattice)} elements over a base of {len(Q.base)}")
    _emit(model_file(quantale_model(Q)), output)


@app.command()
def groupoidify(
    source: str = typer.Argument(..., help="A quantale model"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the groupoid here instead of stdout"),
):
    """Reconstruct the groupoid of a groupoid quantale."""
    with _guard():
        Q = _require(build(_resolve(source, Kind.quantale)), BasedQuantale, source)
        G = groupoid_of_quantale(Q)
        report = check_quantale_roundtrip(Q)
    err_console.print(f"[blue]→[/blue] {G.name}: {len(G.arrows)} arrows on {len(G.objects)} objects")
    if not report.passed:
        _show(report)
        raise typer.Exit(report.exit_code)
    _emit(model_file(groupoid_model(G)), output)


@app.command()
def compose(
    sources: List[str] = typer.Argument(..., help="Bibundle models, composed left to right"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the composite here"),
    as_json: bool = typer.Option(False, "--json", help="Print the report as JSON"),
):
    """Compose principal bibundles over their middle groupoids."""
    if len(sources) < 2:
        err_console.print("[red]✗[/red] compose needs at least two bibundles")
        raise typer.Exit(2)
    with _guard():
        parts = [_require(build(_resolve(s, Kind.bibundle)), Bilocale, s) for s in sources]
        composite = parts[0]
        report = Report(subject=" ∘ ".join(p.name or "?" for p in parts))
        for part in parts[1:]:
            part = with_groupoids(part, left=composite.right_groupoid)
            composite, stage = compose_bibundles(composite, part)
            report.extend(stage)
    _show(report, as_json)
    if output is not None and report.passed:
        _emit(model_file(bibundle_model(composite)), output)
    raise typer.Exit(report.exit_code)


@app.command()
def search(
    kind: SearchKind = typer.Argument(..., help="What to search for"),
    predicate: str = typer.Option(..., "--predicate", "-p", help="Named predicate: open-not-etale, etale, groupoid-quantale, inverse-quantal-frame, supported-not-stable, stably-supported"),
    max_size: int = typer.Option(4, "--max-size", "-n", help="Largest candidate size"),
    negate: bool = typer.Option(False, "--negate", help="Find candidates violating the predicate"),
    limit: Optional[int] = typer.Option(None, "--limit", help="Report at most this many findings"),
    bound: Optional[int] = typer.Option(None, "--bound", help="Enumeration bound (default QLAB_MAX_ENUM)"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o", help="Write each finding as a model file"),
):
    """Enumerate small models for which a predicate holds (or fails)."""
    if predicate not in PREDICATES[kind.value]:
        known = ", ".join(PREDICATES[kind.value])
        err_console.print(f"[red]✗[/red] Unknown {kind.value} predicate {predicate!r} (known: {known})")
        raise typer.Exit(2)
    with _guard():
        result = run_search(kind.value, predicate, max_size, negate=negate, limit=limit, bound=bound)
    if result.empty:
        console.print(f"none at this bound ({result.candidates} candidates)")
        return
    table = Table(title=f"{kind.value}: {'not ' if negate else ''}{predicate} (max size {max_size})")
    table.add_column("#", style="dim")
    table.add_column("Name", style="cyan", no_wrap=True)
    table.add_column("Checks", style="magenta")
    table.add_column("File", style="green")
    for k, finding in enumerate(result.findings):
        path = ""
        if output_dir is not None:
            path = str(dump_model(finding.model, output_dir / f"{kind.value}-{predicate}-{k}.{kind.value}.json"))
        table.add_row(str(k), finding.model.name, str(len(finding.report.checks)), path)
    console.print(table)
    console.print(f"{len(result.findings)} found among {result.candidates} candidates")


@app.command()
def export(
    source: str = typer.Argument(..., help="Model file, or the name of a catalog model"),
    dot: bool = typer.Option(False, "--dot", help="Graphviz DOT of the Hasse diagram or arrow graph"),
    as_json: bool = typer.Option(False, "--json", help="Canonical JSON of the model"),
    kind: Optional[Kind] = typer.Option(None, "--kind", "-k", help="Kind of catalog model"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write here instead of stdout"),
):
    """Export a model as DOT or canonical JSON."""
    if dot == as_json:
        err_console.print("[red]✗[/red] Pass exactly one of --dot and --json")
        raise typer.Exit(2)
    with _guard():
        mf = _resolve(source, kind)
        text = to_dot(build(mf)) if dot else canonical_json(mf)
    if output is None:
        typer.echo(text, nl=False)
    else:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text)
        err_console.print(f"[green]✓[/green] Exported {mf.kind} model: {output}")


@app.command("catalog")
def catalog_cmd(
    check: bool = typer.Option(False, "--validate", help="Validate every model against its expectation"),
    cross_check: bool = typer.Option(True, "--cross-check/--no-cross-check", help="Recompute frame-side where feasible"),
):
    """List the shipped models."""
    table = Table(title="qlab catalog")
    table.add_column("Name", style="cyan", no_wrap=True)
    table.add_column("Kind", style="magenta")
    table.add_column("Expect", style="yellow")
    table.add_column("Description")
    if check:
        table.add_column("Result", style="green")
    mismatches = 0
    with _guard():
        entries = qcatalog.list_catalog()
        for entry in entries:
            row = [entry.name, entry.kind, entry.expect.fails or "pass", entry.model.description]
            if check:
                report = qcatalog.check_entry(entry, cross_check=cross_check)
                matched = report.notes["as expected"]
                mismatches += not matched
                row.append("[green]✓[/green]" if matched else "[red]✗[/red]")
            table.add_row(*row)
    console.print(table)
    if mismatches:
        err_console.print(f"[red]✗[/red] {mismatches} model(s) did not behave as expected")
        raise typer.Exit(1)


if __name__ == "__main__":
    app()
