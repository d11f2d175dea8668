"""Full validator suites, one per kind of model.

``validate(obj)`` runs everything qlab knows how to check about ``obj`` and
returns a single :class:`~qlab.report.Report`. Properties that are worth
knowing but are not requirements (étale or not, unital or not) are recorded
as notes.
"""

import logging
from functools import singledispatch

from qlab.bundle.bibundle import check_principal_bibundle
from qlab.bundle.bundle import GBundle, check_principal
from qlab.correspondence.principal import PrincipalQLocale, check_principal_q_locale
from qlab.correspondence.qlocale import check_q_locale
from qlab.errors import CrossValidationError, HypothesisError, LawViolation
from qlab.groupoid.bilocale import Bilocale
from qlab.groupoid.groupoid import FiniteOpenGroupoid, is_etale, validate_groupoid
from qlab.io.codec import build
from qlab.io.schema import ModelFile
from qlab.locale.maps import LocaleMap
from qlab.locale.spatial import spatialize
from qlab.order.lattice import FiniteFrame, FiniteSupLattice
from qlab.qmodule.module import (
    QModule,
    check_inner,
    check_module,
    check_module_support,
    check_stability_equivalences,
    check_stably_supported,
    check_theorem_support_formulas,
)
from qlab.quantale.groupoid_quantale import check_groupoid_roundtrip, check_quantale_roundtrip
from qlab.quantale.quantale import BasedQuantale, is_groupoid_quantale
from qlab.report import Report

logger = logging.getLogger(__name__)


@singledispatch
def validate(obj, cross_check: bool = True) -> Report:
    raise TypeError(f"no validator for {type(obj).__name__}")


@validate.register
def _(lattice: FiniteSupLattice, cross_check: bool = True) -> Report:
    report = Report(subject=lattice.name or "lattice")
    with report.timed():
        report.check("lattice.closure", True, detail=f"{len(lattice)} elements")
        report.note("join-irreducibles", len(lattice.generators))
        report.note("distributive", lattice.is_distributive)
        if isinstance(lattice, FiniteFrame):
            report.witness("frame.distributive", lattice.distributivity_witness())
            try:
                points = spatialize(lattice, check=cross_check)
            except CrossValidationError as exc:
                report.check("frame.spatial", False, str(exc))
            else:
                report.check("frame.spatial", True, detail=f"{len(points.space)} points")
    return report


@validate.register
def _(f: LocaleMap, cross_check: bool = True) -> Report:
    report = Report(subject=f.name or "locale map")
    with report.timed():
        report.witness("locale.map.frame_hom", f.frame_hom_witness())
        if not report.passed:
            return report
        opened = f.is_open(cross_check=cross_check)
        report.note("open", opened.open)
        if not opened.open:
            report.note("open witness", opened.witness)
        report.note("semiopen", f.is_semiopen())
        report.note("surjective", f.is_surjective(cross_check=cross_check))
        if opened.open:
            report.witness("locale.map.open", f.frobenius_witness(opened.direct_image))
    return report


@validate.register
def _(groupoid: FiniteOpenGroupoid, cross_check: bool = True) -> Report:
    report = validate_groupoid(groupoid, cross_check=cross_check)
    if not report.passed:
        return report
    etale, witness = is_etale(groupoid)
    report.note("etale", etale)
    if not etale:
        report.note("etale witness", witness)
    with report.bounded("quantale.roundtrip"):
        report.extend(check_groupoid_roundtrip(groupoid, cross_check=cross_check))
    return report


@validate.register
def _(quantale: BasedQuantale, cross_check: bool = True) -> Report:
    report = Report(subject=quantale.name or "quantale")
    with report.bounded("quantale.iso"):
        report.extend(check_quantale_roundtrip(quantale, cross_check=cross_check))
    report.note("elements", len(quantale.lattice))
    report.note("unital", quantale.unit is not None)
    return report


@validate.register
def _(module: QModule, cross_check: bool = True) -> Report:
    M = module
    report = check_module(M)
    if not report.passed:
        return report
    if M.has_inner:
        report.extend(check_inner(M))
    if not (M.has_inner and M.has_support):
        report.note("supported", False)
        return report
    report.extend(check_module_support(M))
    stability = check_stability_equivalences(M)
    report.checks.append(stability["module.stable.equivalent"])
    stable = report.passed and stability.holds("module.stable.product")
    report.note("stably supported", stable)
    if stable:
        report.extend(check_theorem_support_formulas(M))
    if stable and report.passed and is_groupoid_quantale(M.quantale, cross_check=cross_check).passed:
        report.extend(check_q_locale(M))
    return report


@validate.register
def _(bundle: GBundle, cross_check: bool = True) -> Report:
    return check_principal(bundle, cross_check=cross_check)


@validate.register
def _(bibundle: Bilocale, cross_check: bool = True) -> Report:
    return check_principal_bibundle(bibundle, cross_check=cross_check)


@validate.register
def _(qlocale: PrincipalQLocale, cross_check: bool = True) -> Report:
    M = qlocale.module
    report = Report(subject=qlocale.name or "principal Q-locale")
    if M.has_inner and M.has_support:
        report.extend(check_stably_supported(M))
        if report.passed:
            report.extend(check_q_locale(M))
        if not report.passed:
            return report
    else:
        report.note("supported", False)
    report.extend(check_principal_q_locale(qlocale))
    return report


def validate_or_raise(obj, cross_check: bool = True) -> Report:
    """:func:`validate`, raising :class:`~qlab.errors.LawViolation` on the first failure."""
    report = validate(obj, cross_check=cross_check)
    failure = report.first_failure
    if failure is not None:
        raise LawViolation(failure.statement, failure.witness, f"{report.subject}: {failure.line()}")
    return report


def validate_model(model_file: ModelFile, cross_check: bool = True) -> Report:
    """Build and validate a model file.

    A structural error while building counts as the failure of the law or
    hypothesis it names, with the error's witness.
    """
    subject = model_file.name or model_file.kind
    try:
        report = validate(build(model_file), cross_check=cross_check)
    except LawViolation as exc:
        report = Report(subject=subject)
        report.check(exc.law, False, exc.witness, detail=str(exc))
    except HypothesisError as exc:
        report = Report(subject=subject)
        report.check(exc.hypothesis, False, None, detail=str(exc))
    if model_file.name:
        report.subject = model_file.name
    return report
