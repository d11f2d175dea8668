"""Principal bibundles and their composition."""

import logging
from typing import Tuple

from qlab.bundle.bundle import GBundle, check_principal
from qlab.errors import HypothesisError
from qlab.groupoid.bilocale import Bilocale, check_bilocale, check_unit_laws, tensor_over
from qlab.report import Report

logger = logging.getLogger(__name__)


def bibundle_as_bundle(bibundle: Bilocale) -> GBundle:
    """The left action over the objects of the right groupoid, projecting by the right anchor."""
    B = bibundle
    return GBundle(B.left, B.right_groupoid.objects, B.right.anchor, name=B.name)


def check_principal_bibundle(bibundle: Bilocale, cross_check: bool = True) -> Report:
    """The actions commute and the left action is principal over the right objects."""
    report = check_bilocale(bibundle)
    if not report.passed:
        return report
    report.extend(check_principal(bibundle_as_bundle(bibundle), cross_check=cross_check))
    return report


def compose_bibundles(first: Bilocale, second: Bilocale, cross_check: bool = True) -> Tuple[Bilocale, Report]:
    """``X (x)_H Y`` for principal bibundles ``X: G -> H`` and ``Y: H -> K``.

    The composite is checked to be a principal bibundle and to satisfy the
    unit laws.
    """
    for part in (first, second):
        stage = check_principal_bibundle(part, cross_check=cross_check)
        if not stage.passed:
            raise HypothesisError("bibundle.principal", f"{part.name} is not a principal bibundle: {stage.first_failure.line()}")
    composite = tensor_over(first, second).result
    report = Report(subject=composite.name)
    with report.timed():
        principal = check_principal_bibundle(composite, cross_check=cross_check)
        report.extend(principal)
        report.check("bibundle.principal", principal.passed, None if principal.passed else principal.first_failure.statement)
        if principal.passed:
            report.extend(check_unit_laws(composite))
    logger.info("composed %s and %s: %d points", first.name, second.name, len(composite.space))
    return composite, report
