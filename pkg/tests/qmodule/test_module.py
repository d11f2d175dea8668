"""Tests for modules over groupoid quantales."""

import pytest

from qlab.bundle import principal_bundle, quotient_bundle
from qlab.errors import HypothesisError, LawViolation
from qlab.groupoid import EquivariantMap, GLocale, canonical_action, left_regular_action
from qlab.locale import FiniteSpace
from qlab.qmodule import (
    QModule,
    check_equivariant_module_map,
    check_g_module,
    check_inner,
    check_module,
    check_module_support,
    check_projection_formulas,
    check_stability_equivalences,
    check_stably_supported,
    check_theorem_support_formulas,
    find_supports,
    module_of_g_locale,
    with_support,
)


@pytest.fixture(scope="module")
def objects_module(pair_s):
    """``O(S)`` over ``O(Pair(S))`` with the inner product of the bundle over the point."""
    return principal_bundle(quotient_bundle(canonical_action(pair_s))).module


class TestModuleOfGLocale:
    @pytest.mark.parametrize("make", [canonical_action, left_regular_action], ids=["objects", "arrows"])
    def test_module_laws(self, pair_s, make):
        report = check_g_module(make(pair_s))
        assert report.passed, str(report)
        assert report.holds("module.alpha_adjoint")

    def test_open_anchor_gives_a_support(self, pair_s):
        M = module_of_g_locale(canonical_action(pair_s))
        assert M.has_support
        assert M.spp(M.top) == M.quantale.base.top

    def test_closed_anchor_gives_no_support(self, unit_s):
        # the point sent to the bottom of the Sierpinski space
        L = GLocale(unit_s, FiniteSpace.point(), [0], {(0, 0): 0})
        M = module_of_g_locale(L)
        assert not M.has_support
        with pytest.raises(HypothesisError) as excinfo:
            M.spp(M.top)
        assert excinfo.value.hypothesis == "module.support"

    def test_no_inner_product_without_a_bundle(self, pair_s):
        M = module_of_g_locale(canonical_action(pair_s))
        with pytest.raises(HypothesisError, match="no inner product"):
            M.inner(M.top, M.top)

    def test_projection_formulas(self, pair_s):
        assert check_projection_formulas(module_of_g_locale(left_regular_action(pair_s))).passed

    def test_equivariant_map_gives_a_homomorphism(self, pair2):
        source, target = left_regular_action(pair2), canonical_action(pair2)
        f = EquivariantMap(source, target, pair2.r, name="r")
        report = check_equivariant_module_map(f, module_of_g_locale(source), module_of_g_locale(target))
        assert report.passed, str(report)


class TestSupportedModule:
    def test_stably_supported(self, objects_module):
        report = check_stably_supported(objects_module)
        assert report.passed, str(report)
        assert report.holds("module.hilbertmod4")
        assert report.holds("module.sppmod5")

    def test_stability_conditions_agree(self, objects_module):
        assert check_stability_equivalences(objects_module).passed

    def test_support_formulas(self, objects_module):
        report = check_theorem_support_formulas(objects_module)
        assert report.passed, str(report)
        assert report.holds("module.support_unique")

    def test_support_is_the_only_support(self, objects_module):
        M = objects_module
        assert find_supports(M) == [tuple(M.spp(x) for x in M.lattice.elements)]

    def test_replacing_the_support(self, objects_module):
        M = objects_module
        top = M.quantale.base.top
        broken = with_support(M, [top] * len(M.lattice), name="constant")
        report = check_module_support(broken)
        assert not report.passed
        assert report.first_failure.statement == "module.sppmod2"
        assert report.first_failure.witness == M.lattice.bottom

    def test_support_formulas_need_stability(self, objects_module):
        broken = with_support(objects_module, [objects_module.quantale.base.top] * len(objects_module.lattice))
        with pytest.raises(HypothesisError):
            check_theorem_support_formulas(broken)


class TestTables:
    def test_tables_rebuild_the_module(self, objects_module):
        M = objects_module
        rebuilt = QModule.from_tables(M.quantale, M.lattice, **M.tables())
        assert check_module(rebuilt).passed
        assert check_inner(rebuilt).passed
        assert all(rebuilt.spp(x) == M.spp(x) for x in M.lattice.elements)

    def test_partial_action_table(self, objects_module):
        M = objects_module
        tables = M.tables()
        tables["act"] = tables["act"][:-1]
        with pytest.raises(LawViolation) as excinfo:
            QModule.from_tables(M.quantale, M.lattice, **tables)
        assert excinfo.value.law == "module.tables"
