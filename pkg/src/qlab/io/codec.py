"""Reading, writing and building model files.

``load_model`` parses and validates a file, ``build`` turns a model section
into qlab objects, and the ``*_model`` functions go the other way. JSON is
written in canonical form (sorted keys, fixed indentation), so encoding a
decoded canonical file reproduces it byte for byte.
"""

import json
import logging
from pathlib import Path
from typing import Any, Union

from pydantic import ValidationError

from qlab.bundle.bundle import GBundle, PrincipalGBundle, principal_bundle, quotient_bundle
from qlab.correspondence.principal import PrincipalQLocale, principal_q_locale_candidate
from qlab.errors import LawViolation, SchemaError
from qlab.groupoid.action import GLocale, RightGLocale, canonical_action, left_regular_action, trivial_action
from qlab.groupoid.bilocale import Bilocale, unit_bilocale
from qlab.groupoid.groupoid import (
    FiniteOpenGroupoid,
    cech_groupoid,
    cyclic_group,
    disjoint_union,
    group_groupoid,
    pair_groupoid,
    unit_groupoid,
)
from qlab.io.schema import (
    BibundleModel,
    BundleModel,
    GLocaleModel,
    GroupoidConstruction,
    GroupoidModel,
    LatticeModel,
    LocaleMapModel,
    ModelFile,
    ModuleModel,
    QLocaleModel,
    QuantaleModel,
    SpaceModel,
)
from qlab.locale.maps import LocaleMap
from qlab.locale.space import ContinuousMap, FiniteSpace
from qlab.order.lattice import FiniteFrame, FiniteSupLattice
from qlab.qmodule.action import module_of_g_locale
from qlab.qmodule.module import QModule
from qlab.quantale.groupoid_quantale import quantale_of_groupoid
from qlab.quantale.quantale import BasedQuantale

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


# -- files ----------------------------------------------------------------------------


def parse_model(text: str, source: str = "<string>") -> ModelFile:
    """Parse and validate model-file JSON; errors carry their location."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg)
    try:
        return ModelFile.model_validate(data)
    except ValidationError as exc:
        error = exc.errors()[0]
        location = ".".join(str(part) for part in error["loc"])
        raise SchemaError(f"{source}:{location or '<root>'}", error["msg"])


def load_model(path: PathLike) -> ModelFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(str(path), str(exc))
    logger.debug("loading %s", path)
    return parse_model(text, source=str(path))


def canonical_json(model_file: ModelFile) -> str:
    data = model_file.model_dump(mode="json", exclude_none=True, exclude_defaults=False)
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def dump_model(model_file: ModelFile, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(model_file))
    logger.info("wrote %s model to %s", model_file.kind, path)
    return path


# -- building objects -------------------------------------------------------------------


def build_space(model: SpaceModel) -> FiniteSpace:
    return FiniteSpace.from_order(model.labels, model.order, name=model.name)


def build_lattice(model: LatticeModel, frame: bool = False) -> FiniteSupLattice:
    if frame or model.kind == "frame":
        return FiniteFrame(model.sets, model.ground, name=model.name)
    return FiniteSupLattice(model.sets, model.ground, name=model.name)


def build_groupoid(model: GroupoidModel) -> FiniteOpenGroupoid:
    c = model.construction
    if c is not None:
        return _construct_groupoid(c, model.name)
    m = {(g, h): gh for g, h, gh in model.m}
    return FiniteOpenGroupoid(
        build_space(model.objects), build_space(model.arrows), model.d, model.r, model.u, model.i, m, name=model.name
    )


def _construct_groupoid(c: GroupoidConstruction, name: str) -> FiniteOpenGroupoid:
    if c.type == "pair":
        return pair_groupoid(build_space(c.space), name=name)
    if c.type == "unit":
        return unit_groupoid(build_space(c.space), name=name)
    if c.type == "cech":
        return cech_groupoid(build_space(c.space), c.cover, name=name)
    if c.type == "group":
        return group_groupoid(c.table, c.order, name=name or "G")
    if c.type == "cyclic":
        G = cyclic_group(c.n)
        G.name = name or G.name
        return G
    parts = [build_groupoid(p) for p in c.parts]
    result = parts[0]
    for part in parts[1:]:
        result = disjoint_union(result, part)
    result.name = name or result.name
    return result


def build_quantale(model: QuantaleModel) -> BasedQuantale:
    if model.of_groupoid is not None:
        return quantale_of_groupoid(build_groupoid(model.of_groupoid), check=False)
    return BasedQuantale.from_tables(
        build_lattice(model.base, frame=True),
        build_lattice(model.lattice),
        model.mul,
        model.star,
        model.left,
        model.right,
        model.support,
        model.reflexive,
        name=model.name,
    )


def build_g_locale(model: GLocaleModel) -> GLocale:
    G = build_groupoid(model.groupoid)
    if model.construction == "canonical":
        return canonical_action(G)
    if model.construction == "left_regular":
        return left_regular_action(G)
    if model.construction == "trivial":
        return trivial_action(G, build_space(model.space), name=model.name)
    action = {(g, x): y for g, x, y in model.action}
    return GLocale(G, build_space(model.space), model.anchor, action, name=model.name)


def build_module(model: ModuleModel) -> QModule:
    if model.of_g_locale is not None:
        return module_of_g_locale(build_g_locale(model.of_g_locale), name=model.name)
    return QModule.from_tables(
        build_quantale(model.quantale),
        build_lattice(model.lattice, frame=True),
        model.act,
        model.base_act,
        model.inner,
        model.support,
        name=model.name,
    )


def build_bundle(model: BundleModel) -> GBundle:
    glocale = build_g_locale(model.glocale)
    if model.construction == "quotient":
        bundle = quotient_bundle(glocale)
    else:
        bundle = GBundle(glocale, build_space(model.base), model.projection, name=model.name)
    if model.name:
        bundle.name = model.name
    return bundle


def build_bibundle(model: BibundleModel) -> Bilocale:
    G = build_groupoid(model.left_groupoid)
    if model.construction == "unit":
        return unit_bilocale(G)
    H = build_groupoid(model.right_groupoid)
    space = build_space(model.space)
    left = GLocale(G, space, model.left_anchor, {(g, x): y for g, x, y in model.left_action}, name=model.name)
    right = RightGLocale(H, space, model.right_anchor, {(x, h): y for x, h, y in model.right_action}, name=model.name)
    return Bilocale(left, right, name=model.name)


def build_q_locale(model: QLocaleModel) -> PrincipalQLocale:
    if model.of_bundle is not None:
        bundle = build_bundle(model.of_bundle)
        try:
            source: Union[GBundle, PrincipalGBundle] = principal_bundle(bundle)
        except LawViolation as exc:
            logger.warning("%s is not principal (%s); its module has no inner product", bundle.name, exc.law)
            source = bundle
        return principal_q_locale_candidate(source, name=model.name)
    module = build_module(model.module)
    base = build_lattice(model.base, frame=True)
    elements, targets = module.lattice.elements, base.elements
    try:
        tau = {elements[i]: targets[v] for i, v in enumerate(model.tau)}
    except IndexError:
        raise SchemaError("model.tau", "tau refers to an element outside the base")
    if len(tau) != len(elements):
        raise SchemaError("model.tau", f"tau needs {len(elements)} entries")
    return PrincipalQLocale(module, base, tau.__getitem__, name=model.name)


def build_locale_map(model: LocaleMapModel) -> LocaleMap:
    cmap = ContinuousMap(build_space(model.source), build_space(model.target), model.values, name=model.name)
    return LocaleMap.of(cmap, name=model.name)


_BUILDERS = {
    "lattice": build_lattice,
    "frame": build_lattice,
    "locale-map": build_locale_map,
    "groupoid": build_groupoid,
    "quantale": build_quantale,
    "module": build_module,
    "bundle": build_bundle,
    "bibundle": build_bibundle,
    "q-locale": build_q_locale,
}


def build(model_file: ModelFile) -> Any:
    """The qlab object a model file describes.

    Structural problems found while building (a non-monotone map, a table
    that is not total) surface as :class:`~qlab.errors.LawViolation`.
    """
    model = model_file.model
    obj = _BUILDERS[model.kind](model)
    if not getattr(obj, "name", None) and model_file.name:
        try:
            obj.name = model_file.name
        except AttributeError:
            pass
    return obj


# -- describing objects -------------------------------------------------------------------


def space_model(space: FiniteSpace) -> SpaceModel:
    return SpaceModel(labels=[str(label) for label in space.labels], order=space.hasse(), name=space.name)


def lattice_model(lattice: FiniteSupLattice) -> LatticeModel:
    kind = "frame" if isinstance(lattice, FiniteFrame) else "lattice"
    return LatticeModel(kind=kind, ground=lattice.ground, sets=list(lattice.elements), name=lattice.name)


def groupoid_model(groupoid: FiniteOpenGroupoid) -> GroupoidModel:
    G = groupoid
    return GroupoidModel(
        objects=space_model(G.objects),
        arrows=space_model(G.arrows),
        d=list(G.d),
        r=list(G.r),
        u=list(G.u),
        i=list(G.i),
        m=[(g, h, gh) for (g, h), gh in sorted(G.m.items())],
        name=G.name,
    )


def quantale_model(quantale: BasedQuantale) -> QuantaleModel:
    Q = quantale
    return QuantaleModel(base=lattice_model(Q.base), lattice=lattice_model(Q.lattice), name=Q.name, **Q.tables())


def g_locale_model(glocale: GLocale) -> GLocaleModel:
    L = glocale
    return GLocaleModel(
        groupoid=groupoid_model(L.groupoid),
        space=space_model(L.space),
        anchor=list(L.anchor),
        action=[(g, x, y) for (g, x), y in sorted(L.action.items())],
        name=L.name,
    )


def module_model(module: QModule) -> ModuleModel:
    M = module
    return ModuleModel(
        quantale=quantale_model(M.quantale), lattice=lattice_model(M.lattice), name=M.name, **M.tables()
    )


def bundle_model(bundle: GBundle) -> BundleModel:
    B = bundle
    return BundleModel(
        glocale=g_locale_model(B.glocale), base=space_model(B.base), projection=list(B.projection), name=B.name
    )


def bibundle_model(bibundle: Bilocale) -> BibundleModel:
    B = bibundle
    return BibundleModel(
        left_groupoid=groupoid_model(B.left_groupoid),
        right_groupoid=groupoid_model(B.right_groupoid),
        space=space_model(B.space),
        left_anchor=list(B.left.anchor),
        left_action=[(g, x, y) for (g, x), y in sorted(B.left.action.items())],
        right_anchor=list(B.right.anchor),
        right_action=[(x, h, y) for (x, h), y in sorted(B.right.action.items())],
        name=B.name,
    )


def q_locale_model(qlocale: PrincipalQLocale) -> QLocaleModel:
    L = qlocale
    return QLocaleModel(
        module=module_model(L.module),
        base=lattice_model(L.base),
        tau=[L.base.index(L.tau(x)) for x in L.module.lattice.elements],
        name=L.name,
    )


def model_file(section, name: str = "", description: str = "") -> ModelFile:
    return ModelFile(name=name or getattr(section, "name", ""), description=description, model=section)
