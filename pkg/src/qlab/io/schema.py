"""Model files.

A model file is a JSON document ``{"schema_version": 1, "name": ..., "model":
{...}}`` whose ``model`` carries a ``kind`` tag. Each kind can be given
either by explicit tables or by a ``construction`` naming one of the built-in
constructors. Tables index elements of lattices in their canonical order
and points of spaces in the order they are listed.
"""

import logging
from typing import Annotated, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from qlab import settings

logger = logging.getLogger(__name__)


class QlabBaseModel(BaseModel):
    """Base for every model-file section: unknown keys are errors."""

    model_config = ConfigDict(extra="forbid")


class SpaceModel(QlabBaseModel):
    """A finite T0 space: labelled points and a generating order ``x <= y``."""

    labels: List[str] = Field(description="One label per point")
    order: List[Tuple[int, int]] = Field(
        default_factory=list,
        description="Pairs (x, y) meaning x <= y; the reflexive transitive closure is taken",
    )
    name: str = ""

    @model_validator(mode="after")
    def check_indices(self):
        n = len(self.labels)
        for x, y in self.order:
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"order pair {(x, y)} refers to a point outside 0..{n - 1}")
        return self


class LatticeModel(QlabBaseModel):
    """A finite lattice as a family of subsets of ``range(ground)`` closed under
    intersection, each subset given as an integer bitmask."""

    kind: Literal["lattice", "frame"] = "lattice"
    ground: int = Field(ge=0, description="Size of the ground set")
    sets: List[int] = Field(description="Element masks; must contain the union of all of them")
    name: str = ""

    @field_validator("sets")
    @classmethod
    def check_masks(cls, v):
        if not v:
            raise ValueError("a lattice needs at least one element")
        if len(set(v)) != len(v):
            raise ValueError("element masks must be distinct")
        return v

    @model_validator(mode="after")
    def check_ground(self):
        bad = next((m for m in self.sets if m < 0 or m >> self.ground), None)
        if bad is not None:
            raise ValueError(f"mask {bad} does not fit in a ground set of size {self.ground}")
        return self


class LocaleMapModel(QlabBaseModel):
    """A map of finite locales given by its map of points."""

    kind: Literal["locale-map"] = "locale-map"
    source: SpaceModel
    target: SpaceModel
    values: List[int] = Field(description="Image of each source point")
    name: str = ""

    @model_validator(mode="after")
    def check_values(self):
        if len(self.values) != len(self.source.labels):
            raise ValueError("values needs one entry per source point")
        if any(not 0 <= v < len(self.target.labels) for v in self.values):
            raise ValueError("values refer to a point outside the target")
        return self


class GroupoidConstruction(QlabBaseModel):
    """A built-in groupoid: ``pair``, ``unit`` or ``cech`` over a space,
    ``group`` from a multiplication table, or ``disjoint_union`` of parts."""

    type: Literal["pair", "unit", "cech", "group", "cyclic", "disjoint_union"]
    space: Optional[SpaceModel] = None
    cover: Optional[List[int]] = Field(default=None, description="Open masks covering the space (cech)")
    table: Optional[List[List[int]]] = Field(default=None, description="Group multiplication table (group)")
    order: List[Tuple[int, int]] = Field(default_factory=list, description="Specialization order on a group")
    n: Optional[int] = Field(default=None, ge=1, description="Order of a cyclic group (cyclic)")
    parts: Optional[List["GroupoidModel"]] = None

    @model_validator(mode="after")
    def check_arguments(self):
        needed = {
            "pair": ("space",),
            "unit": ("space",),
            "cech": ("space", "cover"),
            "group": ("table",),
            "cyclic": ("n",),
            "disjoint_union": ("parts",),
        }[self.type]
        missing = [arg for arg in needed if getattr(self, arg) is None]
        if missing:
            raise ValueError(f"construction {self.type!r} needs {', '.join(missing)}")
        return self


class GroupoidModel(QlabBaseModel):
    """A finite groupoid, by construction or by its structure maps."""

    kind: Literal["groupoid"] = "groupoid"
    construction: Optional[GroupoidConstruction] = None
    objects: Optional[SpaceModel] = None
    arrows: Optional[SpaceModel] = None
    d: Optional[List[int]] = None
    r: Optional[List[int]] = None
    u: Optional[List[int]] = None
    i: Optional[List[int]] = None
    m: Optional[List[Tuple[int, int, int]]] = Field(default=None, description="Triples (g, h, gh)")
    name: str = ""

    @model_validator(mode="after")
    def check_presentation(self):
        tables = (self.objects, self.arrows, self.d, self.r, self.u, self.i, self.m)
        if self.construction is None and any(t is None for t in tables):
            raise ValueError("give either a construction or objects, arrows, d, r, u, i and m")
        if self.construction is not None and any(t is not None for t in tables):
            raise ValueError("a construction excludes explicit tables")
        return self


class QuantaleModel(QlabBaseModel):
    """A based quantale ``(A, Q)``, either ``O(G)`` of a groupoid or explicit
    tables indexing elements in canonical order."""

    kind: Literal["quantale"] = "quantale"
    of_groupoid: Optional[GroupoidModel] = None
    base: Optional[LatticeModel] = None
    lattice: Optional[LatticeModel] = None
    mul: Optional[List[List[int]]] = None
    star: Optional[List[int]] = None
    left: Optional[List[List[int]]] = Field(default=None, description="left[a][q]")
    right: Optional[List[List[int]]] = Field(default=None, description="right[q][a]")
    support: Optional[List[int]] = None
    reflexive: Optional[List[int]] = None
    name: str = ""

    @model_validator(mode="after")
    def check_presentation(self):
        tables = (self.base, self.lattice, self.mul, self.star, self.left, self.right)
        if self.of_groupoid is None and any(t is None for t in tables):
            raise ValueError("give either of_groupoid or base, lattice, mul, star, left and right")
        if self.of_groupoid is not None and any(t is not None for t in tables):
            raise ValueError("of_groupoid excludes explicit tables")
        if self.lattice is not None:
            n = len(self.lattice.sets)
            if len(self.mul) != n or any(len(row) != n for row in self.mul):
                raise ValueError(f"mul must be a {n} x {n} table")
            if len(self.star) != n:
                raise ValueError(f"star needs {n} entries")
        return self


class GLocaleModel(QlabBaseModel):
    """A left action, by construction (``canonical``, ``left_regular``,
    ``trivial``) or by anchor and action triples ``(g, x, g.x)``."""

    groupoid: GroupoidModel
    construction: Optional[Literal["canonical", "left_regular", "trivial"]] = None
    space: Optional[SpaceModel] = None
    anchor: Optional[List[int]] = None
    action: Optional[List[Tuple[int, int, int]]] = None
    name: str = ""

    @model_validator(mode="after")
    def check_presentation(self):
        if self.construction == "trivial":
            if self.space is None:
                raise ValueError("a trivial action needs a space")
        elif self.construction is None and None in (self.space, self.anchor, self.action):
            raise ValueError("give either a construction or space, anchor and action")
        return self


class ModuleModel(QlabBaseModel):
    """A module: the module of a G-locale, or explicit tables."""

    kind: Literal["module"] = "module"
    of_g_locale: Optional[GLocaleModel] = None
    quantale: Optional[QuantaleModel] = None
    lattice: Optional[LatticeModel] = None
    act: Optional[List[List[int]]] = Field(default=None, description="act[q][x]")
    base_act: Optional[List[List[int]]] = Field(default=None, description="base_act[a][x]")
    inner: Optional[List[List[int]]] = None
    support: Optional[List[int]] = None
    name: str = ""

    @model_validator(mode="after")
    def check_presentation(self):
        tables = (self.quantale, self.lattice, self.act, self.base_act)
        if self.of_g_locale is None and any(t is None for t in tables):
            raise ValueError("give either of_g_locale or quantale, lattice, act and base_act")
        return self


class BundleModel(QlabBaseModel):
    """A G-bundle; ``construction: quotient`` projects onto the orbit locale."""

    kind: Literal["bundle"] = "bundle"
    glocale: GLocaleModel
    construction: Optional[Literal["quotient"]] = None
    base: Optional[SpaceModel] = None
    projection: Optional[List[int]] = None
    name: str = ""

    @model_validator(mode="after")
    def check_presentation(self):
        if self.construction is None and (self.base is None or self.projection is None):
            raise ValueError("give either construction 'quotient' or base and projection")
        return self


class BibundleModel(QlabBaseModel):
    """A bilocale: commuting left and right actions on one space.

    ``construction: unit`` is the unit bibundle of ``left_groupoid``.
    """

    kind: Literal["bibundle"] = "bibundle"
    left_groupoid: GroupoidModel
    right_groupoid: Optional[GroupoidModel] = None
    construction: Optional[Literal["unit"]] = None
    space: Optional[SpaceModel] = None
    left_anchor: Optional[List[int]] = None
    left_action: Optional[List[Tuple[int, int, int]]] = Field(default=None, description="Triples (g, x, g.x)")
    right_anchor: Optional[List[int]] = None
    right_action: Optional[List[Tuple[int, int, int]]] = Field(default=None, description="Triples (x, h, x.h)")
    name: str = ""

    @model_validator(mode="after")
    def check_presentation(self):
        tables = (self.right_groupoid, self.space, self.left_anchor, self.left_action, self.right_anchor, self.right_action)
        if self.construction is None and any(t is None for t in tables):
            raise ValueError("give either construction 'unit' or both groupoids, the space and both actions")
        return self


class QLocaleModel(QlabBaseModel):
    """A principal Q-locale, from a principal bundle or as a module with
    a base frame and the table of ``tau``."""

    kind: Literal["q-locale"] = "q-locale"
    of_bundle: Optional[BundleModel] = None
    module: Optional[ModuleModel] = None
    base: Optional[LatticeModel] = None
    tau: Optional[List[int]] = None
    name: str = ""

    @model_validator(mode="after")
    def check_presentation(self):
        if self.of_bundle is None and None in (self.module, self.base, self.tau):
            raise ValueError("give either of_bundle or module, base and tau")
        return self


AnyModel = Annotated[
    Union[
        LatticeModel,
        LocaleMapModel,
        GroupoidModel,
        QuantaleModel,
        ModuleModel,
        BundleModel,
        BibundleModel,
        QLocaleModel,
    ],
    Field(discriminator="kind"),
]


class Expectation(QlabBaseModel):
    """What validating a catalog model should give."""

    passes: bool = True
    fails: Optional[str] = Field(default=None, description="Statement id of the first failing check")
    slow: bool = Field(default=False, description="Validation takes long enough to be left out of quick runs")

    @model_validator(mode="after")
    def check_consistent(self):
        if self.passes and self.fails is not None:
            raise ValueError("a passing model cannot name a failing statement")
        return self


class ModelFile(QlabBaseModel):
    """A versioned model file."""

    schema_version: int = Field(default=settings.SCHEMA_VERSION, description="Model file format version")
    name: str = ""
    description: str = ""
    model: AnyModel
    expect: Optional[Expectation] = Field(default=None, description="Expected validation outcome, for catalog models")

    @field_validator("schema_version")
    @classmethod
    def check_version(cls, v):
        if v != settings.SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {v}, expected {settings.SCHEMA_VERSION}")
        return v

    @property
    def kind(self) -> str:
        return self.model.kind


GroupoidConstruction.model_rebuild()
