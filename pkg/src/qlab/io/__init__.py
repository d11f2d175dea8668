"""Model files and exports."""

from qlab.io.codec import (
    bibundle_model,
    build,
    bundle_model,
    canonical_json,
    dump_model,
    g_locale_model,
    groupoid_model,
    lattice_model,
    load_model,
    model_file,
    module_model,
    parse_model,
    q_locale_model,
    quantale_model,
    space_model,
)
from qlab.io.dot import groupoid_dot, groupoid_object_dot, lattice_dot, space_dot, to_dot
from qlab.io.schema import ModelFile

__all__ = [
    "ModelFile",
    "bibundle_model",
    "build",
    "bundle_model",
    "canonical_json",
    "dump_model",
    "g_locale_model",
    "groupoid_dot",
    "groupoid_model",
    "groupoid_object_dot",
    "lattice_dot",
    "lattice_model",
    "load_model",
    "model_file",
    "module_model",
    "parse_model",
    "q_locale_model",
    "quantale_model",
    "space_dot",
    "space_model",
    "to_dot",
]
