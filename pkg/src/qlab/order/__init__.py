"""Finite sup-lattices, frames, their maps, tensors and quotients."""

from qlab.order.lattice import (
    FiniteFrame,
    FiniteSupLattice,
    canonical_form,
    chain,
    find_isomorphism,
    from_order,
    from_sets,
    one_point,
    powerset,
)
from qlab.order.maps import (
    MonotoneMap,
    SupHom,
    adjunction_witness,
    identity,
    join_preservation_witness,
    left_adjoint,
    right_adjoint,
)
from qlab.order.quotient import Quotient, quotient
from qlab.order.tensor import TensorLattice, bilinearity_witness, tensor

__all__ = [
    "FiniteFrame",
    "FiniteSupLattice",
    "MonotoneMap",
    "Quotient",
    "SupHom",
    "TensorLattice",
    "adjunction_witness",
    "bilinearity_witness",
    "canonical_form",
    "chain",
    "find_isomorphism",
    "from_order",
    "from_sets",
    "identity",
    "join_preservation_witness",
    "left_adjoint",
    "one_point",
    "powerset",
    "quotient",
    "right_adjoint",
    "tensor",
]
