"""Points of finite frames.

Every finite frame is spatial: its points are its join-irreducibles and it is
isomorphic to the frame of up-sets of them, ordered by *reverse* inclusion.
Frames that already come from a space are presented by that space itself.
"""

import logging
from dataclasses import dataclass
from typing import Callable

from qlab.errors import CrossValidationError, LawViolation
from qlab.locale.space import ContinuousMap, FiniteSpace, SpaceFrame
from qlab.order.bits import bit, iter_bits
from qlab.order.lattice import FiniteFrame

logger = logging.getLogger(__name__)


@dataclass
class SpatialPresentation:
    """A frame together with a space whose opens it is isomorphic to.

    ``to_space`` and ``from_space`` are mutually inverse frame isomorphisms
    between elements of ``frame`` and up-set masks of ``space``.
    """

    frame: FiniteFrame
    space: FiniteSpace
    to_space: Callable[[int], int]
    from_space: Callable[[int], int]

    @property
    def is_identity(self) -> bool:
        return isinstance(self.frame, SpaceFrame)


def spatialize(frame: FiniteFrame, check: bool = True) -> SpatialPresentation:
    """Present ``frame`` as opens of the space of its join-irreducibles."""
    cached = frame.__dict__.get("_spatial_presentation")
    if cached is not None:
        return cached
    presentation = _spatialize(frame, check)
    frame.__dict__["_spatial_presentation"] = presentation
    return presentation


def _spatialize(frame: FiniteFrame, check: bool) -> SpatialPresentation:
    if isinstance(frame, SpaceFrame):
        return SpatialPresentation(frame, frame.space, lambda m: m, lambda m: m)
    if not frame.is_distributive:
        raise LawViolation("frame.distributive", frame.distributivity_witness(), f"{frame!r} is not a frame")
    gens = frame.generators
    up = []
    for j in gens:
        # point k lies above point j when the generator k is below j
        up.append(sum(bit(k) for k, h in enumerate(gens) if h & ~j == 0))
    labels = [frame.label(j) for j in gens]
    space = FiniteSpace(labels, up, name=f"pt({frame.name})" if frame.name else "")

    def from_space(mask: int) -> int:
        return frame.join_all(gens[k] for k in iter_bits(mask))

    if check:
        images = {frame.generator_set(e) for e in frame.elements}
        if len(images) != len(frame) or any(not space.is_open(m) for m in images):
            raise CrossValidationError(f"{frame!r} is not presented by its join-irreducibles")
    return SpatialPresentation(frame, space, frame.generator_set, from_space)


def point_map_from_inverse_image(
    inverse_image: Callable[[int], int], source: FiniteSpace, target: FiniteSpace
) -> ContinuousMap:
    """Recover the point map of a frame homomorphism between up-set frames.

    ``f(x)`` is the largest ``z`` with ``x`` in ``f*(up z)``.
    """
    values = []
    for x in range(len(source)):
        below = [z for z in range(len(target)) if inverse_image(target.up[z]) >> x & 1]
        top = [z for z in below if all(target.leq(w, z) for w in below)]
        if len(top) != 1:
            raise LawViolation("locale.map.frame_hom", x, f"point {x} has no well-defined image")
        values.append(top[0])
    return ContinuousMap(source, target, values)


def frame_of_space(space: FiniteSpace) -> SpaceFrame:
    """The frame of up-sets of ``space``, presented by ``space`` itself."""
    frame = space.frame
    spatialize(frame, check=False)
    return frame
