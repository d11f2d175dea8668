"""Registry of the statements qlab checks, keyed by stable ids.

Ids are ``<area>.<name>``; reports, logs and the CLI refer to statements
only through these ids. Structural errors raised while building objects
(:class:`~qlab.errors.LawViolation`, :class:`~qlab.errors.HypothesisError`)
use the same ids.
"""

from typing import Dict

STATEMENTS: Dict[str, str] = {
    # orders and lattices
    "order.indices": "order pairs refer to existing elements",
    "order.reflexive": "the order is reflexive",
    "order.antisymmetric": "the order is antisymmetric",
    "order.transitive": "the order is transitive",
    "lattice.nonempty": "the lattice has at least one element",
    "lattice.ground": "every element is a subset of the ground set",
    "lattice.top": "the union of all elements is an element",
    "lattice.meets": "the carrier is closed under meets",
    "lattice.closure": "the carrier is a closure system with joins, meets and a top",
    "lattice.member": "the value is an element of the lattice",
    "frame.distributive": "binary meets distribute over binary joins",
    "frame.spatial": "the frame is the frame of opens of its points",
    "map.total": "the map is defined everywhere",
    "map.preserves_joins": "the map preserves all joins, including the empty one",
    "map.monotone": "the map is monotone",
    "tensor.relations": "the map identifies every pair the tensor relations identify",
    "quotient.factor": "the map identifies every generating pair",
    # locales
    "space.points": "one up-set is given per point",
    "space.point": "the label names a point of the space",
    "locale.map.frame_hom": "the inverse image is a frame homomorphism",
    "locale.map.open": "the direct image exists and satisfies the Frobenius identity",
    "locale.map.surjective": "the inverse image is injective",
    "locale.square.commutes": "the square commutes",
    "locale.square.pullback": "the square is a pullback",
    "locale.coequalizer": "the bottom map is the coequalizer of the pair",
    "locale.coequalizer.factor": "the map coequalizes the pair and factors through the quotient",
    "pullback.codomain": "the maps share a codomain",
    "open.beck_chevalley": "pulling back along an open map commutes with direct images",
    "open.stable": "the pulled-back map is open",
    "open.reflection": "the bottom map is open with the expected direct image",
    "iso.left": "the left map of the square is an isomorphism",
    "iso.reflection": "the bottom-right map is an isomorphism",
    # groupoids
    "groupoid.d": "the domain map has one value per arrow, naming an object",
    "groupoid.r": "the range map has one value per arrow, naming an object",
    "groupoid.u": "the identity map has one value per object, naming an arrow",
    "groupoid.i": "the inverse map has one value per arrow, naming an arrow",
    "groupoid.d_u": "the domain of an identity arrow is its object",
    "groupoid.r_u": "the range of an identity arrow is its object",
    "groupoid.d_i": "the domain of an inverse is the range",
    "groupoid.r_i": "the range of an inverse is the domain",
    "groupoid.i_involution": "inversion is an involution",
    "groupoid.m_total": "every composable pair has a product",
    "groupoid.m_domain": "the domain of a product is the domain of its right factor",
    "groupoid.m_range": "the range of a product is the range of its left factor",
    "groupoid.m_assoc": "composition is associative",
    "groupoid.m_unit": "identity arrows are units for composition",
    "groupoid.m_inverse": "an arrow composed with its inverse is an identity",
    "groupoid.continuous": "structure maps are continuous",
    "groupoid.d_open": "the domain map is open",
    "groupoid.r_open": "the range map is open",
    "groupoid.m_open": "composition is open",
    "cech.cover": "the sets are opens covering the space",
    # actions
    "glocale.total": "every composable pair of arrow and point has exactly one translate",
    "glocale.anchor": "the anchor of a translated point is the range of the arrow",
    "glocale.pullback": "the action square over the range map is a pullback",
    "glocale.assoc": "acting twice is acting by the product",
    "glocale.unit": "identity arrows act trivially",
    "glocale.continuous": "the action is continuous",
    "glocale.open": "the action is open",
    "glocale.fully_open": "the anchor is open",
    "glocale.equivariant": "the map commutes with anchors and actions",
    "bilocale.space": "both actions are on the same space",
    "bilocale.groupoid": "the groupoids involved are the same",
    "bilocale.commute": "left and right actions commute and respect each other's anchors",
    "bilocale.induced": "the actions descend to the quotient",
    # quantales
    "quantale.tables": "the tables are complete and refer to existing elements",
    "quantale.join_preserving": "multiplication and involution preserve joins",
    "quantale.assoc": "multiplication is associative",
    "quantale.involution": "the involution is an anti-automorphism of order two",
    "quantale.bimodule": "the base acts unitally and associatively on both sides",
    "quantale.bimodule_mult": "the base actions are compatible with multiplication",
    "quantale.bimodule_involution": "the involution swaps the base actions",
    "quantale.support": "the support map satisfies the support laws",
    "quantale.equivariant": "the support is equivariant and the base is isomorphic to the right-sided elements",
    "quantale.sided_iso": "the base is isomorphic to the right-sided elements",
    "quantale.stable.product": "the support of a product lies below the support of the left factor",
    "quantale.stable.top": "the support of x times the top lies below the support of x",
    "quantale.stable.formula": "the support of a product is the support of the left factor restricted to the support of the right",
    "quantale.stable.equivalent": "the three stability conditions agree",
    "quantale.quantal_frame": "the quantale is a frame and the base actions are meets",
    "quantale.reflexive": "the reflexivity map is a frame homomorphism splitting both base embeddings",
    "quantale.multiplicative": "multiplication has a join-preserving right adjoint into the relative tensor",
    "quantale.unit_laws": "every element is the join of reflexive parts of factorizations",
    "quantale.inverse_laws": "the right-sided part of a base element is the join of elements with small square",
    "quantale.unital": "the quantale has a unit",
    "quantale.inverse_quantal_frame": "unital, stable, and the partial units cover the top",
    "quantale.groupoid": "the quantale is a groupoid quantale",
    "quantale.iso": "the two quantales are isomorphic",
    "quantale.roundtrip": "the groupoid of the quantale of a groupoid is the groupoid",
    # modules
    "module.tables": "the action tables are complete and refer to existing elements",
    "module.assoc": "the action is associative",
    "module.join_preserving": "the action preserves joins in both variables",
    "module.base_action": "the base acts unitally and associatively",
    "module.modgq1": "acting by a left base multiple is acting by the base after the quantale",
    "module.modgq2": "acting by a right base multiple is acting by the quantale after the base",
    "module.modgq3": "the base action is meet-linear",
    "module.base_meet": "the base action is meet with the anchor",
    "module.projections": "the projections of the relative tensor are module maps",
    "module.hilbert": "the inner product is sesquilinear and hermitian",
    "module.hilbertmod1": "the inner product is linear for the quantale on the left",
    "module.hilbertmod2": "the inner product is linear for the base on the left",
    "module.hilbertmod3": "the inner product preserves joins in its first variable",
    "module.hilbertmod4": "the inner product is hermitian",
    "module.hilbertmod5": "right multiplication moves into the second variable as the involution",
    "module.support": "the module has a support",
    "module.sppmod1": "the support of the top is the top",
    "module.sppmod2": "the support is bounded by the inner product",
    "module.sppmod4": "an element is supported on its support",
    "module.sppmod5": "an element is below its self-product restricted to itself",
    "module.support_formula": "the support is the quantale support of the inner square",
    "module.support_equivariant": "the support commutes with the base action",
    "module.support_corollary": "the base action by a support is the inner square applied to the top",
    "module.support_adjunction": "the support is left adjoint to the base action on the top",
    "module.support_unique": "the support is determined by the inner product",
    "module.stable.formula": "the support of q.x is the support of q restricted to the support of x",
    "module.stable.product": "the support of q.x lies below the support of q",
    "module.stable.top": "the support of q.top lies below the support of q",
    "module.stable.equivalent": "the three stability conditions agree",
    "module.homomorphism": "the inverse image of an equivariant map is a module homomorphism",
    "module.alpha_adjoint": "the action on the relative tensor has the expected right adjoint",
    # Q-locales
    "qlocale.Q1": "the right adjoint of the action preserves joins",
    "qlocale.Q2": "every element is the join of the supported parts of its factorizations",
    "qlocale.beck_chevalley": "acting on the top factors through the support",
    "qlocale.anchor": "the recovered anchor has the module support as direct image",
    "qlocale.action": "the recovered action has the right adjoint of the module action as inverse image",
    "qlocale.morphism": "the map is a morphism of Q-locales",
    "qlocale.P1": "the projection is an open surjection with the given direct image",
    "qlocale.P2": "the direct image is invariant under the action",
    "qlocale.P3": "the comparison map of relative tensors is an isomorphism",
    "qlocale.bridge": "the comparison map is the pairing map of the associated bundle",
    # bundles
    "bundle.invariant": "the projection is invariant under the action",
    "bundle.principal": "the bundle is principal",
    "bundle.groupoid": "the bundles are over the same groupoid",
    "bundle.over": "the map lies over the base",
    "bundle.induced": "the map descends to the bases",
    "principal.open_surjection": "the projection is an open surjection",
    "principal.pairing_iso": "the pairing map onto the fibred square is an isomorphism",
    "principal.theta_involution": "theta turns swaps into inverses",
    "principal.theta_equivariant": "theta intertwines the action with composition",
    "principal.theta_open": "theta is open",
    "principal.theta_pullback": "theta fits a pullback square over the anchor and range",
    "principal.orbits": "the base is the orbit locale",
    "principal.inner_support": "the support of an inner product is the meet of supports",
    "bundle.pullback": "the pulled-back bundle is principal with the expected universal property",
    "bundle.induced_square": "the square of an equivariant map over its induced map is a pullback",
    "bundle.iso_transfer": "an equivariant map is an isomorphism iff its induced map is",
    "bundle.open_transfer": "an equivariant map is open iff its induced map is",
    "bundle.two_pullbacks": "a square of bundles is a pullback iff its base square is",
    "bibundle.principal": "the composite is a principal bibundle",
    "bibundle.unit": "composing with a unit bibundle changes nothing up to isomorphism",
    "bibundle.assoc": "composition of bibundles is associative up to isomorphism",
    "roundtrip.bundle": "bundle to q-locale and back is the identity",
    "roundtrip.qlocale": "q-locale to bundle and back is the identity",
}


def describe(statement: str) -> str:
    return STATEMENTS.get(statement, "")
