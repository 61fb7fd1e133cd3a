"""ℋ² of a matched pair U𝐠⋊kG(T), kG(N) from Lie and finite-group cohomology.

The Kac sequence gives an injection

    H²(𝐠)^{G(T)} / H²(𝐠)^{G(N)⋊G(T)}  ⊕  H²(G(N)) / H²(G(N))^{G(T)}  →  ℋ²

which is an isomorphism when |G(T)| and |G(N)| are coprime. The Lie part is
computed over ℚ, the group part with coefficients ℤ/m.
"""

import itertools
import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, Optional

import numpy as np

try:
    from ..barcomplex import group_cohomology, pullback_matrix
    from ..core.errors import ActionsIncompatible, MatchedPairError
    from ..core.models import Method6Report, PresentationSummary
    from ..core.size_guard import SizeGuard
    from ..exactlin import RationalMatrix, presented_invariants, presented_quotient, span_quotient, trivial_presentation
    from ..fingroup import FiniteGroup, cyclic, semidirect_pair
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from barcomplex import group_cohomology, pullback_matrix
    from core.errors import ActionsIncompatible, MatchedPairError
    from core.models import Method6Report, PresentationSummary
    from core.size_guard import SizeGuard
    from exactlin import RationalMatrix, presented_invariants, presented_quotient, span_quotient, trivial_presentation
    from fingroup import FiniteGroup, cyclic, semidirect_pair

from .algebra import (
    LieAlgebraData,
    LieGroupAction,
    abelian,
    action_from_generators,
    conjugation_action,
    permutation_matrix,
    sl_structure_constants,
)
from .chevalley_eilenberg import chevalley_eilenberg, induced_action_on_H, invariants, lie_cohomology

logger = logging.getLogger(__name__)


@dataclass
class Method6Configuration:
    """𝐠 = P(T) with G(T) acting on G(N) by automorphisms and both groups acting on 𝐠"""
    name: str
    algebra: LieAlgebraData
    G_T: FiniteGroup
    G_N: FiniteGroup
    group_action: np.ndarray  # |G_T| × |G_N|, entry [t, n] = t▷n
    lie_action_T: LieGroupAction
    lie_action_N: LieGroupAction


def check_actions_compatible(config: Method6Configuration) -> None:
    """ρ_T(t)·ρ_N(n)·ρ_T(t)⁻¹ = ρ_N(t▷n), so that together they give G(N)⋊G(T) → Aut(𝐠)"""
    try:
        semidirect_pair(config.G_T, config.G_N, lambda t, n: int(config.group_action[t, n]))
    except MatchedPairError as exc:
        raise ActionsIncompatible(f"G(T) does not act on G(N) by automorphisms: {exc.message}", exc.witness)
    for t, n in itertools.product(range(config.G_T.order), range(config.G_N.order)):
        rho_t = config.lie_action_T.matrix(t)
        lhs = rho_t @ config.lie_action_N.matrix(n) @ rho_t.inverse()
        if lhs != config.lie_action_N.matrix(int(config.group_action[t, n])):
            raise ActionsIncompatible(
                f"the actions on 𝐠 do not combine into an action of G(N)⋊G(T) at (t={t}, n={n})",
                {"t": t, "n": n},
            )


def _group_action_on_h2(config: Method6Configuration, m: int, guard: Optional[SizeGuard]):
    h2 = group_cohomology(config.G_N, m, 2, guard=guard)
    matrices = []
    for t in range(config.G_T.order):
        images = config.group_action[t]
        P = pullback_matrix(config.G_N, config.G_N, images, 2)
        matrices.append(h2.reduce_many((P @ h2.generators) % m) if h2.rank else np.zeros((0, 0), dtype=np.int64))
    return h2, matrices


def method6(config: Method6Configuration, m: int, guard: Optional[SizeGuard] = None) -> Method6Report:
    check_actions_compatible(config)
    order_T, order_N = config.G_T.order, config.G_N.order

    print(f"   🧮 Chevalley–Eilenberg complex of {config.algebra.name or '𝐠'} (dim {config.algebra.dimension})")
    complex_ = chevalley_eilenberg(config.algebra, n_max=min(3, config.algebra.dimension))
    h2_lie = lie_cohomology(complex_, 2) if complex_.max_degree >= 2 else None
    h2_dim = h2_lie.dimension if h2_lie else 0
    if h2_lie is not None and h2_dim:
        on_T = induced_action_on_H(complex_, config.lie_action_T, 2, h2_lie)
        on_N = induced_action_on_H(complex_, config.lie_action_N, 2, h2_lie)
        T_inv = invariants(on_T, h2_dim).cols
        N_inv = invariants(on_N, h2_dim).cols
        full_inv = invariants(on_T + on_N, h2_dim).cols
    else:
        T_inv = N_inv = full_inv = 0

    print(f"   🧮 H²({config.G_N.name}, ℤ/{m}) and its {config.G_T.name}-invariants")
    h2_group, group_matrices = _group_action_on_h2(config, m, guard)
    invariant_generators = presented_invariants(h2_group, group_matrices)
    quotient = presented_quotient(h2_group, invariant_generators)
    invariant_part = _subgroup_presentation(h2_group, invariant_generators)

    coprime = gcd(order_T, order_N) == 1
    lie_quotient = T_inv - full_inv
    conclusion = [
        f"H²({config.algebra.name or '𝐠'}) has dimension {h2_dim} over ℚ",
        f"H²(𝐠) invariant dimensions under G(T), G(N), G(N)⋊G(T): {T_inv}, {N_inv}, {full_inv}",
        "H^{1,2}(G, 𝐠) ≅ H¹(G, H²(𝐠)) vanishes: H²(𝐠) is uniquely divisible and G is finite",
    ]
    if h2_dim == 0:
        conclusion.append(f"H²({config.algebra.name or '𝐠'}) = 0, so the Lie part of ℋ² vanishes")
    if coprime:
        conclusion.append(
            f"|G(T)| = {order_T} and |G(N)| = {order_N} are coprime, so Φ is an isomorphism: "
            f"ℋ²(T,N) ≅ k^{lie_quotient} ⊕ ({quotient.describe()}) with the finite part computed in ℤ/{m}"
        )
    else:
        conclusion.append(
            f"|G(T)| = {order_T} and |G(N)| = {order_N} are not coprime: "
            "the sequence does not determine ℋ²(T,N) here, only the pieces are reported"
        )
    for line in conclusion:
        logger.info(f"{config.name}: {line}")

    return Method6Report(
        configuration=config.name,
        modulus=m,
        lie_dimension=config.algebra.dimension,
        h2_lie_dim=h2_dim,
        h2_lie_T_invariant_dim=T_inv,
        h2_lie_N_invariant_dim=N_inv,
        h2_lie_full_invariant_dim=full_inv,
        h2_GN=PresentationSummary.of(f"H^2({config.G_N.name})", h2_group),
        h2_GN_T_invariant=PresentationSummary.of(f"H^2({config.G_N.name})^{config.G_T.name}", invariant_part),
        lie_quotient_dim=lie_quotient,
        group_quotient=PresentationSummary.of("group quotient", quotient),
        orders_coprime=coprime,
        phi_is_isomorphism=coprime,
        conclusion=conclusion,
    )


def _subgroup_presentation(presentation, generators):
    """The subgroup generated by coordinate columns, as a presentation of its own"""
    m = presentation.modulus
    if presentation.rank == 0:
        return trivial_presentation(presentation.ambient_dim, m)
    return span_quotient(presentation.embed(generators), np.zeros((presentation.rank, 0), dtype=np.int64), m)


def _rational(rows) -> RationalMatrix:
    return RationalMatrix.from_rows(rows)


def method6_examples() -> Dict[str, Method6Configuration]:
    """Swap on k², the triangle symmetries on k³, and sl₃ with C₂ and C₃ acting by conjugation"""
    C1, C2, C3 = cyclic(1), cyclic(2), cyclic(3)
    examples = {}

    # k[x,y] with C₂ swapping the variables, entered with the roles of T and N exchanged:
    # the Lie algebra sits on the side with trivial group-likes.
    plane = abelian(2)
    swap = _rational(permutation_matrix([1, 0]))
    examples["swap_plane"] = Method6Configuration(
        name="swap_plane",
        algebra=plane,
        G_T=C1,
        G_N=C2,
        group_action=np.zeros((1, 2), dtype=np.int64) + np.arange(2, dtype=np.int64),
        lie_action_T=action_from_generators(plane, C1, {}),
        lie_action_N=action_from_generators(plane, C2, {1: swap}),
    )

    space = abelian(3)
    reversal = _rational(permutation_matrix([2, 1, 0]))
    rotation = _rational(permutation_matrix([1, 2, 0]))
    examples["triangle"] = Method6Configuration(
        name="triangle",
        algebra=space,
        G_T=C2,
        G_N=C3,
        group_action=np.array([[0, 1, 2], [0, 2, 1]], dtype=np.int64),
        lie_action_T=action_from_generators(space, C2, {1: reversal}),
        lie_action_N=action_from_generators(space, C3, {1: rotation}),
    )

    sl3 = sl_structure_constants(3)
    skew = [[int(i + j == 2) for j in range(3)] for i in range(3)]
    cycle = permutation_matrix([1, 2, 0])
    cycle_squared = permutation_matrix([2, 0, 1])
    identity = permutation_matrix([0, 1, 2])
    examples["sl3"] = Method6Configuration(
        name="sl3",
        algebra=sl3,
        G_T=C2,
        G_N=C3,
        group_action=np.array([[0, 1, 2], [0, 2, 1]], dtype=np.int64),
        lie_action_T=conjugation_action(3, C2, [identity, skew]),
        lie_action_N=conjugation_action(3, C3, [identity, cycle, cycle_squared]),
    )
    return examples
