import asyncio
import logging
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

try:
    from ..barcomplex import CoefficientModule, bar_differential, group_cohomology, is_group_cocycle
    from ..core.models import ExactnessVerdict, KacSequenceReport, PresentationSummary
    from ..core.size_guard import SizeGuard, default_guard
    from ..exactlin import (
        FiniteAbelianGroupPresentation,
        kernel_mod,
        map_respects_relations,
        presented_kernel,
        presented_map_matrix,
        span_contains,
        subgroup_invariant_factors,
        subgroup_order,
        subgroups_equal,
    )
    from ..fingroup import GroupMatchedPair
    from ..mpcomplex import total_cohomology
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from barcomplex import CoefficientModule, bar_differential, group_cohomology, is_group_cocycle
    from core.models import ExactnessVerdict, KacSequenceReport, PresentationSummary
    from core.size_guard import SizeGuard, default_guard
    from exactlin import (
        FiniteAbelianGroupPresentation,
        kernel_mod,
        map_respects_relations,
        presented_kernel,
        presented_map_matrix,
        span_contains,
        subgroup_invariant_factors,
        subgroup_order,
        subgroups_equal,
    )
    from fingroup import GroupMatchedPair
    from mpcomplex import total_cohomology

from .maps import KacMaps

logger = logging.getLogger(__name__)

Presentation = FiniteAbelianGroupPresentation


@dataclass
class KacGroups:
    h1_H: Presentation
    h1_TN: Presentation
    mp1: Presentation
    h2_H: Presentation
    h2_TN: Presentation
    mp2: Presentation
    h3_H: Optional[Presentation]

    def summaries(self) -> Dict[str, PresentationSummary]:
        labelled = {
            "H^1(H)": self.h1_H,
            "H^1(T)+H^1(N)": self.h1_TN,
            "ℋ^1(T,N)": self.mp1,
            "H^2(H)": self.h2_H,
            "H^2(T)+H^2(N)": self.h2_TN,
            "ℋ^2(T,N)": self.mp2,
        }
        if self.h3_H is not None:
            labelled["H^3(H)"] = self.h3_H
        return {label: PresentationSummary.of(label, pres) for label, pres in labelled.items()}


async def compute_kac_groups(maps: KacMaps, include_h3: bool, guard: Optional[SizeGuard] = None) -> KacGroups:
    """The seven groups of the sequence; they are independent, so they run concurrently"""
    mp, m, H, c = maps.pair, maps.modulus, maps.H, maps.complex_
    jobs = [
        lambda: group_cohomology(H, m, 1, guard=guard),
        lambda: group_cohomology(mp.T, m, 1, guard=guard),
        lambda: group_cohomology(mp.N, m, 1, guard=guard),
        lambda: total_cohomology(c, 1),
        lambda: group_cohomology(H, m, 2, guard=guard),
        lambda: group_cohomology(mp.T, m, 2, guard=guard),
        lambda: group_cohomology(mp.N, m, 2, guard=guard),
        lambda: total_cohomology(c, 2),
    ]
    if include_h3:
        jobs.append(lambda: group_cohomology(H, m, 3, guard=guard))

    print(f"   🧮 Computing {len(jobs)} cohomology groups...")
    results = await asyncio.gather(*(asyncio.to_thread(job) for job in jobs))
    h1_H, h1_T, h1_N, mp1, h2_H, h2_T, h2_N, mp2 = results[:8]
    return KacGroups(
        h1_H=h1_H,
        h1_TN=h1_T.direct_sum(h1_N),
        mp1=mp1,
        h2_H=h2_H,
        h2_TN=h2_T.direct_sum(h2_N),
        mp2=mp2,
        h3_H=results[8] if include_h3 else None,
    )


def _presented(source: Presentation, target: Presentation, cochain_map: np.ndarray) -> np.ndarray:
    if source.rank == 0:
        return np.zeros((target.rank, 0), dtype=np.int64)
    images = (cochain_map @ source.generators) % source.modulus
    return presented_map_matrix(source, target, images)


def _composite_is_zero(first: np.ndarray, second: np.ndarray, target: Presentation) -> bool:
    if target.rank == 0 or first.shape[1] == 0:
        return True
    factors = np.array(target.invariant_factors, dtype=np.int64)[:, None]
    return not np.any((second @ first) % factors)


def _verdict(position: str, presentation: Presentation, image: np.ndarray, kernel: np.ndarray) -> ExactnessVerdict:
    verdict = ExactnessVerdict(
        position=position,
        image_invariant_factors=list(subgroup_invariant_factors(presentation, image)),
        kernel_invariant_factors=list(subgroup_invariant_factors(presentation, kernel)),
        exact=subgroups_equal(presentation, image, kernel),
    )
    status = "✅ exact" if verdict.exact else "❌ not exact"
    logger.info(f"Kac sequence at {position}: im {verdict.image_invariant_factors} "
                f"ker {verdict.kernel_invariant_factors} {status}")
    return verdict


def _psi_kernel(mp2: Presentation, psi_cochains: np.ndarray, d2_H: np.ndarray, m: int) -> np.ndarray:
    """Coordinates c with Σ c_i ψ(g_i) a coboundary on H"""
    k = mp2.rank
    if k == 0:
        return np.zeros((0, 0), dtype=np.int64)
    solutions = kernel_mod(np.hstack([psi_cochains, (-d2_H) % m]), m)[:k, :]
    return solutions % np.array(mp2.invariant_factors, dtype=np.int64)[:, None]


async def verify_kac_exactness_async(mp: GroupMatchedPair, m: int, convention: str = "a",
                                     guard: Optional[SizeGuard] = None,
                                     h3_max_order: int = 8) -> KacSequenceReport:
    guard = guard or default_guard()
    maps = KacMaps(mp, m, convention=convention, guard=guard)
    H = maps.H
    include_h3 = H.order <= h3_max_order
    if not include_h3:
        logger.warning(f"|H| = {H.order} exceeds {h3_max_order}: H^3(H) is not presented, ψ is checked by membership")

    groups = await compute_kac_groups(maps, include_h3, guard=guard)
    print("   🔗 Assembling the connecting maps...")

    R1 = _presented(groups.h1_H, groups.h1_TN, maps.res_matrix(1))
    D1 = _presented(groups.h1_TN, groups.mp1, maps.delta_matrix(1))
    Phi = _presented(groups.mp1, groups.h2_H, maps.phi_matrix())
    R2 = _presented(groups.h2_H, groups.h2_TN, maps.res_matrix(2))
    D2 = _presented(groups.h2_TN, groups.mp2, maps.delta_matrix(2))

    trivial = CoefficientModule.trivial(H.order, m)
    d2_H = bar_differential(H, trivial, 2, guard=guard)
    psi_map = maps.psi_matrix()
    psi_cochains = (psi_map @ groups.mp2.generators) % m if groups.mp2.rank else \
        np.zeros((psi_map.shape[0], 0), dtype=np.int64)
    psi_cocycles = all(is_group_cocycle(H, psi_cochains[:, j], 3, m) for j in range(psi_cochains.shape[1]))
    if not psi_cocycles:
        logger.warning(f"ψ convention {convention} produces non-cocycles on {H.name}")

    matrices = {"res1": R1, "delta1": D1, "phi": Phi, "res2": R2, "delta2": D2}
    if groups.h3_H is not None and psi_cocycles:
        matrices["psi"] = _presented(groups.mp2, groups.h3_H, psi_map)

    well_defined = {
        "res1": map_respects_relations(groups.h1_H, groups.h1_TN, R1),
        "delta1": map_respects_relations(groups.h1_TN, groups.mp1, D1),
        "phi": map_respects_relations(groups.mp1, groups.h2_H, Phi),
        "res2": map_respects_relations(groups.h2_H, groups.h2_TN, R2),
        "delta2": map_respects_relations(groups.h2_TN, groups.mp2, D2),
    }
    torsion = psi_cochains * np.array(groups.mp2.invariant_factors, dtype=np.int64)[None, :]
    well_defined["psi"] = psi_cocycles and span_contains(d2_H, torsion % m, m)

    delta2_cochains = (maps.delta_matrix(2) @ groups.h2_TN.generators) % m if groups.h2_TN.rank else \
        np.zeros((maps.complex_.tot_dim(3), 0), dtype=np.int64)
    complex_property = {
        "delta1∘res1": _composite_is_zero(R1, D1, groups.mp1),
        "phi∘delta1": _composite_is_zero(D1, Phi, groups.h2_H),
        "res2∘phi": _composite_is_zero(Phi, R2, groups.h2_TN),
        "delta2∘res2": _composite_is_zero(R2, D2, groups.mp2),
        "psi∘delta2": span_contains(d2_H, (psi_map @ delta2_cochains) % m, m),
    }

    injective = subgroup_order(groups.h1_H, presented_kernel(groups.h1_H, groups.h1_TN, R1)) == 1
    verdicts = [
        _verdict("H^1(T)+H^1(N)", groups.h1_TN, R1, presented_kernel(groups.h1_TN, groups.mp1, D1)),
        _verdict("ℋ^1(T,N)", groups.mp1, D1, presented_kernel(groups.mp1, groups.h2_H, Phi)),
        _verdict("H^2(H)", groups.h2_H, Phi, presented_kernel(groups.h2_H, groups.h2_TN, R2)),
        _verdict("H^2(T)+H^2(N)", groups.h2_TN, R2, presented_kernel(groups.h2_TN, groups.mp2, D2)),
    ]
    psi_verdict = _verdict("ℋ^2(T,N)", groups.mp2, D2, _psi_kernel(groups.mp2, psi_cochains, d2_H, m))
    psi_verdict.exact = psi_verdict.exact and psi_cocycles
    verdicts.append(psi_verdict)

    report = KacSequenceReport(
        pair=mp.name,
        modulus=m,
        convention=convention,
        groups=groups.summaries(),
        maps={name: [[int(v) for v in row] for row in matrix] for name, matrix in matrices.items()},
        verdicts=verdicts,
        injective_at_start=injective,
        complex_property=complex_property,
        well_defined=well_defined,
        psi_outputs_are_cocycles=psi_cocycles,
        h3_computed=groups.h3_H is not None,
    )
    logger.info(f"Kac sequence for {mp.name or 'pair'} mod {m}: all exact = {report.all_exact}")
    return report


def verify_kac_exactness(mp: GroupMatchedPair, m: int, convention: str = "a", guard: Optional[SizeGuard] = None,
                         h3_max_order: int = 8) -> KacSequenceReport:
    """Synchronous entry point; use ``verify_kac_exactness_async`` inside a running event loop"""
    return asyncio.run(verify_kac_exactness_async(mp, m, convention, guard, h3_max_order))
