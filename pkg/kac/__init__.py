"""The low-degree Kac exact sequence of a matched pair of finite groups."""

from .lemma import CocycleDecomposition, assemble_cocycle, decompose_cocycle
from .maps import PSI_CONVENTIONS, KacMaps, delta_pair, phi, psi, res2
from .verifier import KacGroups, compute_kac_groups, verify_kac_exactness, verify_kac_exactness_async

__all__ = [
    "CocycleDecomposition",
    "assemble_cocycle",
    "decompose_cocycle",
    "PSI_CONVENTIONS",
    "KacMaps",
    "delta_pair",
    "phi",
    "psi",
    "res2",
    "KacGroups",
    "compute_kac_groups",
    "verify_kac_exactness",
    "verify_kac_exactness_async",
]
