"""Alexander–Whitney and shuffle maps between Tot(X) and C(Diag X), and the Eilenberg–Zilber check."""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

try:
    from ..core.errors import NotChainMap, ValidationError
    from ..core.models import EZReport, PresentationSummary
    from ..exactlin import FiniteAbelianGroupPresentation
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from core.errors import NotChainMap, ValidationError
    from core.models import EZReport, PresentationSummary
    from exactlin import FiniteAbelianGroupPresentation

from .bicomplex import CosimplicialBicomplex
from .objects import CochainComplex, dold_kan_comparison, normalize

logger = logging.getLogger(__name__)

SHUFFLE_CONVENTIONS = ("a", "b")


@dataclass
class CochainMap:
    """Per-degree matrices between two cochain complexes of the same modulus"""
    source: CochainComplex
    target: CochainComplex
    matrices: Dict[int, np.ndarray]
    name: str = ""

    def commutes_at(self, n: int) -> bool:
        m = self.source.modulus
        lhs = (self.target.differential(n) @ self.matrices[n]) % m
        rhs = (self.matrices[n + 1] @ self.source.differential(n)) % m
        return bool(np.array_equal(lhs, rhs))

    def is_chain_map(self) -> bool:
        return all(self.commutes_at(n) for n in sorted(self.matrices) if n + 1 in self.matrices)

    def check(self) -> None:
        for n in sorted(self.matrices):
            if n + 1 in self.matrices and not self.commutes_at(n):
                raise NotChainMap(f"{self.name or 'map'} does not commute with d in degree {n}", {"degree": n})

    def induced(self, n: int, source_h: FiniteAbelianGroupPresentation,
                target_h: FiniteAbelianGroupPresentation) -> np.ndarray:
        """Matrix of the induced map H^n → H^n in presentation coordinates"""
        if source_h.rank == 0:
            return np.zeros((target_h.rank, 0), dtype=np.int64)
        return target_h.reduce_many((self.matrices[n] @ source_h.generators) % self.source.modulus)


def shuffles(p: int, q: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...], int]]:
    """(μ, ν, sign) for every (p, q)-shuffle of {0, ..., p+q-1}; sign is that of the permutation (μ | ν)"""
    n = p + q
    out = []
    for mu in itertools.combinations(range(n), p):
        nu = tuple(k for k in range(n) if k not in mu)
        inversions = sum(value - position for position, value in enumerate(mu))
        out.append((mu, nu, -1 if inversions % 2 else 1))
    return out


def alexander_whitney_block(X: CosimplicialBicomplex, p: int, q: int) -> np.ndarray:
    """g_{p,q} = ∂_h^n⋯∂_h^{p+1}(∂_v^0)^p: X^{p,q} → X^{n,n}"""
    n = p + q
    block = np.eye(X.dim(p, q), dtype=np.int64)
    for k in range(q, n):
        block = X.v_coface(p, k, 0) @ block
    for k in range(p, n):
        block = X.h_coface(k, n, k + 1) @ block
    return block % X.modulus


def shuffle_block(X: CosimplicialBicomplex, p: int, q: int, convention: str = "a") -> np.ndarray:
    """f^{p,q} = Σ sign(μ,ν) σ_v^{μ_1}⋯σ_v^{μ_p} σ_h^{ν_1}⋯σ_h^{ν_q}: X^{n,n} → X^{p,q}, largest index first"""
    if convention not in SHUFFLE_CONVENTIONS:
        raise ValidationError(f"unknown shuffle convention '{convention}'", {"convention": convention})
    n = p + q
    total = np.zeros((X.dim(p, q), X.dim(n, n)), dtype=np.int64)
    for mu, nu, sign in shuffles(p, q):
        term = np.eye(X.dim(n, n), dtype=np.int64)
        degree = n
        for index in reversed(nu):
            term = X.h_codegeneracy(degree, n, index) @ term
            degree -= 1
        degree = n
        for index in reversed(mu):
            term = X.v_codegeneracy(p, degree, index) @ term
            degree -= 1
        total += sign * term
    if convention == "b" and (p * q) % 2:
        total = -total
    return total % X.modulus


def alexander_whitney(X: CosimplicialBicomplex, top: int, check: bool = True) -> CochainMap:
    """g: Tot(X) → C(Diag X) in degrees 0..top"""
    tot, diag = X.tot(top), X.diag(top).cochain_complex()
    matrices = {}
    for n in range(top + 1):
        blocks = [alexander_whitney_block(X, p, q) for p, q in X.tot_cells(n)]
        matrices[n] = np.hstack(blocks) % X.modulus
    g = CochainMap(tot, diag, matrices, name="Alexander–Whitney")
    if check:
        g.check()
    return g


def shuffle(X: CosimplicialBicomplex, top: int, convention: str = "a", check: bool = True) -> CochainMap:
    """f: C(Diag X) → Tot(X) in degrees 0..top"""
    tot, diag = X.tot(top), X.diag(top).cochain_complex()
    matrices = {}
    for n in range(top + 1):
        blocks = [shuffle_block(X, p, q, convention) for p, q in X.tot_cells(n)]
        matrices[n] = np.vstack(blocks) % X.modulus
    f = CochainMap(diag, tot, matrices, name=f"shuffle ({convention})")
    if check:
        f.check()
    return f


def _is_identity_mod(matrix: np.ndarray, presentation: FiniteAbelianGroupPresentation) -> bool:
    if presentation.rank == 0:
        return True
    factors = np.array(presentation.invariant_factors, dtype=np.int64)[:, None]
    return bool(np.all((matrix - np.eye(presentation.rank, dtype=np.int64)) % factors == 0))


def verify_ez(X: CosimplicialBicomplex, n_max: int, convention: str = "a") -> EZReport:
    """H^n(Tot X) ≅ H^n(C Diag X) through g and f for n ≤ n_max, with the Dold–Kan checks on Diag.

    Convention ``a`` is expected to give cochain maps, a failure raises NotChainMap.
    Under ``b`` a failing shuffle is recorded and the inverse check is skipped.
    """
    top = n_max + 1
    if top > min(X.p_max, X.q_max):
        raise ValidationError(f"verifying up to degree {n_max} needs bound ≥ {top}", {"n_max": n_max})
    print(f"   🔁 Eilenberg–Zilber on {X.name} mod {X.modulus} up to degree {n_max} (convention {convention})")

    g = alexander_whitney(X, top, check=(convention == "a"))
    f = shuffle(X, top, convention, check=(convention == "a"))
    g_ok, f_ok = g.is_chain_map(), f.is_chain_map()
    if not g_ok:
        raise NotChainMap("the Alexander–Whitney map is not a cochain map", {"convention": convention})

    tot, diag = g.source, g.target
    tot_h = {n: tot.cohomology(n) for n in range(n_max + 1)}
    diag_h = {n: diag.cohomology(n) for n in range(n_max + 1)}

    mutually_inverse = {}
    for n in range(n_max + 1):
        if not f_ok:
            mutually_inverse[n] = False
            continue
        g_star = g.induced(n, tot_h[n], diag_h[n])
        f_star = f.induced(n, diag_h[n], tot_h[n])
        fg = (f_star @ g_star) if tot_h[n].rank else np.zeros((0, 0), dtype=np.int64)
        gf = (g_star @ f_star) if diag_h[n].rank else np.zeros((0, 0), dtype=np.int64)
        mutually_inverse[n] = (
            tot_h[n].invariant_factors == diag_h[n].invariant_factors
            and _is_identity_mod(fg, tot_h[n])
            and _is_identity_mod(gf, diag_h[n])
        )
        status = "✅" if mutually_inverse[n] else "❌"
        logger.info(f"{status} H^{n}: Tot {tot_h[n]} vs Diag {diag_h[n]}")

    diagonal = X.diag(top)
    normalized = normalize(diagonal)
    splitting = {n: s.is_direct_sum for n, s in normalized.splittings.items()}
    comparison = dold_kan_comparison(diagonal, n_max)

    return EZReport(
        pair=X.name,
        modulus=X.modulus,
        max_degree=n_max,
        convention=convention,
        tot_cohomology={n: PresentationSummary.of(f"H^{n}(Tot)", h) for n, h in tot_h.items()},
        diag_cohomology={n: PresentationSummary.of(f"H^{n}(Diag)", h) for n, h in diag_h.items()},
        alexander_whitney_is_chain_map=g_ok,
        shuffle_is_chain_map=f_ok,
        mutually_inverse=mutually_inverse,
        dold_kan_splitting=splitting,
        dold_kan_cohomology=comparison,
    )
