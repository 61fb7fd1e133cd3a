"""Cosimplicial ℤ/m-modules given by coface and codegeneracy matrices, and their Dold–Kan splitting."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

try:
    from ..core.errors import CompositionNotZero, CosimplicialIdentityFailed, SplittingFailed
    from ..exactlin import (
        FiniteAbelianGroupPresentation,
        homology_at,
        kernel_mod,
        span_quotient,
        submodule_order,
    )
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from core.errors import CompositionNotZero, CosimplicialIdentityFailed, SplittingFailed
    from exactlin import (
        FiniteAbelianGroupPresentation,
        homology_at,
        kernel_mod,
        span_quotient,
        submodule_order,
    )

logger = logging.getLogger(__name__)


def _sign(i: int) -> int:
    return -1 if i % 2 else 1


@dataclass
class CochainComplex:
    """Free ℤ/m-modules C^n (n ≤ top) with d^n: C^n → C^{n+1} for n < top"""
    modulus: int
    dims: List[int]
    differentials: Dict[int, np.ndarray]
    name: str = ""

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def differential(self, n: int) -> np.ndarray:
        return self.differentials[n]

    def check(self) -> None:
        m = self.modulus
        for n in range(self.top - 1):
            composite = (self.differentials[n + 1] @ self.differentials[n]) % m
            if np.any(composite):
                raise CompositionNotZero(f"d∘d ≠ 0 on degree {n} of {self.name or 'the complex'}", {"degree": n})

    def cohomology(self, n: int) -> FiniteAbelianGroupPresentation:
        if n >= self.top:
            raise ValueError(f"H^{n} needs the differential out of degree {n}; the complex stops at {self.top}")
        d_in = self.differentials[n - 1] if n >= 1 else np.zeros((self.dims[n], 0), dtype=np.int64)
        return homology_at(d_in, self.differentials[n], self.modulus)


@dataclass
class CosimplicialObject:
    """X^0, ..., X^top with ∂^i: X^n → X^{n+1} (0 ≤ i ≤ n+1) and σ^j: X^n → X^{n-1} (0 ≤ j < n).

    ``cofaces[n][i]`` and ``codegeneracies[n][j]`` are (target × source) matrices.
    """
    modulus: int
    dims: List[int]
    cofaces: Dict[int, List[np.ndarray]]
    codegeneracies: Dict[int, List[np.ndarray]]
    name: str = ""

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def coface(self, n: int, i: int) -> np.ndarray:
        return self.cofaces[n][i]

    def codegeneracy(self, n: int, j: int) -> np.ndarray:
        return self.codegeneracies[n][j]

    def _require(self, lhs: np.ndarray, rhs: np.ndarray, identity: str, witness: Dict) -> None:
        if not np.array_equal(lhs % self.modulus, rhs % self.modulus):
            raise CosimplicialIdentityFailed(
                f"{identity} fails on {self.name or 'cosimplicial object'} at {witness}",
                dict(witness, identity=identity),
            )

    def check_identities(self) -> None:
        """Every cosimplicial identity inside the stored degrees, as matrix equations"""
        d, s = self.coface, self.codegeneracy
        K = self.top
        for n in range(K - 1):
            for j in range(n + 3):
                for i in range(j):
                    self._require(d(n + 1, j) @ d(n, i), d(n + 1, i) @ d(n, j - 1),
                                  "∂^j∂^i = ∂^i∂^(j-1)", {"degree": n, "i": i, "j": j})
        for n in range(2, K + 1):
            for j in range(n - 1):
                for i in range(j + 1):
                    self._require(s(n - 1, j) @ s(n, i), s(n - 1, i) @ s(n, j + 1),
                                  "σ^jσ^i = σ^iσ^(j+1)", {"degree": n, "i": i, "j": j})
        for n in range(K):
            identity = np.eye(self.dims[n], dtype=np.int64)
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = s(n + 1, j) @ d(n, i)
                    if i in (j, j + 1):
                        rhs, label = identity, "σ^j∂^i = id"
                    elif i < j:
                        rhs, label = d(n - 1, i) @ s(n, j - 1), "σ^j∂^i = ∂^iσ^(j-1)"
                    else:
                        rhs, label = d(n - 1, i - 1) @ s(n, j), "σ^j∂^i = ∂^(i-1)σ^j"
                    self._require(lhs, rhs, label, {"degree": n, "i": i, "j": j})
        logger.debug(f"cosimplicial identities hold on {self.name or 'object'} up to degree {K}")

    def differential(self, n: int) -> np.ndarray:
        """d = Σ (−1)^i ∂^i: X^n → X^{n+1}"""
        total = np.zeros((self.dims[n + 1], self.dims[n]), dtype=np.int64)
        for i, face in enumerate(self.cofaces[n]):
            total += _sign(i) * face
        return total % self.modulus

    def cochain_complex(self) -> CochainComplex:
        return CochainComplex(
            modulus=self.modulus,
            dims=list(self.dims),
            differentials={n: self.differential(n) for n in range(self.top)},
            name=f"C({self.name})" if self.name else "",
        )


@dataclass
class DoldKanSplitting:
    """X^n = N^n ⊕ D^n with N^n = ∩ ker σ^i and D^n = Σ_{j<n} im ∂^j"""
    degree: int
    normalized: np.ndarray
    degenerate: np.ndarray
    normalized_order: int
    degenerate_order: int
    total_order: int

    @property
    def is_direct_sum(self) -> bool:
        return self.normalized_order * self.degenerate_order == self.total_order


@dataclass
class NormalizedObject:
    """N(X) as a subcomplex of C(X), with the splitting found in every degree"""
    source: CosimplicialObject
    splittings: Dict[int, DoldKanSplitting]
    complex_: CochainComplex = field(repr=False)

    def normalized_rank(self, n: int) -> int:
        """Rank of N^n when it is free (orders are powers of the modulus)"""
        order, rank = self.splittings[n].normalized_order, 0
        while order > 1:
            order //= self.source.modulus
            rank += 1
        return rank

    def cohomology(self, n: int) -> FiniteAbelianGroupPresentation:
        """H^n(N(X)) computed inside the ambient X^n"""
        m = self.source.modulus
        if n >= self.source.top:
            raise ValueError(f"H^{n}(N) needs degree {n + 1}")
        basis = self.splittings[n].normalized
        d = self.complex_.differential(n)
        if basis.shape[1] == 0:
            return span_quotient(np.zeros((self.source.dims[n], 0), dtype=np.int64),
                                 np.zeros((self.source.dims[n], 0), dtype=np.int64), m)
        coefficients = kernel_mod((d @ basis) % m, m)
        cycles = (basis @ coefficients) % m if coefficients.size else np.zeros((basis.shape[0], 0), dtype=np.int64)
        if n >= 1 and self.splittings[n - 1].normalized.shape[1]:
            boundaries = (self.complex_.differential(n - 1) @ self.splittings[n - 1].normalized) % m
        else:
            boundaries = np.zeros((basis.shape[0], 0), dtype=np.int64)
        return span_quotient(cycles, boundaries, m)


def _common_kernel(blocks: List[np.ndarray], dim: int, m: int) -> np.ndarray:
    if not blocks:
        return np.eye(dim, dtype=np.int64)
    stacked = np.vstack(blocks) % m
    if stacked.shape[0] == 0:
        return np.eye(dim, dtype=np.int64)
    generators = kernel_mod(stacked, m)
    return generators if generators.size else np.zeros((dim, 0), dtype=np.int64)


def normalize(X: CosimplicialObject) -> NormalizedObject:
    """Dold–Kan: split every X^n into normalized and degenerate parts and check the splitting by order"""
    m = X.modulus
    splittings = {}
    for n in range(X.top + 1):
        dim = X.dims[n]
        normalized = _common_kernel([X.codegeneracy(n, i) for i in range(n)], dim, m)
        if n == 0:
            degenerate = np.zeros((dim, 0), dtype=np.int64)
        else:
            degenerate = np.hstack([X.coface(n - 1, j) for j in range(n)]) % m
        total = m ** dim
        n_order = submodule_order(normalized, m) if normalized.size else 1
        d_order = submodule_order(degenerate, m) if degenerate.size else 1
        both = np.hstack([normalized, degenerate]) if normalized.size or degenerate.size else np.zeros((dim, 0), dtype=np.int64)
        sum_order = submodule_order(both, m) if both.size else 1
        splitting = DoldKanSplitting(n, normalized % m, degenerate, n_order, d_order, total)
        if not splitting.is_direct_sum or sum_order != total:
            raise SplittingFailed(
                f"X^{n} of {X.name or 'the object'} is not N ⊕ D: |N|={n_order}, |D|={d_order}, "
                f"|N+D|={sum_order}, |X|={total}",
                {"degree": n, "normalized": n_order, "degenerate": d_order, "sum": sum_order, "total": total},
            )
        splittings[n] = splitting
    complex_ = X.cochain_complex()
    for n in range(X.top):
        image = (complex_.differential(n) @ splittings[n].normalized) % m
        if image.size and not _within(image, splittings[n + 1].normalized, m):
            raise SplittingFailed(f"d does not preserve N at degree {n}", {"degree": n})
    logger.debug(f"Dold–Kan splitting of {X.name or 'object'}: "
                 f"{[s.normalized_order for s in splittings.values()]}")
    return NormalizedObject(X, splittings, complex_)


def _within(vectors: np.ndarray, basis: np.ndarray, m: int) -> bool:
    if basis.size == 0:
        return not np.any(vectors % m)
    return submodule_order(np.hstack([basis, vectors]), m) == submodule_order(basis, m)


def dold_kan_comparison(X: CosimplicialObject, n_max: Optional[int] = None) -> Dict[int, bool]:
    """H^n(N(X)) ≅ H^n(C(X)) by invariant factors, for n below the top degree"""
    normalized = normalize(X)
    complex_ = normalized.complex_
    n_max = X.top - 1 if n_max is None else min(n_max, X.top - 1)
    return {
        n: normalized.cohomology(n).invariant_factors == complex_.cohomology(n).invariant_factors
        for n in range(n_max + 1)
    }


def constant_object(m: int, rank: int, top: int) -> CosimplicialObject:
    """X^n = (ℤ/m)^rank with every coface and codegeneracy the identity"""
    identity = np.eye(rank, dtype=np.int64)
    return CosimplicialObject(
        modulus=m,
        dims=[rank] * (top + 1),
        cofaces={n: [identity.copy() for _ in range(n + 2)] for n in range(top)},
        codegeneracies={n: [identity.copy() for _ in range(n)] for n in range(1, top + 1)},
        name=f"const(ℤ/{m}^{rank})",
    )
