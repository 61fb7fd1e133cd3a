"""The connecting maps of the low-degree Kac sequence, on cochains and as matrices."""

import logging
from typing import Optional, Tuple

import numpy as np

try:
    from ..barcomplex import is_group_cocycle, normalized_tuples, pullback_matrix
    from ..core.errors import NotACocycle, OutputCocycleCheckFailed, ValidationError
    from ..core.size_guard import SizeGuard, default_guard
    from ..fingroup import BismashGroup, GroupMatchedPair, bismash
    from ..mpcomplex import MPCohomologyClass, MPDoubleComplex, build_double_complex, is_tot_cocycle
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from barcomplex import is_group_cocycle, normalized_tuples, pullback_matrix
    from core.errors import NotACocycle, OutputCocycleCheckFailed, ValidationError
    from core.size_guard import SizeGuard, default_guard
    from fingroup import BismashGroup, GroupMatchedPair, bismash
    from mpcomplex import MPCohomologyClass, MPDoubleComplex, build_double_complex, is_tot_cocycle

logger = logging.getLogger(__name__)

PSI_CONVENTIONS = ("a", "b")


class KacMaps:
    """res, δ = δ_N ∗ δ_T, φ and ψ for one matched pair and modulus.

    Cochains on H = N⋈T are normalized scalar cochains indexed like
    ``normalized_tuples(|H|, n)``; cochains on T and N likewise. Every map also
    has a matrix form acting on such vectors, which the exactness verifier uses.
    """

    def __init__(self, mp: GroupMatchedPair, m: int, convention: str = "a",
                 guard: Optional[SizeGuard] = None, complex_: Optional[MPDoubleComplex] = None):
        if convention not in PSI_CONVENTIONS:
            raise ValidationError(f"unknown ψ convention {convention!r}", {"allowed": list(PSI_CONVENTIONS)})
        self.pair = mp
        self.modulus = m
        self.convention = convention
        self.guard = guard or default_guard()
        self.bismash: BismashGroup = bismash(mp)
        self.complex_ = complex_ or build_double_complex(mp, m, 3, 3, guard=self.guard, check=False)
        if self.complex_.p_max < 3 or self.complex_.q_max < 3:
            raise ValidationError("the Kac maps need a double complex with bounds (3, 3)")

    @property
    def H(self):
        return self.bismash.group

    def _split_arguments(self, n: int) -> Tuple[np.ndarray, np.ndarray]:
        """(n-components, t-components) of every normalized n-tuple of H"""
        args = normalized_tuples(self.H.order, n)
        return args // self.pair.T.order, args % self.pair.T.order

    # --- matrices ----------------------------------------------------------
    def res_matrix(self, n: int) -> np.ndarray:
        """Cochains on H to (cochains on T) ⊕ (cochains on N)"""
        to_T = pullback_matrix(self.pair.T, self.H, self.bismash.inject_T(), n)
        to_N = pullback_matrix(self.pair.N, self.H, self.bismash.inject_N(), n)
        return np.vstack([to_T, to_N])

    def delta_matrix(self, n: int) -> np.ndarray:
        """n = 1: (a, b) ↦ δ_N a + δ_T b in Tot²; n = 2: (a, b) ↦ (−δ_T b, δ_N a) in Tot³"""
        c = self.complex_
        m = self.modulus
        if n == 1:
            return np.hstack([c.delta_N(1, 0), c.delta_T(0, 1)]) % m
        if n != 2:
            raise ValidationError(f"δ is only defined in degrees 1 and 2, got {n}")
        width_a, width_b = c.dim(2, 0), c.dim(0, 2)
        D = np.zeros((c.tot_dim(3), width_a + width_b), dtype=np.int64)
        offsets = c.tot_offsets(3)
        row = offsets[(1, 2)]
        D[row:row + c.dim(1, 2), width_a:] = -c.delta_T(0, 2)
        row = offsets[(2, 1)]
        D[row:row + c.dim(2, 1), :width_a] = c.delta_N(2, 0)
        return D % m

    def phi_matrix(self) -> np.ndarray:
        """γ ∈ C^{1,1} ↦ the 2-cochain (x, y) ↦ γ(t_x, n_y) on H"""
        c = self.complex_
        ns, ts = self._split_arguments(2)
        rows = np.arange(ns.shape[0], dtype=np.int64)
        t, n = ts[:, 0], ns[:, 1]
        keep = (t != 0) & (n != 0)
        P = np.zeros((ns.shape[0], c.dim(1, 1)), dtype=np.int64)
        P[rows[keep], c.cell_index(1, 1, t[keep, None], n[keep, None])] = 1
        return P

    def psi_matrix(self) -> np.ndarray:
        """(f1, f2) ∈ Tot³ ↦ f2(t_x◁n_y, t_y; n_z) + f1(t_x; n_y, t_y▷n_z) on H³"""
        mp, c = self.pair, self.complex_
        ns, ts = self._split_arguments(3)
        rows = np.arange(ns.shape[0], dtype=np.int64)
        offsets = c.tot_offsets(3)
        P = np.zeros((ns.shape[0], c.tot_dim(3)), dtype=np.int64)

        shifted = mp.act_right[ts[:, 0], ns[:, 1]]
        if self.convention == "a":
            t_args = np.stack([shifted, ts[:, 1]], axis=1)
        else:
            t_args = np.stack([ts[:, 1], shifted], axis=1)
        n_args = ns[:, 2:3]
        keep = np.all(t_args != 0, axis=1) & (n_args[:, 0] != 0)
        np.add.at(P, (rows[keep], offsets[(2, 1)] + c.cell_index(2, 1, t_args[keep], n_args[keep])), 1)

        t_args = ts[:, 0:1]
        n_args = np.stack([ns[:, 1], mp.act_left[ts[:, 1], ns[:, 2]]], axis=1)
        keep = (t_args[:, 0] != 0) & np.all(n_args != 0, axis=1)
        np.add.at(P, (rows[keep], offsets[(1, 2)] + c.cell_index(1, 2, t_args[keep], n_args[keep])), 1)
        return P % self.modulus

    # --- cochain level -----------------------------------------------------
    def res(self, f: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray]:
        """Restrict an n-cocycle on H to T and to N"""
        m = self.modulus
        f = np.asarray(f, dtype=np.int64) % m
        if not is_group_cocycle(self.H, f, n, m):
            raise NotACocycle(f"input of res is not a {n}-cocycle on {self.H.name}", {"map": "res", "degree": n})
        image = (self.res_matrix(n) @ f) % m
        split = self.complex_.dim(n, 0)
        return image[:split], image[split:]

    def delta_pair(self, a: np.ndarray, b: np.ndarray, n: int) -> MPCohomologyClass:
        m, c = self.modulus, self.complex_
        a = np.asarray(a, dtype=np.int64) % m
        b = np.asarray(b, dtype=np.int64) % m
        if not is_group_cocycle(self.pair.T, a, n, m):
            raise NotACocycle(f"a is not a {n}-cocycle on T", {"map": "delta", "argument": "a"})
        if not is_group_cocycle(self.pair.N, b, n, m):
            raise NotACocycle(f"b is not a {n}-cocycle on N", {"map": "delta", "argument": "b"})
        vector = (self.delta_matrix(n) @ np.concatenate([a, b])) % m
        if not is_tot_cocycle(c, n, vector):
            raise OutputCocycleCheckFailed(f"δ(a, b) is not a Tot-cocycle in degree {n}", {"map": "delta"})
        return MPCohomologyClass(n, c.split(n + 1, vector))

    def phi(self, gamma: np.ndarray) -> np.ndarray:
        m, c = self.modulus, self.complex_
        gamma = np.asarray(gamma, dtype=np.int64) % m
        if not is_tot_cocycle(c, 1, gamma):
            raise NotACocycle("γ is not a cocycle of the matched pair complex", {"map": "phi"})
        f = (self.phi_matrix() @ gamma) % m
        if not is_group_cocycle(self.H, f, 2, m):
            raise OutputCocycleCheckFailed("φ(γ) fails the 2-cocycle identity on H", {"map": "phi"})
        return f

    def psi(self, f1: np.ndarray, f2: np.ndarray) -> np.ndarray:
        """f1 ∈ C^{1,2}, f2 ∈ C^{2,1} forming a class of ℋ²"""
        m, c = self.modulus, self.complex_
        vector = c.join(3, {1: np.asarray(f1, dtype=np.int64), 2: np.asarray(f2, dtype=np.int64)})
        if not is_tot_cocycle(c, 2, vector):
            raise NotACocycle("(f1, f2) is not a cocycle of the matched pair complex", {"map": "psi"})
        f = (self.psi_matrix() @ vector) % m
        if not is_group_cocycle(self.H, f, 3, m):
            raise OutputCocycleCheckFailed(
                f"ψ(f1, f2) fails the 3-cocycle identity on H (convention {self.convention})",
                {"map": "psi", "convention": self.convention},
            )
        return f


def res2(mp: GroupMatchedPair, m: int, f: np.ndarray, n: int = 2, **kwargs) -> Tuple[np.ndarray, np.ndarray]:
    return KacMaps(mp, m, **kwargs).res(f, n)


def delta_pair(mp: GroupMatchedPair, m: int, a: np.ndarray, b: np.ndarray, n: int = 2, **kwargs) -> MPCohomologyClass:
    return KacMaps(mp, m, **kwargs).delta_pair(a, b, n)


def phi(mp: GroupMatchedPair, m: int, gamma: np.ndarray, **kwargs) -> np.ndarray:
    return KacMaps(mp, m, **kwargs).phi(gamma)


def psi(mp: GroupMatchedPair, m: int, f1: np.ndarray, f2: np.ndarray, **kwargs) -> np.ndarray:
    return KacMaps(mp, m, **kwargs).psi(f1, f2)
