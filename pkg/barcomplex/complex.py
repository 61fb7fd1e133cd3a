import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

try:
    from ..core.errors import CompositionNotZero, ValidationError
    from ..core.size_guard import SizeGuard, default_guard
    from ..exactlin import FiniteAbelianGroupPresentation, span_contains
    from ..fingroup import FiniteGroup
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from core.errors import CompositionNotZero, ValidationError
    from core.size_guard import SizeGuard, default_guard
    from exactlin import FiniteAbelianGroupPresentation, span_contains
    from fingroup import FiniteGroup

logger = logging.getLogger(__name__)


def normalized_tuples(order: int, n: int) -> np.ndarray:
    """All n-tuples of non-identity elements, big-endian in base order-1 (shape (order-1)^n × n)"""
    base = order - 1
    count = base ** n
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(count, dtype=np.int64)
    out = np.empty((count, n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        out[:, i] = idx % base + 1 if base else 0
        idx = idx // base if base else idx
    return out


def normalized_index(tuples: np.ndarray, order: int) -> np.ndarray:
    """Index of normalized tuples; entries must all be non-identity"""
    base = order - 1
    index = np.zeros(tuples.shape[0], dtype=np.int64)
    for i in range(tuples.shape[1]):
        index = index * base + (tuples[:, i] - 1)
    return index


def all_tuples(order: int, n: int) -> np.ndarray:
    """All n-tuples of elements, big-endian in base ``order``"""
    count = order ** n
    idx = np.arange(count, dtype=np.int64)
    out = np.empty((count, n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        out[:, i] = idx % order
        idx = idx // order
    return out


def full_index(tuples: np.ndarray, order: int) -> np.ndarray:
    index = np.zeros(tuples.shape[0], dtype=np.int64)
    for i in range(tuples.shape[1]):
        index = index * order + tuples[:, i]
    return index


@dataclass
class CoefficientModule:
    """(ℤ/m)^r / span(relations) with a left action g ↦ action[g] (r × r matrices)"""
    modulus: int
    rank: int
    action: np.ndarray
    relations: np.ndarray = field(default=None)
    name: str = ""

    def __post_init__(self):
        if self.relations is None:
            self.relations = np.zeros((self.rank, 0), dtype=np.int64)
        self.action = np.asarray(self.action, dtype=np.int64) % self.modulus
        self.relations = np.asarray(self.relations, dtype=np.int64).reshape(self.rank, -1) % self.modulus

    @classmethod
    def trivial(cls, group_order: int, m: int) -> "CoefficientModule":
        action = np.tile(np.eye(1, dtype=np.int64), (group_order, 1, 1))
        return cls(modulus=m, rank=1, action=action, name=f"ℤ/{m}")

    @classmethod
    def cyclic(cls, m: int, scalars: Sequence[int], name: str = "") -> "CoefficientModule":
        """ℤ/m with g acting by multiplication with scalars[g]"""
        action = np.array([[[int(s) % m]] for s in scalars], dtype=np.int64)
        return cls(modulus=m, rank=1, action=action, name=name or f"ℤ/{m}")

    @classmethod
    def from_presentation(cls, presentation: FiniteAbelianGroupPresentation,
                          action: np.ndarray, name: str = "") -> "CoefficientModule":
        """⊕ℤ/d_i inside (ℤ/m)^k, relations d_i·e_i; ``action`` acts on presentation coordinates"""
        k = presentation.rank
        relations = np.diag(np.array(presentation.invariant_factors, dtype=np.int64)) if k else \
            np.zeros((0, 0), dtype=np.int64)
        return cls(modulus=presentation.modulus, rank=k, action=action, relations=relations,
                   name=name or presentation.describe())

    @property
    def is_free(self) -> bool:
        return not np.any(self.relations)

    @property
    def is_trivial_action(self) -> bool:
        identity = np.eye(self.rank, dtype=np.int64)
        return all(np.array_equal(a, identity) for a in self.action)

    def validate(self, group: FiniteGroup) -> "CoefficientModule":
        """Check that the action is a homomorphism G → Aut(M) preserving the relations"""
        m, r = self.modulus, self.rank
        if self.action.shape != (group.order, r, r):
            raise ValidationError(f"action must have shape {(group.order, r, r)}, got {self.action.shape}")
        if r == 0:
            return self
        identity = np.eye(r, dtype=np.int64)
        if not span_contains(self.relations, (self.action[0] - identity) % m, m):
            raise ValidationError("the identity element does not act trivially", {"element": 0})
        for g in range(group.order):
            if self.relations.shape[1] and not span_contains(self.relations, (self.action[g] @ self.relations) % m, m):
                raise ValidationError(f"element {g} does not preserve the relations", {"element": g})
            for h in range(group.order):
                difference = (self.action[group.multiply(g, h)] - self.action[g] @ self.action[h]) % m
                if not span_contains(self.relations, difference, m):
                    raise ValidationError(
                        f"action is not a homomorphism at ({g}, {h})", {"g": g, "h": h}
                    )
        return self


@dataclass
class GroupCochainComplex:
    """Normalized (or, for cross-checks, unnormalized) bar cochains of G with values in M"""
    group: FiniteGroup
    module: CoefficientModule
    max_degree: int
    normalized: bool
    ranks: Dict[int, int]
    differentials: Dict[int, np.ndarray]

    @property
    def modulus(self) -> int:
        return self.module.modulus

    def tuple_count(self, n: int) -> int:
        base = self.group.order - 1 if self.normalized else self.group.order
        return base ** n

    def relations(self, n: int) -> np.ndarray:
        """Relations of C^n = M^{tuples}: one copy of the module relations per tuple"""
        count = self.tuple_count(n)
        R = self.module.relations
        if R.shape[1] == 0 or count == 0:
            return np.zeros((self.ranks[n], 0), dtype=np.int64)
        return np.kron(np.eye(count, dtype=np.int64), R) % self.modulus

    def differential(self, n: int) -> np.ndarray:
        return self.differentials[n]


def _bar_faces(group: FiniteGroup, n: int, normalized: bool):
    """Face data of d: C^n → C^{n+1} as (targets, sources, signs, acting) lists.

    ``acting`` is the element acting on the value (0 for the identity).
    """
    order = group.order
    targets_all = normalized_tuples(order, n + 1) if normalized else all_tuples(order, n + 1)
    index = (lambda t: normalized_index(t, order)) if normalized else (lambda t: full_index(t, order))
    count = targets_all.shape[0]
    target_ids = np.arange(count, dtype=np.int64)
    faces = []

    # face 0: g1·f(g2, ..., g_{n+1})
    faces.append((target_ids, index(targets_all[:, 1:]), np.ones(count, dtype=np.int64), targets_all[:, 0]))

    for i in range(1, n + 1):
        merged = group.mul[targets_all[:, i - 1], targets_all[:, i]]
        sources = np.concatenate([targets_all[:, :i - 1], merged[:, None], targets_all[:, i + 1:]], axis=1)
        keep = merged != 0 if normalized else np.ones(count, dtype=bool)
        sign = -1 if i % 2 else 1
        faces.append((
            target_ids[keep],
            index(sources[keep]),
            np.full(int(keep.sum()), sign, dtype=np.int64),
            np.zeros(int(keep.sum()), dtype=np.int64),
        ))

    sign = -1 if (n + 1) % 2 else 1
    faces.append((target_ids, index(targets_all[:, :n]), np.full(count, sign, dtype=np.int64),
                  np.zeros(count, dtype=np.int64)))
    return faces, count


def _assemble(faces, target_count: int, source_count: int, module: CoefficientModule) -> np.ndarray:
    r, m = module.rank, module.modulus
    D = np.zeros((target_count, r, source_count, r), dtype=np.int64)
    a = np.arange(r)
    for targets, sources, signs, acting in faces:
        if targets.size == 0:
            continue
        blocks = module.action[acting] * signs[:, None, None]
        np.add.at(D, (targets[:, None, None], a[None, :, None], sources[:, None, None], a[None, None, :]), blocks)
    return (D.reshape(target_count * r, source_count * r) % m).astype(np.int64)


def bar_differential(group: FiniteGroup, module: CoefficientModule, n: int, normalized: bool = True,
                     guard: Optional[SizeGuard] = None) -> np.ndarray:
    """d(f)(g1..g_{n+1}) = g1·f(g2..) + Σ(-1)^i f(..g_i g_{i+1}..) + (-1)^{n+1} f(g1..g_n)"""
    guard = guard or default_guard()
    base = group.order - 1 if normalized else group.order
    rows, cols = module.rank * base ** (n + 1), module.rank * base ** n
    guard.check_matrix(rows, cols, label=f"bar differential d^{n} of {group.name or 'G'}")
    faces, count = _bar_faces(group, n, normalized)
    return _assemble(faces, count, base ** n, module)


def build_bar_complex(G: FiniteGroup, M, n_max: int, normalized: bool = True,
                      guard: Optional[SizeGuard] = None) -> GroupCochainComplex:
    """Bar cochain complex of G in degrees 0..n_max with d^n for n < n_max"""
    if n_max < 1:
        raise ValidationError("n_max must be at least 1")
    guard = guard or default_guard()
    guard.check_group(G.order, label=G.name or "G")
    module = M if isinstance(M, CoefficientModule) else CoefficientModule.trivial(G.order, int(M))
    base = G.order - 1 if normalized else G.order
    ranks = {n: module.rank * base ** n for n in range(n_max + 1)}
    differentials = {n: bar_differential(G, module, n, normalized, guard) for n in range(n_max)}

    m = module.modulus
    for n in range(1, n_max):
        composite = (differentials[n] @ differentials[n - 1]) % m
        if np.any(composite):
            raise CompositionNotZero(f"d^{n}∘d^{n - 1} ≠ 0 in the bar complex of {G.name or 'G'}",
                                     {"degree": n})
    logger.debug(f"Bar complex of {G.name or 'G'} with {module.name}: ranks {ranks}")
    return GroupCochainComplex(G, module, n_max, normalized, ranks, differentials)


def unnormalized_bar_complex(G: FiniteGroup, M, n_max: int,
                             guard: Optional[SizeGuard] = None) -> GroupCochainComplex:
    return build_bar_complex(G, M, n_max, normalized=False, guard=guard)


def pullback_matrix(source: FiniteGroup, target: FiniteGroup, images: Sequence[int], n: int,
                    rank: int = 1, normalized: bool = True) -> np.ndarray:
    """Matrix of f ↦ f∘φ^n from n-cochains on ``target`` to n-cochains on ``source``"""
    images = np.asarray(images, dtype=np.int64)
    if normalized:
        tuples = normalized_tuples(source.order, n)
        mapped = images[tuples]
        keep = np.all(mapped != 0, axis=1)
        cols = normalized_index(mapped[keep], target.order)
        rows_count, cols_count = (source.order - 1) ** n, (target.order - 1) ** n
    else:
        tuples = all_tuples(source.order, n)
        mapped = images[tuples]
        keep = np.ones(tuples.shape[0], dtype=bool)
        cols = full_index(mapped, target.order)
        rows_count, cols_count = source.order ** n, target.order ** n
    P = np.zeros((rows_count, cols_count), dtype=np.int64)
    P[np.nonzero(keep)[0], cols] = 1
    if rank != 1:
        P = np.kron(P, np.eye(rank, dtype=np.int64))
    return P


def evaluate_cochain(values: np.ndarray, order: int, args: np.ndarray) -> np.ndarray:
    """Values of a normalized scalar cochain at rows of ``args`` (zero if any argument is 1)"""
    args = np.atleast_2d(args)
    keep = np.all(args != 0, axis=1)
    out = np.zeros(args.shape[0], dtype=np.int64)
    if np.any(keep):
        out[keep] = values[normalized_index(args[keep], order)]
    return out


def coboundary_values(group: FiniteGroup, values: np.ndarray, n: int, m: int) -> np.ndarray:
    """(df) at every normalized (n+1)-tuple for a scalar n-cochain f with trivial action.

    Evaluated face by face; no differential matrix is built.
    """
    values = np.asarray(values, dtype=np.int64) % m
    order = group.order
    args = normalized_tuples(order, n + 1)
    out = evaluate_cochain(values, order, args[:, 1:])
    for i in range(1, n + 1):
        merged = group.mul[args[:, i - 1], args[:, i]]
        sources = np.concatenate([args[:, :i - 1], merged[:, None], args[:, i + 1:]], axis=1)
        out += (-1 if i % 2 else 1) * evaluate_cochain(values, order, sources)
    out += (-1 if (n + 1) % 2 else 1) * evaluate_cochain(values, order, args[:, :n])
    return out % m


def is_group_cocycle(group: FiniteGroup, values: np.ndarray, n: int, m: int) -> bool:
    return not np.any(coboundary_values(group, values, n, m))


def cochain_from_function(order: int, n: int, function) -> np.ndarray:
    """Tabulate a normalized scalar n-cochain from a Python callable on tuples"""
    tuples = normalized_tuples(order, n)
    return np.array([function(tuple(int(v) for v in row)) for row in tuples], dtype=np.int64)


def tuple_list(order: int, n: int) -> List[tuple]:
    return [tuple(int(v) for v in row) for row in normalized_tuples(order, n)]
