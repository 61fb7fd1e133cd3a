import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

try:
    from ..core.errors import NoIdentity, NoInverse, NotAssociative, ValidationError
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from core.errors import NoIdentity, NoInverse, NotAssociative, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its full multiplication table; element 0 is the identity"""
    mul: np.ndarray
    inv: np.ndarray
    element_names: Optional[List[str]] = None
    name: str = ""
    identity: int = field(default=0, init=False)

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    def multiply(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def product(self, elements: Sequence[int]) -> int:
        result = 0
        for e in elements:
            result = int(self.mul[result, e])
        return result

    def power(self, a: int, k: int) -> int:
        result = 0
        base = a if k >= 0 else self.inverse(a)
        for _ in range(abs(k)):
            result = int(self.mul[result, base])
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = int(self.mul[x, a])
            k += 1
        return k

    def element_orders(self) -> Dict[int, int]:
        """Number of elements of each order; an isomorphism-invariant fingerprint"""
        return dict(sorted(Counter(self.element_order(a) for a in range(self.order)).items()))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def label(self, a: int) -> str:
        if self.element_names:
            return self.element_names[a]
        return str(a)

    def non_identity(self) -> np.ndarray:
        return np.arange(1, self.order, dtype=np.int64)

    def is_homomorphism(self, target: "FiniteGroup", images: Sequence[int]) -> bool:
        images = np.asarray(images, dtype=np.int64)
        return bool(np.array_equal(images[self.mul], target.mul[images[:, None], images[None, :]]))

    def __repr__(self) -> str:
        label = self.name or "FiniteGroup"
        return f"<{label} of order {self.order}>"


def _as_table(mul_table) -> np.ndarray:
    try:
        table = np.asarray(mul_table, dtype=np.int64)
    except (TypeError, ValueError, OverflowError) as e:
        raise ValidationError(f"multiplication table is not an integer table: {e}")
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise ValidationError(f"multiplication table must be square and nonempty, got shape {table.shape}")
    n = table.shape[0]
    bad = np.argwhere((table < 0) | (table >= n))
    if bad.size:
        row, col = (int(v) for v in bad[0])
        raise ValidationError(
            f"entry ({row}, {col}) = {int(table[row, col])} is not an element index",
            {"row": row, "column": col},
        )
    return table


def validate_group(mul_table, element_names: Optional[Sequence[str]] = None, name: str = "") -> FiniteGroup:
    """Check a multiplication table exhaustively and return the group it defines"""
    table = _as_table(mul_table)
    n = table.shape[0]
    if element_names is not None and len(element_names) != n:
        raise ValidationError(f"{len(element_names)} element names for a group of order {n}")

    # (xy)z against x(yz) over all triples at once
    left = table[table, :]
    right = table[np.arange(n)[:, None, None], table[None, :, :]]
    failures = np.argwhere(left != right)
    if failures.size:
        x, y, z = (int(v) for v in failures[0])
        raise NotAssociative(f"(x·y)·z ≠ x·(y·z) for (x, y, z) = ({x}, {y}, {z})", [x, y, z])

    elements = np.arange(n)
    if not (np.array_equal(table[0], elements) and np.array_equal(table[:, 0], elements)):
        candidates = [e for e in range(n) if np.array_equal(table[e], elements) and np.array_equal(table[:, e], elements)]
        if candidates:
            raise NoIdentity(f"the identity must be element 0, found it at {candidates[0]}", {"identity": candidates[0]})
        raise NoIdentity("no two-sided identity element")

    inv = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        solutions = np.nonzero(table[:, x] == 0)[0]
        if solutions.size == 0 or table[x, solutions[0]] != 0:
            raise NoInverse(f"element {x} has no inverse", {"element": x})
        inv[x] = solutions[0]

    names = list(element_names) if element_names is not None else None
    logger.debug(f"Validated group {name or '(unnamed)'} of order {n}")
    return FiniteGroup(mul=table, inv=inv, element_names=names, name=name)


def subgroup_elements(group: FiniteGroup, generators: Sequence[int]) -> List[int]:
    """Elements of the subgroup generated by ``generators``: identity first, then discovery order"""
    elements = [0]
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop(0)
        for g in generators:
            y = group.multiply(x, int(g))
            if y not in seen:
                seen.add(y)
                elements.append(y)
                frontier.append(y)
    return elements


def is_subgroup(group: FiniteGroup, elements: Sequence[int]) -> bool:
    members = set(int(e) for e in elements)
    if 0 not in members or any(not 0 <= e < group.order for e in members):
        return False
    return all(group.multiply(a, b) in members for a in members for b in members)


def induced_subgroup(group: FiniteGroup, elements: Sequence[int], name: str = "") -> FiniteGroup:
    """The subgroup on ``elements`` re-indexed in the given order (identity must come first)"""
    elements = [int(e) for e in elements]
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[group.multiply(a, b)] for b in elements] for a in elements]
    names = [group.label(e) for e in elements] if group.element_names else None
    return validate_group(table, names, name=name)
