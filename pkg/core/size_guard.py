import logging
from typing import Optional

try:
    from .errors import SizeGuardExceeded
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from core.errors import SizeGuardExceeded

logger = logging.getLogger(__name__)


class SizeGuard:
    """Estimates dense matrix sizes before they are built and refuses the oversized ones"""

    def __init__(self, max_cells: int = 40_000_000, max_group_order: int = 24, force: bool = False):
        self.max_cells = max_cells
        self.max_group_order = max_group_order
        self.force = force
        # Above this fraction of the limit we log, but still build
        self.warning_threshold = 0.5

    @classmethod
    def from_settings(cls, settings, force: bool = False) -> "SizeGuard":
        return cls(max_cells=settings.max_cells, max_group_order=settings.max_group_order, force=force)

    @staticmethod
    def estimate_cells(rows: int, cols: int) -> int:
        return int(rows) * int(cols)

    def check_matrix(self, rows: int, cols: int, label: str = "matrix") -> int:
        cells = self.estimate_cells(rows, cols)
        if cells > self.max_cells and not self.force:
            raise SizeGuardExceeded(
                f"{label} would need {rows}x{cols} = {cells} cells (limit {self.max_cells}); use --force to override",
                {"label": label, "rows": rows, "cols": cols, "limit": self.max_cells},
            )
        if cells > self.warning_threshold * self.max_cells:
            logger.warning(f"Large dense {label}: {rows}x{cols} ({cells} cells)")
        return cells

    def check_group(self, order: int, label: str = "group") -> None:
        if order > self.max_group_order and not self.force:
            raise SizeGuardExceeded(
                f"{label} has order {order} above the limit {self.max_group_order}; use --force to override",
                {"label": label, "order": order, "limit": self.max_group_order},
            )


_default_guard: Optional[SizeGuard] = None


def default_guard() -> SizeGuard:
    """Process-wide guard used when callers do not pass one"""
    global _default_guard
    if _default_guard is None:
        _default_guard = SizeGuard()
    return _default_guard


def set_default_guard(guard: SizeGuard) -> None:
    global _default_guard
    _default_guard = guard
